#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "sk/classify.hpp"
#include "test_util.hpp"

using namespace sk;
using namespace sk::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

const std::vector<std::string> kSixteen = {
    "x2x4x5", "x1x3x6", "x2x5x6", "x3x5x6", "x1x3x7", "x1x4x7", "x2x4x7", "x2x6x7",
    "x3x6x7", "x4x6x7", "x1x3x8", "x1x4x8", "x2x4x8", "x1x5x8", "x2x5x8", "x3x5x8"};
const std::vector<std::string> kTE = {"a^2", "b*c", "a*c+b^2"};
const std::vector<std::string> kDominant = {"a*b*c", "c*d", "a*e", "a*c*f"};

template <class T>
std::string csv(const std::vector<T>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::vector<long> longs(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// Coefficients of (1+t)^e / (1-t^2)^c through t^N.
std::vector<long> ci_series(int e, int c, int N) {
  std::vector<long> s(N + 1, 0);
  for (int k = 0; k <= e && k <= N; ++k) {
    long b = 1;
    for (int j = 0; j < k; ++j) b = b * (e - j) / (j + 1);
    s[k] = b;
  }
  for (int step = 0; step < c; ++step)
    for (int i = 2; i <= N; ++i) s[i] += s[i - 2];
  return s;
}

std::vector<int> ground_truth(const RingSpec& spec, int N) {
  auto c = resolve_over_quotient(spec, N, spec.default_ideg_bound(N));
  auto r = c.ranks();
  r.resize(N + 1, 0);
  return r;
}

RingPtr ring_of(const std::vector<std::string>& vars, Field f = {}) { return make_ring(vars, f); }

Outcome criterion1() {
  Outcome o;
  std::vector<std::string> vars;
  for (int i = 1; i <= 8; ++i) vars.push_back("x" + std::to_string(i));
  auto spec = spec_of(make_ring(vars, Field{0}), kSixteen);
  auto c = minimal_free_resolution(spec, 8, spec.default_ideg_bound(8));
  auto totals = BettiTable::of(c).totals();
  o.require(totals == std::vector<int>{1, 16, 30, 16, 1}, "totals " + csv(totals));
  auto v = verify_complex(c);
  o.require(v.ok && v.minimal, "resolution is not a minimal complex");
  o.detail = o.pass ? "totals " + csv(totals) : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto r = ring_xyz(Field{0});
  auto spec = spec_of(r, kBurke);
  auto A = minimal_free_resolution(spec, 3, spec.default_ideg_bound(3));
  o.require(A.ranks() == std::vector<int>{1, 5, 5, 1}, "Q-resolution " + csv(A.ranks()));
  auto s = transfer_ainf_algebra(A, 5, -1);
  auto fc = formality_certificate(s);
  o.require(fc.certified, "formality not certified");
  auto cls = classify_codepth3(fc.tor);
  o.require(cls.kind == TorKind::G && cls.r == 5, "class " + cls.name());

  auto cyc = cyclic_transfer(A, 5, -1);
  auto st = verify_stasheff(cyc.structure, 5);
  o.require(st.ok, "cyclic structure fails Stasheff: " + st.violation);
  auto cy = verify_cyclic(cyc.structure, cyc.pairing, 5);
  o.require(cy.ok, "cyclic symmetry fails: " + cy.violation);

  auto pr = priddy_resolution(spec, nullptr, 5);
  auto series = pr.coalgebra.series();
  series.resize(6, 0);
  o.require(series == std::vector<long>{1, 0, 5, 5, 25, 49}, "coalgebra series " + csv(series));
  o.require(pr.minimal && pr.acyclic, "Priddy resolution: " + pr.report);
  auto totals = pr.totals();
  totals.resize(5);
  o.require(totals == std::vector<int>{1, 3, 8, 21, 55}, "Priddy totals " + csv(totals));
  auto truth = ground_truth(spec, 4);
  o.require(totals == truth, "ground truth " + csv(truth));

  auto bundle = poincare_formulas(spec, 6);
  auto* go = bundle.find("gorenstein");
  o.require(go && go->verdict == Compare::Equal, "Gorenstein bound is not an equality");
  RatSeries quad{1, -3, 1}, cube{1, 3, 3, 1};
  auto prod = series_mul(quad, cube, 5);
  RatSeries den(bundle.denominator.begin(), bundle.denominator.end());
  RatSeries expect{1, 0, -5, -5, 0, 1};
  o.require(prod == expect && den == expect, "denominator " + csv(bundle.denominator));
  if (o.pass)
    o.detail = "ranks 1,5,5,1; G(5); formal; cyclic to arity 5; C series 1,0,5,5,25,49; totals 1,3,8,21,55";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto r = ring_xyz(Field{0});
  std::vector<std::vector<std::string>> cases{{"x^2", "y^2"}, {"x^2", "y^2", "z^2"}};
  std::ostringstream det;
  for (auto& gens : cases) {
    auto spec = spec_of(r, gens, true);
    int c = static_cast<int>(gens.size());
    auto pr = priddy_resolution(spec, nullptr, 6);
    o.require(pr.minimal && pr.acyclic, "Priddy resolution of k: " + pr.report);
    auto totals = longs(pr.totals());
    totals.resize(7, 0);
    o.require(totals == ci_series(3, c, 6), "totals " + csv(totals));
    o.require(pr.totals() == ground_truth(spec, 6), "ground truth mismatch");
    auto p = shamash_pipeline(spec, 6, 3);
    o.require(p.identities.ok, "higher homotopies: " + p.identities.violation);
    o.require(p.comparison.ok, "Shamash comparison: " + p.comparison.mismatch);
    det << c << " relations: totals " << csv(totals) << ", " << p.comparison.entries << " entries compared; ";
  }
  if (o.pass) o.detail = det.str();
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto r = ring_of({"x", "y"}, Field{0});
  auto spec = spec_of(r, {"x^2", "x*y"});
  auto g = golod_test(spec, 8);
  o.require(g.golod && g.through == 8, "golod test: " + g.str());
  auto pr = priddy_resolution(spec, nullptr, 5);
  o.require(pr.presentation.recipe == "Golod", "presentation " + pr.presentation.recipe);
  o.require(pr.minimal && pr.acyclic, "Priddy resolution: " + pr.report);
  auto totals = longs(pr.totals());
  totals.resize(6, 0);
  o.require(totals == std::vector<long>{1, 2, 3, 5, 8, 13}, "totals " + csv(totals));
  auto serre = serre_bound(minimal_free_resolution(spec, 2, spec.default_ideg_bound(2)), 5);
  o.require(totals == serre, "Serre series " + csv(serre));
  if (o.pass) o.detail = g.str() + "; totals " + csv(totals);
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto xyz = ring_xyz(Field{0});
  auto abc = ring_of({"a", "b", "c"});
  struct Case {
    RingSpec spec;
    TorKind kind;
    int r;
    CKVerdict ck;
  };
  std::vector<Case> cases{{spec_of(xyz, {"x^2", "y^2", "z^2"}, true), TorKind::CI, 0, CKVerdict::Certified},
                          {spec_of(abc, kTE), TorKind::TE, 0, CKVerdict::Refuted},
                          {spec_of(xyz, kBurke), TorKind::G, 5, CKVerdict::Certified}};
  int changes = 0;
  for (auto& c : cases) {
    auto T = koszul_homology_algebra(c.spec);
    auto cls = classify_codepth3(T);
    o.require(cls.kind == c.kind && cls.r == c.r, "class " + cls.name());
    for (uint64_t seed = 1; seed <= 20; ++seed, ++changes) {
      auto moved = classify_codepth3(change_basis(T, seed));
      o.require(moved == cls, "class changed to " + moved.name() + " under basis change " + std::to_string(seed));
    }
    auto rep = cohen_koszul_report(c.spec, 6);
    o.require(rep.verdict == c.ck, cls.name() + ": cohen_koszul " + ck_name(rep.verdict));
  }
  auto af = ring_of({"a", "b", "c", "d", "e", "f"});
  auto dom = spec_of(af, kDominant);
  auto ms = dom.monomial_generators();
  o.require(dominant_test(af, ms).dominant, "dominant ideal not dominant");
  auto taylor = verify_complex(taylor_resolution(af, ms).algebra.complex);
  o.require(taylor.ok && taylor.minimal, "Taylor complex not minimal");
  auto rep = cohen_koszul_report(dom, 6);
  o.require(rep.verdict == CKVerdict::Certified, std::string("dominant: cohen_koszul ") + ck_name(rep.verdict));
  if (o.pass)
    o.detail = "CI, TE (refuted), G(5) (certified), dominant (Taylor minimal, certified); " + std::to_string(changes) +
               " basis changes stable";
  return o;
}

// One random input: monomial ideal or a regular sequence, at most 3 variables, degrees 2..3.
RingSpec random_input(std::mt19937& rng, int trial) {
  std::uniform_int_distribution<int> nv(1, 3), dg(2, 3);
  int n = nv(rng);
  std::vector<std::string> names{"x", "y", "z"};
  names.resize(n);
  auto r = make_ring(names);
  if (trial % 2 == 0) {
    std::uniform_int_distribution<int> cnt(1, 4);
    int want = cnt(rng);
    std::vector<Monomial> ms;
    for (int tries = 0; static_cast<int>(ms.size()) < want && tries < 200; ++tries) {
      auto cands = monomials_of_degree(*r, dg(rng));
      Monomial m = cands[std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng)];
      bool ok = true;
      for (auto& o : ms) ok = ok && !o.divides(m) && !m.divides(o);
      if (ok) ms.push_back(m);
    }
    std::vector<Polynomial> gens;
    for (auto& m : ms) gens.push_back(Polynomial::term(r, m));
    return RingSpec::make(r, gens);
  }
  std::uniform_int_distribution<int> cc(1, n);
  int c = cc(rng);
  for (;;) {
    std::vector<Polynomial> gens;
    for (int i = 0; i < c; ++i) {
      Polynomial p = random_homogeneous(r, dg(rng), rng, 4);
      if (p.is_zero()) p = Polynomial::term(r, Monomial::variable(*r, i, 2));
      gens.push_back(p);
    }
    auto k = koszul_complex(r, gens);
    bool regular = true;
    for (auto& [ij, rank] : homology_ranks(k.complex, 4 * c).rank) regular = regular && (ij.first == 0 || rank == 0);
    // Regular and minimally generated.
    if (regular && minimal_free_resolution(RingSpec::make(r, gens), n, 4 * n).rank(1) == c)
      return RingSpec::make(r, gens, true);
  }
}

std::string properties(const RingSpec& spec, int N, bool& priddy_route, long& size) {
  int n = static_cast<int>(spec.ring->nvars());
  auto A = minimal_free_resolution(spec, n, spec.default_ideg_bound(n));
  if (!verify_complex(A).ok) return "Q-resolution fails d^2 = 0";
  auto s = transfer_ainf_algebra(A, A.max_hdeg() + 2, -1);
  if (auto st = verify_stasheff(s); !st.ok) return "Stasheff: " + st.violation;
  std::vector<Polynomial> vars;
  for (int i = 0; i < n; ++i) vars.push_back(Polynomial::variable(spec.ring, i));
  auto G = koszul_complex(spec.ring, vars).complex;
  auto mod = transfer_ainf_module(s, G, G.max_hdeg() + 2);
  if (auto st = verify_stasheff(mod); !st.ok) return "module Stasheff: " + st.violation;

  auto det = detect_presentation(s, PresentationClass::Auto, &spec, N);
  priddy_route = det.presentation.has_value();
  CurvedCoalgebra C = priddy_route ? priddy_coalgebra(s, *det.presentation, N) : bar_construction(s, N);
  if (auto cr = verify_curved_coalgebra(C); !cr.ok) return "curved coalgebra: " + cr.violation;
  if (priddy_route && !coalgebra_is_minimal(C)) return "Priddy coalgebra not minimal";
  auto tw = twisted_tensor_product(spec, C, mod, N);
  size += static_cast<long>(tw.complex.size());
  if (!verify_complex(tw.complex).ok) return "twisted complex fails d^2 = 0";
  int D = 0;
  for (auto& g : tw.complex.gens()) D = std::max(D, g.ideg);
  D += spec.max_generator_degree();
  for (auto& [ij, rank] : homology_ranks(tw.complex, D).rank) {
    if (ij.first >= 1 && ij.first < N && rank > 0)
      return "H_" + std::to_string(ij.first) + " nonzero in degree " + std::to_string(ij.second);
    if (ij.first == 0 && (ij.second != 0 || rank != 1)) return "H_0 is not k";
  }
  return {};
}

Outcome criterion6() {
  Outcome o;
  std::mt19937 rng(20261017);
  int priddy = 0, bar = 0, monomial = 0, ci = 0;
  long size = 0;
  const int kTrials = 60;
  for (int trial = 0; trial < kTrials; ++trial) {
    auto spec = random_input(rng, trial);
    (spec.regular_sequence ? ci : monomial)++;
    bool route = false;
    std::string why;
    try {
      why = properties(spec, 5, route, size);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    std::string label;
    for (auto& g : spec.gens) label += g.str() + " ";
    o.require(why.empty(), "input " + label + ": " + why);
    (route ? priddy : bar)++;
  }
  if (o.pass)
    o.detail = std::to_string(kTrials) + " inputs (" + std::to_string(monomial) + " monomial, " + std::to_string(ci) +
               " CI; " + std::to_string(priddy) + " Priddy, " + std::to_string(bar) + " bar; " +
               std::to_string(size) + " twisted generators)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto xyz = ring_xyz(Field{0});
  auto xy = ring_of({"x", "y"}, Field{0});
  std::vector<std::pair<std::string, RingSpec>> cases{{"CI", spec_of(xy, {"x^2", "y^2"}, true)},
                                                       {"Golod", spec_of(xy, {"x^2", "x*y"})},
                                                       {"Burke", spec_of(xyz, kBurke)}};
  for (auto& [name, spec] : cases) {
    auto b = poincare_formulas(spec, 6);
    for (const char* item : {"inert", "cohen_koszul"}) {
      auto* it = b.find(item);
      o.require(it && it->verdict == Compare::Equal,
                name + ": " + item + " " + (it ? compare_name(it->verdict) : "missing"));
    }
  }
  if (o.pass) o.detail = "inert and Cohen Koszul series equal ground truth through hdeg 6 for CI, Golod, Burke";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"betti reproduction (16 generators)", criterion1},
      {"Burke Gorenstein ring", criterion2},
      {"complete intersections", criterion3},
      {"Golod (x^2, xy)", criterion4},
      {"classification", criterion5},
      {"property suites", criterion6},
      {"series cross-identities", criterion7}};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s: %s (%.1fs) %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
