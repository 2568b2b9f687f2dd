#include "sk/twisted.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sk {

namespace {

Polynomial signed_poly(const Polynomial& p, int parity) { return parity % 2 ? -p : p; }

Polynomial one(const RingPtr& r) { return Polynomial::constant(r, Scalar(1)); }

void add_nf(Element& acc, int g, const Polynomial& p, const CoefficientRing& R) {
  Polynomial q = R.normal_form(p);
  if (!q.is_zero()) add_term(acc, g, q);
}

// All distinct words with letter multiplicities alpha.
void shuffle_words(std::vector<int> alpha, const std::vector<int>& letters, Word& cur, std::vector<Word>& out) {
  bool done = true;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    done = false;
    --alpha[i];
    cur.push_back(letters[i]);
    shuffle_words(alpha, letters, cur, out);
    cur.pop_back();
    ++alpha[i];
  }
  if (done && !cur.empty()) out.push_back(cur);
}

std::vector<Word> words_of(const std::vector<int>& alpha, const std::vector<int>& letters) {
  std::vector<Word> out;
  Word cur;
  shuffle_words(alpha, letters, cur, out);
  return out;
}

// alpha in N^c with |alpha| <= bound, graded lexicographic.
std::vector<std::vector<int>> multi_indices(int c, int bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(c, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == c) {
      out.push_back(a);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      a[i] = k;
      rec(i + 1, left - k);
    }
    a[i] = 0;
  };
  rec(0, bound);
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    int sx = 0, sy = 0;
    for (int v : x) sx += v;
    for (int v : y) sy += v;
    return sx < sy;
  });
  return out;
}

int weight(const std::vector<int>& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

// Word-level module part: sum over nonempty suffixes of prefix (x) m^G(suffix, g); j = 1 is d_G.
std::map<int, WordVec> module_part(const AinfModuleStructure& G, const Word& w, const Polynomial& coef, int g) {
  const ChainComplex& A = G.alg->A;
  std::map<int, WordVec> out;
  size_t n = w.size();
  std::vector<int> prefix(n + 1, 0);
  for (size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + A.gen(w[i]).hdeg + 1;
  for (size_t k = 0; k <= n; ++k) {
    Tuple suffix(w.end() - static_cast<long>(k), w.end());
    Element m = G.m(suffix, g);
    if (m.empty()) continue;
    int inner = 0;
    for (size_t l = 0; l < k; ++l) inner += static_cast<int>(k - 1 - l) * (A.gen(suffix[l]).hdeg + 1);
    int parity = static_cast<int>(k * (k - 1) / 2) + prefix[n - k] + inner;
    Word head(w.begin(), w.end() - static_cast<long>(k));
    for (auto& [h, p] : m) {
      auto& acc = out[h][head];
      acc = acc.ring() ? acc + signed_poly(coef * p, parity) : signed_poly(coef * p, parity);
    }
  }
  return out;
}

}  // namespace

TwistedComplex twisted_tensor_product(const RingSpec& spec, const CurvedCoalgebra& C, const AinfModuleStructure& G,
                                      int hdeg_bound) {
  TwistedComplex t;
  CoeffPtr R = quotient_ring(spec);
  t.complex = ChainComplex(R);
  const ChainComplex& Gc = G.G;
  std::vector<std::tuple<int, int, int, int>> order;  // (hdeg, ideg, b, g)
  for (size_t b = 0; b < C.basis.size(); ++b)
    for (size_t g = 0; g < Gc.size(); ++g) {
      int h = C.basis[b].hdeg + Gc.gen(g).hdeg;
      if (h > hdeg_bound) continue;
      order.emplace_back(h, C.basis[b].ideg + Gc.gen(g).ideg, static_cast<int>(b), static_cast<int>(g));
    }
  std::sort(order.begin(), order.end());
  for (auto& [h, j, b, g] : order) {
    int k = t.complex.add_generator({C.label(b) + "*" + Gc.gen(g).label, h, j, {}});
    t.index.emplace_back(b, g);
    t.lookup[{b, g}] = k;
  }
  t.complex.bounds.hdeg = hdeg_bound;
  t.complex.bounds.truncated = true;

  const ChainComplex& A = G.alg->A;
  for (size_t k = 0; k < t.index.size(); ++k) {
    auto [b, g] = t.index[k];
    Element d;
    for (auto& [b2, p] : C.coderivation[b]) add_nf(d, t.lookup.at({b2, g}), p, *R);

    std::map<int, WordVec> mod;
    WordVec twist;
    for (auto& [w, c] : C.basis[b].terms) {
      Polynomial coef = Polynomial::constant(A.ring(), c);
      for (auto& [h, wv] : module_part(G, w, coef, g))
        for (auto& [head, p] : wv) {
          auto& acc = mod[h][head];
          acc = acc.ring() ? acc + p : p;
        }
      if (!w.empty()) {
        Polynomial hv = bar_curvature(*G.alg, Word{w[0]});
        if (!hv.is_zero()) twist[Word(w.begin() + 1, w.end())] = coef * hv;
      }
    }
    for (auto& [h, wv] : mod) {
      for (auto it = wv.begin(); it != wv.end();) it = it->second.is_zero() ? wv.erase(it) : std::next(it);
      for (auto& [b2, p] : C.coordinates(wv)) add_nf(d, t.lookup.at({b2, h}), p, *R);
    }
    for (auto& [w, p] : twist)
      if (!R->normal_form(p).is_zero()) t.left_twist_vanished = false;
    t.complex.set_differential(static_cast<int>(k), d);
  }
  return t;
}

PriddyResult priddy_resolution(const RingSpec& spec, const RingSpec* module, int hdeg_bound) {
  const RingPtr& r = spec.ring;
  int n = static_cast<int>(r->nvars());
  PriddyResult out;
  std::ostringstream rep;

  ChainComplex A = minimal_free_resolution(spec, n, spec.default_ideg_bound(n));
  AinfStructure s = transfer_ainf_algebra(A, A.max_hdeg() + 2, -1);
  auto det = detect_presentation(s, PresentationClass::Auto, &spec, hdeg_bound);
  if (!det.presentation) throw UnsupportedInput("priddy: no strict quadratic presentation found\n" + det.report);
  out.presentation = *det.presentation;
  rep << "presentation: " << out.presentation.recipe << "\n";

  RingSpec mspec;
  if (module) {
    mspec = *module;
    CoeffPtr MJ = quotient_ring(mspec);
    for (auto& f : spec.gens)
      if (!MJ->normal_form(f).is_zero()) throw std::invalid_argument("priddy: module ideal does not contain I");
  } else {
    std::vector<Polynomial> vars;
    for (int i = 0; i < n; ++i) vars.push_back(Polynomial::variable(r, i));
    mspec = RingSpec::make(r, vars, true);
  }
  ChainComplex G = minimal_free_resolution(mspec, n, mspec.default_ideg_bound(n));
  AinfModuleStructure ms = transfer_ainf_module(s, G, G.max_hdeg() + 2);

  out.coalgebra = priddy_coalgebra(s, out.presentation, hdeg_bound);
  out.twisted = twisted_tensor_product(spec, out.coalgebra, ms, hdeg_bound);
  const ChainComplex& T = out.twisted.complex;
  auto v = verify_complex(T);
  out.minimal = v.minimal;
  rep << "d^2: " << (v.ok ? "ok" : v.violation) << "\nminimal: " << (v.minimal ? "yes" : "no") << "\n";
  rep << "left twist vanishes: " << (out.twisted.left_twist_vanished ? "yes" : "no") << "\n";

  int D = 0;
  for (auto& g : T.gens()) D = std::max(D, g.ideg);
  D += spec.max_generator_degree();
  auto H = homology_ranks(T, D);
  bool acyclic = v.ok;
  for (auto& [ij, rk] : H.rank)
    if (ij.first >= 1 && ij.first < hdeg_bound && rk != 0) acyclic = false;
  CoeffPtr M = quotient_ring(mspec);
  for (int j = 0; j <= D; ++j)
    if (H.at(0, j) != static_cast<int>(M->basis(j).size())) acyclic = false;
  out.acyclic = acyclic;
  rep << "acyclic through degree " << hdeg_bound - 1 << ": " << (acyclic ? "yes" : "no") << "\n";
  out.report = rep.str();
  return out;
}

HigherHomotopySystem higher_homotopies(const AinfModuleStructure& m, int bound) {
  const AinfStructure& s = *m.alg;
  const ChainComplex& A = s.A;
  HigherHomotopySystem h;
  h.G = m.G;
  h.bound = bound;
  if (A.max_hdeg() >= 1) h.letters = A.in_degree(1);
  for (int e : h.letters) {
    auto it = A.d(e).find(s.unit);
    if (it == A.d(e).end() || A.d(e).size() != 1)
      throw std::invalid_argument("higher homotopies: degree-one generators must map onto the unit");
    h.f.push_back(it->second);
  }
  const RingPtr& r = A.ring();
  int c = static_cast<int>(h.letters.size());
  for (auto& alpha : multi_indices(c, bound)) {
    int n = weight(alpha);
    std::vector<Element> col(h.G.size());
    for (size_t g = 0; g < h.G.size(); ++g) {
      if (n == 0) {
        col[g] = h.G.d(static_cast<int>(g));
        continue;
      }
      Element acc;
      for (auto& w : words_of(alpha, h.letters)) add_scaled(acc, m.m(w, static_cast<int>(g)), one(r));
      col[g] = scaled(acc, signed_poly(one(r), n * (n - 1) / 2));
    }
    h.sigma.emplace(alpha, std::move(col));
  }
  return h;
}

namespace {

Element apply_sigma(const HigherHomotopySystem& h, const std::vector<int>& alpha, const Element& x) {
  Element out;
  const auto& col = h.at(alpha);
  for (auto& [g, p] : x) add_scaled(out, col[g], p);
  return out;
}

}  // namespace

HomotopyReport verify_higher_homotopies(const HigherHomotopySystem& h) {
  HomotopyReport rep;
  int c = static_cast<int>(h.f.size());
  auto all = multi_indices(c, h.bound);
  for (auto& alpha : all) {
    int n = weight(alpha);
    if (n == 0) continue;
    for (size_t g = 0; g < h.G.size(); ++g) {
      ++rep.checked;
      Element lhs;
      for (auto& beta : all) {
        bool le = true;
        for (int i = 0; i < c; ++i) le = le && beta[i] <= alpha[i];
        if (!le) continue;
        std::vector<int> gamma(c);
        for (int i = 0; i < c; ++i) gamma[i] = alpha[i] - beta[i];
        Element inner = h.at(gamma)[g];
        add_scaled(lhs, apply_sigma(h, beta, inner), one(h.G.ring()));
      }
      if (n == 1) {
        int i = static_cast<int>(std::find(alpha.begin(), alpha.end(), 1) - alpha.begin());
        add_term(lhs, static_cast<int>(g), -h.f[i]);
      }
      std::string what;
      if (!element_is_zero(lhs)) what = "sum of sigma compositions is " + h.G.element_str(lhs);
      for (auto& [t, p] : h.at(alpha)[g])
        if (what.empty() && h.G.gen(t).hdeg == 0 && !p.is_zero()) what = "sigma lands in degree zero";
      if (!what.empty()) {
        rep.ok = false;
        std::ostringstream os;
        os << "alpha = (";
        for (int i = 0; i < c; ++i) os << (i ? "," : "") << alpha[i];
        os << ") on " << h.G.gen(static_cast<int>(g)).label << ": " << what;
        rep.violation = os.str();
        return rep;
      }
    }
  }
  return rep;
}

ShamashComplex shamash_complex(const HigherHomotopySystem& h, const RingSpec& spec, int hdeg_bound) {
  ShamashComplex sh;
  CoeffPtr R = quotient_ring(spec);
  sh.complex = ChainComplex(R);
  int c = static_cast<int>(h.f.size());
  std::vector<std::tuple<int, int, std::vector<int>, int>> order;
  for (auto& alpha : multi_indices(c, hdeg_bound / 2))
    for (size_t g = 0; g < h.G.size(); ++g) {
      int hd = 2 * weight(alpha) + h.G.gen(static_cast<int>(g)).hdeg;
      if (hd > hdeg_bound) continue;
      int j = h.G.gen(static_cast<int>(g)).ideg;
      for (int i = 0; i < c; ++i) j += alpha[i] * h.f[i].degree();
      order.emplace_back(hd, j, alpha, static_cast<int>(g));
    }
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return std::make_pair(std::get<0>(x), std::get<1>(x)) < std::make_pair(std::get<0>(y), std::get<1>(y));
  });
  std::map<std::pair<std::vector<int>, int>, int> lookup;
  for (auto& [hd, j, alpha, g] : order) {
    std::ostringstream label;
    label << "y(";
    for (int i = 0; i < c; ++i) label << (i ? "," : "") << alpha[i];
    label << ")*" << h.G.gen(g).label;
    lookup[{alpha, g}] = sh.complex.add_generator({label.str(), hd, j, {}});
    sh.index.emplace_back(alpha, g);
  }
  sh.complex.bounds.hdeg = hdeg_bound;
  sh.complex.bounds.truncated = true;
  for (size_t k = 0; k < sh.index.size(); ++k) {
    auto& [alpha, g] = sh.index[k];
    Element d;
    for (auto& [beta, col] : h.sigma) {
      bool le = true;
      for (int i = 0; i < c; ++i) le = le && beta[i] <= alpha[i];
      if (!le) continue;
      std::vector<int> rest(c);
      for (int i = 0; i < c; ++i) rest[i] = alpha[i] - beta[i];
      for (auto& [t, p] : col[g]) add_nf(d, lookup.at({rest, t}), p, *R);
    }
    sh.complex.set_differential(static_cast<int>(k), d);
  }
  return sh;
}

ComparisonReport compare_with_priddy(const ShamashComplex& sh, const HigherHomotopySystem& h,
                                     const TwistedComplex& tw, const CurvedCoalgebra& C) {
  ComparisonReport rep;
  const RingPtr& r = C.alg->A.ring();
  std::vector<int> image(sh.index.size(), -1);
  for (size_t k = 0; k < sh.index.size(); ++k) {
    auto& [alpha, g] = sh.index[k];
    int b = 0;
    if (weight(alpha) > 0) {
      WordVec y;
      for (auto& w : words_of(alpha, h.letters)) y[w] = one(r);
      auto coords = C.coordinates(y);
      if (coords.size() != 1 || coords.begin()->second != one(r)) {
        rep.ok = false;
        rep.mismatch = "y" + sh.complex.gen(static_cast<int>(k)).label.substr(1) + " is not a coalgebra basis vector";
        return rep;
      }
      b = coords.begin()->first;
    }
    auto it = tw.lookup.find({b, g});
    if (it == tw.lookup.end()) {
      rep.ok = false;
      rep.mismatch = sh.complex.gen(static_cast<int>(k)).label + " has no partner";
      return rep;
    }
    image[k] = it->second;
  }
  if (sh.complex.ranks() != tw.complex.ranks()) {
    rep.ok = false;
    rep.mismatch = "ranks differ";
    return rep;
  }
  const CoefficientRing& R = *tw.complex.coeffs();
  for (size_t k = 0; k < sh.index.size(); ++k) {
    Element mapped;
    for (auto& [t, p] : sh.complex.d(static_cast<int>(k))) add_nf(mapped, image[t], p, R);
    Element diff = mapped;
    for (auto& [t, p] : tw.complex.d(image[k])) add_nf(diff, t, -p, R);
    diff = element_normal_form(diff, R);
    rep.entries += static_cast<long>(mapped.size());
    if (!element_is_zero(diff)) {
      rep.ok = false;
      rep.mismatch = "differentials differ on " + sh.complex.gen(static_cast<int>(k)).label + ": " +
                     tw.complex.element_str(diff);
      return rep;
    }
  }
  return rep;
}

ShamashPipeline shamash_pipeline(const RingSpec& spec, int hdeg_bound, int homotopy_bound) {
  const RingPtr& r = spec.ring;
  auto k = koszul_complex(r, spec.gens);
  int c = static_cast<int>(spec.gens.size());
  for (auto& [ij, rank] : homology_ranks(k.complex, spec.default_ideg_bound(c)).rank)
    if (ij.first > 0 && rank > 0)
      throw UnsupportedInput("shamash: generators are not a regular sequence (H_" + std::to_string(ij.first) +
                             " of the Koszul complex is nonzero in degree " + std::to_string(ij.second) + ")");
  ShamashPipeline p;
  p.algebra = transfer_ainf_algebra(k.complex, c + 2, -1, &k.product);
  std::vector<Polynomial> vars;
  for (size_t i = 0; i < r->nvars(); ++i) vars.push_back(Polynomial::variable(r, i));
  auto G = koszul_complex(r, vars).complex;
  p.module = transfer_ainf_module(p.algebra, G, G.max_hdeg() + 2);
  auto det = detect_presentation(p.algebra, PresentationClass::CI, &spec, hdeg_bound);
  if (!det.presentation) throw UnsupportedInput("shamash: no complete intersection presentation\n" + det.report);
  p.coalgebra = priddy_coalgebra(p.algebra, *det.presentation, hdeg_bound);
  p.twisted = twisted_tensor_product(spec, p.coalgebra, p.module, hdeg_bound);
  p.homotopies = higher_homotopies(p.module, homotopy_bound);
  p.identities = verify_higher_homotopies(p.homotopies);
  p.shamash = shamash_complex(p.homotopies, spec, hdeg_bound);
  p.comparison = compare_with_priddy(p.shamash, p.homotopies, p.twisted, p.coalgebra);
  return p;
}

std::string dump_twisted(const TwistedComplex& t, bool betti_only) {
  if (!betti_only) return dump_resolution(t.complex);
  std::ostringstream os;
  os << "totals:";
  for (int v : t.complex.ranks()) os << " " << v;
  os << "\n" << BettiTable::of(t.complex).csv();
  return os.str();
}

}  // namespace sk
