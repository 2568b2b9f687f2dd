#include "doctest.h"
#include "sk/twisted.hpp"
#include "test_util.hpp"

using namespace sk;
using namespace sk::testing;

namespace {

// Coefficients of num/den through t^n.
std::vector<long> series_of(const std::vector<long>& num, const std::vector<long>& den, int n) {
  std::vector<long> q(n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    long v = k < static_cast<int>(num.size()) ? num[k] : 0;
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) v -= den[j] * q[k - j];
    q[k] = v;
  }
  return q;
}

std::vector<long> longs(const std::vector<int>& v) { return {v.begin(), v.end()}; }

std::vector<int> ground_truth(const RingSpec& spec, int N) {
  int n = static_cast<int>(spec.ring->nvars());
  (void)n;
  return resolve_over_quotient(spec, N, spec.default_ideg_bound(N)).ranks();
}

// CI pipeline over the Koszul complex with its exterior product as m_2.
struct CiPipeline {
  AinfStructure s;
  AinfModuleStructure mod;
  CurvedCoalgebra C;
  TwistedComplex tw;
  HigherHomotopySystem h;
  ShamashComplex sh;
};

CiPipeline ci_pipeline(const RingSpec& spec, int N, int bound) {
  const RingPtr& r = spec.ring;
  CiPipeline p;
  auto k = koszul_complex(r, spec.gens);
  p.s = transfer_ainf_algebra(k.complex, static_cast<int>(spec.gens.size()) + 2, -1, &k.product);
  std::vector<Polynomial> vars;
  for (size_t i = 0; i < r->nvars(); ++i) vars.push_back(Polynomial::variable(r, i));
  auto G = koszul_complex(r, vars).complex;
  p.mod = transfer_ainf_module(p.s, G, G.max_hdeg() + 2);
  auto d = detect_presentation(p.s, PresentationClass::CI, &spec, N);
  REQUIRE(d.presentation);
  p.C = priddy_coalgebra(p.s, *d.presentation, N);
  p.tw = twisted_tensor_product(spec, p.C, p.mod, N);
  p.h = higher_homotopies(p.mod, bound);
  p.sh = shamash_complex(p.h, spec, N);
  return p;
}

}  // namespace

TEST_CASE("hypersurface k[x]/(x^2): periodic resolution and homotopy sigma = x") {
  auto r = make_ring({"x"}, Field{0});
  auto spec = spec_of(r, {"x^2"}, true);
  auto p = ci_pipeline(spec, 6, 3);
  CHECK(p.tw.complex.ranks() == std::vector<int>{1, 1, 1, 1, 1, 1, 1});
  CHECK(verify_complex(p.tw.complex).ok);
  CHECK(verify_complex(p.tw.complex).minimal);
  CHECK(p.tw.left_twist_vanished);
  for (int i = 1; i <= 6; ++i) {
    int g = p.tw.complex.in_degree(i)[0];
    const Element& d = p.tw.complex.d(g);
    REQUIRE(d.size() == 1);
    CHECK((d.begin()->second == P(r, "x") || d.begin()->second == P(r, "-x")));
  }
  // sigma^{(1)}(1) = x e and sigma^{(1)}(e) = 0.
  const auto& G = p.h.G;
  int one = G.in_degree(0)[0], e = G.in_degree(1)[0];
  CHECK(p.h.at({1})[one] == Element{{e, P(r, "x")}});
  CHECK(p.h.at({1})[e].empty());
  CHECK(p.h.at({0})[e] == G.d(e));
  auto rep = verify_higher_homotopies(p.h);
  CHECK_MESSAGE(rep.ok, rep.violation);
  CHECK(p.sh.complex.ranks() == p.tw.complex.ranks());
  auto cmp = compare_with_priddy(p.sh, p.h, p.tw, p.C);
  CHECK_MESSAGE(cmp.ok, cmp.mismatch);
}

TEST_CASE("complete intersection (x^2, y^2): priddy, shamash and homotopies") {
  auto r = make_ring({"x", "y"}, Field{0});
  auto spec = spec_of(r, {"x^2", "y^2"}, true);
  auto pr = priddy_resolution(spec, nullptr, 6);
  CHECK(pr.presentation.recipe == "CI");
  CHECK(pr.minimal);
  CHECK_MESSAGE(pr.acyclic, pr.report);
  CHECK(pr.totals() == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
  CHECK(longs(pr.totals()) == series_of({1, 2, 1}, {1, 0, -2, 0, 1}, 6));
  CHECK(pr.totals() == ground_truth(spec, 6));

  auto p = ci_pipeline(spec, 5, 3);
  // rank_i = sum_j (j+1) g_{i-2j}, g = (1,2,1).
  std::vector<int> g{1, 2, 1}, expect;
  for (int i = 0; i <= 5; ++i) {
    int v = 0;
    for (int j = 0; 2 * j <= i; ++j)
      if (i - 2 * j < 3) v += (j + 1) * g[i - 2 * j];
    expect.push_back(v);
  }
  CHECK(p.sh.complex.ranks() == expect);
  CHECK(verify_complex(p.sh.complex).ok);
  auto rep = verify_higher_homotopies(p.h);
  CHECK_MESSAGE(rep.ok, rep.violation);
  CHECK(rep.checked == 9 * 4);
  auto cmp = compare_with_priddy(p.sh, p.h, p.tw, p.C);
  CHECK_MESSAGE(cmp.ok, cmp.mismatch);
  CHECK(cmp.entries > 0);
}

TEST_CASE("complete intersection (x^2, y^2, z^2): totals through hdeg 6") {
  auto r = ring_xyz(Field{0});
  auto spec = spec_of(r, {"x^2", "y^2", "z^2"}, true);
  auto pr = priddy_resolution(spec, nullptr, 6);
  CHECK(pr.minimal);
  CHECK_MESSAGE(pr.acyclic, pr.report);
  CHECK(longs(pr.totals()) == series_of({1, 3, 3, 1}, {1, 0, -3, 0, 3, 0, -1}, 6));
  auto t = pr.totals();
  CHECK(std::vector<int>(t.begin(), t.begin() + 5) == std::vector<int>{1, 3, 6, 10, 15});
  CHECK(pr.totals() == ground_truth(spec, 6));
  auto p = ci_pipeline(spec, 6, 3);
  CHECK(verify_higher_homotopies(p.h).ok);
  CHECK(compare_with_priddy(p.sh, p.h, p.tw, p.C).ok);
}

TEST_CASE("golod (x^2, xy): bar-priddy resolution has fibonacci totals") {
  auto r = make_ring({"x", "y"}, Field{0});
  auto spec = spec_of(r, {"x^2", "x*y"});
  auto pr = priddy_resolution(spec, nullptr, 6);
  CHECK(pr.presentation.recipe == "Golod");
  CHECK(pr.minimal);
  CHECK_MESSAGE(pr.acyclic, pr.report);
  // (1+t)/(1-t-t^2).
  CHECK(longs(pr.totals()) == series_of({1, 1}, {1, -1, -1}, 6));
  auto t = pr.totals();
  CHECK(std::vector<int>(t.begin(), t.begin() + 6) == std::vector<int>{1, 2, 3, 5, 8, 13});
  CHECK(pr.totals() == ground_truth(spec, 6));
}

TEST_CASE("gorenstein codepth three: priddy resolution of k") {
  auto r = ring_xyz(Field{0});
  auto spec = spec_of(r, kBurke);
  auto pr = priddy_resolution(spec, nullptr, 4);
  CHECK(pr.presentation.recipe == "GorensteinPD3");
  CHECK(pr.minimal);
  CHECK(pr.twisted.left_twist_vanished);
  CHECK_MESSAGE(pr.acyclic, pr.report);
  CHECK(pr.totals() == std::vector<int>{1, 3, 8, 21, 55});
  CHECK(longs(pr.totals()) == series_of({1, 3, 3, 1}, {1, 0, -5, -5, 0, 1}, 4));
  CHECK(pr.totals() == ground_truth(spec, 4));
}

TEST_CASE("complete intersection (x^2, y^3): homotopies through |alpha| = 3, comparison through hdeg 5") {
  auto r = make_ring({"x", "y"}, Field{0});
  auto spec = spec_of(r, {"x^2", "y^3"}, true);
  auto p = ci_pipeline(spec, 5, 3);
  auto rep = verify_higher_homotopies(p.h);
  CHECK_MESSAGE(rep.ok, rep.violation);
  CHECK(verify_complex(p.tw.complex).ok);
  auto cmp = compare_with_priddy(p.sh, p.h, p.tw, p.C);
  CHECK_MESSAGE(cmp.ok, cmp.mismatch);
  CHECK(p.sh.complex.ranks() == ground_truth(spec, 5));
}

TEST_CASE("non-monomial complete intersections and a cyclic module") {
  auto r = ring_xyz(Field{0});
  auto spec = spec_of(r, {"x^2+y*z", "y^2+x*z", "z^2+x*y"}, true);
  auto pr = priddy_resolution(spec, nullptr, 5);
  CHECK(pr.minimal);
  CHECK_MESSAGE(pr.acyclic, pr.report);
  CHECK(pr.totals() == ground_truth(spec, 5));
  auto p = ci_pipeline(spec, 5, 2);
  CHECK(verify_higher_homotopies(p.h).ok);
  CHECK(compare_with_priddy(p.sh, p.h, p.tw, p.C).ok);

  // M = R/(x) over k[x,y]/(x^2, y^2).
  auto r2 = make_ring({"x", "y"}, Field{0});
  auto ci = spec_of(r2, {"x^2", "y^2"}, true);
  auto J = spec_of(r2, {"x", "y^2"});
  auto pm = priddy_resolution(ci, &J, 5);
  CHECK_MESSAGE(pm.acyclic, pm.report);
  PolyMatrix pres{{1}, {0}, {{{0, P(r2, "x")}}}};
  auto truth = resolve_over_quotient(ci, 5, ci.default_ideg_bound(5), {0}, pres);
  // The top degree of a truncated complex keeps unpaired generators after minimizing.
  auto mr = minimize(pm.twisted.complex).ranks();
  auto tr = truth.ranks();
  CHECK(std::vector<int>(mr.begin(), mr.begin() + 5) == std::vector<int>(tr.begin(), tr.begin() + 5));
  auto bad = spec_of(r2, {"x"});
  CHECK_THROWS_AS(priddy_resolution(ci, &bad, 3), std::invalid_argument);
}

TEST_CASE("module R itself: the twisted complex contracts to R") {
  auto r = make_ring({"x", "y"}, Field{0});
  auto spec = spec_of(r, {"x^2", "x*y"});
  auto pr = priddy_resolution(spec, &spec, 4);
  CHECK_MESSAGE(pr.acyclic, pr.report);
  auto mr = minimize(pr.twisted.complex).ranks();
  CHECK(std::vector<int>(mr.begin(), mr.begin() + 4) == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("rank identity: coalgebra series times (1+t)^n is the poincare series of k") {
  auto r = ring_xyz(Field{0});
  for (auto gens : std::vector<std::vector<std::string>>{{"x^2", "y^2", "z^2"}, {"x^2", "x*y"}, kBurke}) {
    auto spec = spec_of(r, gens, gens.size() == 3 && gens[0] == "x^2" && gens[1] == "y^2");
    int N = gens == kBurke ? 4 : 6;
    auto pr = priddy_resolution(spec, nullptr, N);
    auto c = pr.coalgebra.series();
    std::vector<long> prod(N + 1, 0);
    const long binom[] = {1, 3, 3, 1};
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= 3 && i + j <= N; ++j) prod[i + j] += c[i] * binom[j];
    CHECK(prod == longs(ground_truth(spec, N)));
  }
}

TEST_CASE("dump formats") {
  auto r = make_ring({"x"}, Field{0});
  auto spec = spec_of(r, {"x^2"}, true);
  auto pr = priddy_resolution(spec, nullptr, 3);
  CHECK(dump_twisted(pr.twisted, true).rfind("totals: 1 1 1 1\n", 0) == 0);
  CHECK(dump_twisted(pr.twisted, false) == dump_resolution(pr.twisted.complex));
}
