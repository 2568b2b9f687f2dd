#include <random>

#include "doctest.h"
#include "sk/complex.hpp"
#include "test_util.hpp"

using namespace sk;
using namespace sk::testing;

namespace {

// Koszul complex on homogeneous f_1..f_n, basis e_S for subsets S in increasing mask order.
ChainComplex koszul_on(const RingPtr& r, const std::vector<Polynomial>& fs) {
  ChainComplex c(polynomial_coefficients(r));
  size_t n = fs.size();
  std::vector<int> idx(1u << n);
  for (int k = 0; k <= static_cast<int>(n); ++k)
    for (unsigned s = 0; s < (1u << n); ++s) {
      if (__builtin_popcount(s) != k) continue;
      int deg = 0;
      for (size_t i = 0; i < n; ++i)
        if (s >> i & 1) deg += fs[i].degree();
      idx[s] = c.add_generator({"e" + std::to_string(s), k, deg, {}});
    }
  for (unsigned s = 1; s < (1u << n); ++s) {
    Element d;
    int sign = 1;
    for (size_t i = 0; i < n; ++i)
      if (s >> i & 1) {
        add_term(d, idx[s & ~(1u << i)], fs[i].scaled(Scalar(sign)));
        sign = -sign;
      }
    c.set_differential(idx[s], d);
  }
  return c;
}

ChainComplex taylor_on(const RingPtr& r, const std::vector<Monomial>& ms) {
  ChainComplex c(polynomial_coefficients(r));
  size_t n = ms.size();
  std::vector<int> idx(1u << n);
  std::vector<Monomial> lc(1u << n, Monomial::one(*r));
  for (unsigned s = 1; s < (1u << n); ++s)
    for (size_t i = 0; i < n; ++i)
      if (s >> i & 1) lc[s] = lcm(*r, lc[s], ms[i]);
  for (int k = 0; k <= static_cast<int>(n); ++k)
    for (unsigned s = 0; s < (1u << n); ++s)
      if (__builtin_popcount(s) == k) idx[s] = c.add_generator({"t" + std::to_string(s), k, lc[s].degree(), {}});
  for (unsigned s = 1; s < (1u << n); ++s) {
    Element d;
    int sign = 1;
    for (size_t i = 0; i < n; ++i)
      if (s >> i & 1) {
        unsigned t = s & ~(1u << i);
        if (t) add_term(d, idx[t], Polynomial::term(r, lc[s] / lc[t], Scalar(sign)));
        else add_term(d, idx[t], Polynomial::term(r, ms[i], Scalar(sign)));
        sign = -sign;
      }
    c.set_differential(idx[s], d);
  }
  return c;
}

ChainComplex cone_of_identity(const ChainComplex& x) {
  ChainComplex c(x.coeffs());
  std::vector<int> shifted(x.size()), same(x.size());
  for (int i = 0; i <= x.max_hdeg() + 1; ++i) {
    for (int g : x.in_degree(i - 1)) {
      Generator h = x.gen(g);
      h.label = "s" + h.label;
      h.hdeg = i;
      shifted[g] = c.add_generator(h);
    }
    for (int g : x.in_degree(i)) same[g] = c.add_generator(x.gen(g));
  }
  Polynomial minus = Polynomial::constant(x.ring(), Scalar(-1));
  Polynomial one = Polynomial::constant(x.ring(), Scalar(1));
  for (size_t g = 0; g < x.size(); ++g) {
    Element ds, dn;
    for (auto& [t, p] : x.d(g)) {
      add_term(ds, shifted[t], minus * p);
      add_term(dn, same[t], p);
    }
    add_term(ds, same[g], one);
    c.set_differential(shifted[g], ds);
    c.set_differential(same[g], dn);
  }
  return c;
}

std::vector<int> hilbert_h0(const HomologyTable& h, int lo, int hi) {
  std::vector<int> v;
  for (int j = lo; j <= hi; ++j) v.push_back(h.at(0, j));
  return v;
}

}  // namespace

TEST_CASE("homology of a Koszul complex") {
  auto r = make_ring({"x", "y"}, Field{0});
  auto k = koszul_on(r, {P(r, "x^2"), P(r, "y^2")});
  CHECK(verify_complex(k).ok);
  CHECK(verify_complex(k).minimal);
  auto h = homology_ranks(k, 6);
  CHECK(hilbert_h0(h, 0, 4) == std::vector<int>{1, 2, 1, 0, 0});
  CHECK(h.total(1) == 0);
  CHECK(h.total(2) == 0);
}

TEST_CASE("homology of a Taylor complex") {
  for (uint32_t p : {0u, 32003u}) {
    auto r = ring_xyz(Field{p});
    auto t = taylor_on(r, {P(r, "xy").leading_monomial(), P(r, "yz").leading_monomial()});
    CHECK(verify_complex(t).ok);
    auto h = homology_ranks(t, 4);
    CHECK(hilbert_h0(h, 0, 4) == std::vector<int>{1, 3, 4, 5, 6});
    CHECK(h.total(1) == 0);
    CHECK(h.total(2) == 0);
  }
}

TEST_CASE("minimize cancels unit entries") {
  auto r = make_ring({"x", "y"}, Field{0});
  auto t = taylor_on(r, {P(r, "x^2").leading_monomial(), P(r, "xy").leading_monomial(),
                         P(r, "y^2").leading_monomial()});
  CHECK(t.ranks() == std::vector<int>{1, 3, 3, 1});
  CHECK_FALSE(verify_complex(t).minimal);
  auto m = minimize(t);
  CHECK(verify_complex(m).ok);
  CHECK(verify_complex(m).minimal);
  auto rk = m.ranks();
  while (!rk.empty() && rk.back() == 0) rk.pop_back();
  CHECK(rk == std::vector<int>{1, 3, 2});
  CHECK(m.rank(3) == 0);
  CHECK(homology_ranks(m, 6).rank == homology_ranks(t, 6).rank);
  for (int g : m.in_degree(2)) CHECK(m.gen(g).ideg == 3);
}

TEST_CASE("minimize of the cone of the identity is empty") {
  auto r = ring_xyz(Field{0});
  auto k = koszul_on(r, {P(r, "x"), P(r, "y"), P(r, "z")});
  auto c = cone_of_identity(k);
  CHECK(verify_complex(c).ok);
  CHECK(homology_ranks(c, 5).rank.empty());
  CHECK(minimize(c).size() == 0);
}

TEST_CASE("verify_complex reports the first violation") {
  auto r = make_ring({"x"}, Field{0});
  ChainComplex c(polynomial_coefficients(r));
  int g0 = c.add_generator({"g0", 0, 0, {}});
  int g1 = c.add_generator({"g1", 1, 1, {}});
  int g2 = c.add_generator({"g2", 2, 1, {}});
  c.set_differential(g1, {{g0, P(r, "x")}});
  c.set_differential(g2, {{g1, P(r, "1")}});
  auto rep = verify_complex(c);
  CHECK_FALSE(rep.ok);
  CHECK(rep.degree == 2);
  CHECK(rep.generator == g2);
  CHECK_FALSE(rep.minimal);
  CHECK_THROWS_AS(c.set_differential(g1, {{g0, P(r, "x^2")}}), HomogeneityError);
}

TEST_CASE("null homotopy of multiplication by x^2 on K(x)") {
  auto r = make_ring({"x"}, Field{0});
  auto k = koszul_on(r, {P(r, "x")});
  int one = k.in_degree(0)[0], e = k.in_degree(1)[0];
  ComplexMap f{0, 2, {}};
  f.images.resize(k.size());
  f.images[one] = {{one, P(r, "x^2")}};
  f.images[e] = {{e, P(r, "x^2")}};
  auto res = null_homotopy_lift(k, k, f);
  REQUIRE(res.ok);
  CHECK(res.h.images[one] == Element{{e, P(r, "x")}});
  CHECK(element_is_zero(res.h.images[e]));
}

TEST_CASE("null homotopy lift fails on a non-nullhomotopic map") {
  auto r = make_ring({"x"}, Field{0});
  auto k = koszul_on(r, {P(r, "x")});
  ChainComplex a(polynomial_coefficients(r));
  int a0 = a.add_generator({"1", 0, 0, {}});
  ComplexMap f{0, 0, {}};
  f.images.resize(k.size());
  f.images[k.in_degree(0)[0]] = {{a0, P(r, "1")}};
  auto res = null_homotopy_lift(k, a, f);
  CHECK_FALSE(res.ok);
  CHECK(res.fail_hdeg == 1);
  CHECK(res.fail_ideg == 0);
  CHECK_FALSE(res.failure.empty());
}

TEST_CASE("random null homotopies are recovered") {
  set_self_checks(true);
  std::mt19937 rng(7);
  auto r = ring_xyz(Field{0});
  auto a = koszul_on(r, {P(r, "x"), P(r, "y"), P(r, "z")});
  auto x = koszul_on(r, {P(r, "x^2+y*z"), P(r, "y^2")});
  const auto& R = *a.coeffs();
  for (int trial = 0; trial < 50; ++trial) {
    int hshift = 1 + trial % 2;  // bidegree of the planted homotopy
    int ishift = trial % 3;
    ComplexMap h{hshift, ishift, std::vector<Element>(x.size())};
    for (size_t g = 0; g < x.size(); ++g) {
      int k = x.gen(g).hdeg + hshift;
      for (int t : a.in_degree(k)) {
        int deg = x.gen(g).ideg + ishift - a.gen(t).ideg;
        add_term(h.images[g], t, random_homogeneous(r, deg, rng, 2));
      }
    }
    ComplexMap f{hshift - 1, ishift, std::vector<Element>(x.size())};
    Polynomial sgn = Polynomial::constant(r, Scalar(hshift % 2 ? -1 : 1));
    for (size_t g = 0; g < x.size(); ++g) {
      f.images[g] = a.apply_d(h.images[g]);
      add_scaled(f.images[g], apply_map(h, x.d(g), R), -sgn);
    }
    auto res = null_homotopy_lift(x, a, f);
    REQUIRE(res.ok);
    for (size_t g = 0; g < x.size(); ++g) {
      Element lhs = a.apply_d(res.h.images[g]);
      add_scaled(lhs, apply_map(res.h, x.d(g), R), -sgn);
      CHECK(lhs == f.images[g]);
    }
  }
  set_self_checks(false);
}
