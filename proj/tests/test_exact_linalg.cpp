#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace sk;
using namespace sk::testing;

TEST_CASE("scalar arithmetic is exact in both fields") {
  Field q{0};
  Scalar a = Scalar::rational(2, 4);
  CHECK(a == Scalar::rational(1, 2));
  CHECK(a.str() == "1/2");
  CHECK((a + a).is_one());
  CHECK((Scalar::rational(-3, -6)).str() == "1/2");
  CHECK(Scalar::rational(1, -2).str() == "-1/2");
  CHECK(q.parse("6/4").str() == "3/2");
  Field f{7};
  Scalar b = f(3);
  CHECK((b * b.inverse()).is_one());
  CHECK(f.parse("1/2") * f(2) == f(1));
  CHECK_THROWS(f(0).inverse());
  CHECK_THROWS(Field{5}(1) + Field{7}(1));
  Scalar big = Scalar(1L << 62) * Scalar(8);
  CHECK(big.to_mpq() == mpq_class(mpz_class(1) << 65));
}

TEST_CASE("poly_arith examples") {
  auto r = make_ring({"x", "y"}, Field{0});
  auto s = poly_arith(P(r, "x+y"), P(r, "x-y"), PolyOp::mul);
  CHECK(s == P(r, "x^2-y^2"));
  CHECK(poly_arith(P(r, "x"), Polynomial(r), PolyOp::mul).is_zero());
  auto r2 = make_ring({"x", "y"}, Field{2});
  CHECK(poly_arith(P(r2, "x+y"), P(r2, "x+y"), PolyOp::mul) == P(r2, "x^2+y^2"));
  auto r3 = make_ring({"x", "y"}, Field{3});
  CHECK_THROWS_AS(poly_arith(P(r, "x"), P(r3, "x"), PolyOp::add), DescriptorMismatch);
  CHECK(poly_arith(P(r, "x+y"), P(r, "3"), PolyOp::scale) == P(r, "3x+3y"));
}

TEST_CASE("polynomial parsing and printing round-trip") {
  auto r = make_ring({"x1", "x2", "x10"}, Field{0});
  auto p = P(r, "x1x2x10 - 3/2 x10^2 + 4");
  CHECK(p.size() == 3);
  CHECK(P(r, p.str()) == p);
  auto rq = make_ring({"a", "b", "c"});
  auto t = P(rq, "-ac+b^2");
  CHECK(P(rq, t.str()) == t);
  CHECK(t.str() == "-a*c + b^2");
  try {
    P(rq, "a + q");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.column == 5);
  }
}

TEST_CASE("term order: degree then lex, decreasing inside polynomials") {
  auto r = ring_xyz();
  auto p = P(r, "z^3 + x*y + x^2 + y");
  std::vector<std::string> seen;
  for (auto& t : p.terms()) seen.push_back(t.first.str(*r));
  CHECK(seen == std::vector<std::string>{"z^3", "x^2", "x*y", "y"});
  CHECK(monomials_of_degree(*r, 2).size() == 6);
  auto w = make_ring({"x", "y"}, {}, {2, 3});
  CHECK(monomials_of_degree(*w, 6).size() == 2);
}

TEST_CASE("expand_in_degree examples") {
  auto r1 = make_ring({"x"});
  auto R1 = polynomial_coefficients(r1);
  PolyMatrix mx{{1}, {0}, {{{0, P(r1, "x")}}}};
  auto s = expand_in_degree(mx, 3, *R1);
  REQUIRE(s.ncols() == 1);
  REQUIRE(s.nrows() == 1);
  CHECK(s.col_labels[0].mono.str(*r1) == "x^2");
  CHECK(s.row_labels[0].mono.str(*r1) == "x^3");
  CHECK(s.columns[0] == SparseVec{{0, Scalar(1)}});

  PolyMatrix zero{{1, 2}, {0, 1}, {{}, {}}};
  auto z = expand_in_degree(zero, 3, *R1);
  CHECK(z.ncols() == 2);
  CHECK(z.nrows() == 2);
  for (auto& c : z.columns) CHECK(c.empty());

  // Oracle: brute-force degree-2 monomials of k[x,y] and locate x^2, y^2.
  auto r = make_ring({"x", "y"});
  auto R = polynomial_coefficients(r);
  std::vector<std::pair<int, int>> oracle;
  for (int a = 2; a >= 0; --a) oracle.emplace_back(a, 2 - a);
  PolyMatrix kos{{2, 2}, {0}, {{{0, P(r, "x^2")}}, {{0, P(r, "y^2")}}}};
  auto k = expand_in_degree(kos, 2, *R);
  REQUIRE(k.nrows() == oracle.size());
  REQUIRE(k.ncols() == 2);
  auto row_of = [&](int a, int b) {
    for (size_t i = 0; i < oracle.size(); ++i)
      if (oracle[i] == std::make_pair(a, b)) return static_cast<int>(i);
    return -1;
  };
  CHECK(k.columns[0] == SparseVec{{row_of(2, 0), Scalar(1)}});
  CHECK(k.columns[1] == SparseVec{{row_of(0, 2), Scalar(1)}});

  PolyMatrix bad{{2}, {0}, {{{0, P(r, "x^2+y")}}}};
  CHECK_THROWS_AS(expand_in_degree(bad, 2, *R), HomogeneityError);
}

TEST_CASE("graded_solve and kernel examples") {
  Field f{};
  GradedSlice id;
  id.row_labels.resize(2);
  id.col_labels.resize(2);
  id.columns = {{{0, Scalar(1)}}, {{1, Scalar(1)}}};
  CHECK(*graded_solve(id, {{0, Scalar(1)}}, f) == SparseVec{{0, Scalar(1)}});
  CHECK(kernel_in_degree(id, f).empty());

  GradedSlice ones;
  ones.row_labels.resize(1);
  ones.col_labels.resize(2);
  ones.columns = {{{0, Scalar(1)}}, {{0, Scalar(1)}}};
  auto x = graded_solve(ones, {{0, Scalar(1)}}, f);
  REQUIRE(x);
  CHECK(densify(*x, 2) == std::vector<Scalar>{f(1), f(0)});
  auto ker = kernel_in_degree(ones, f);
  REQUIRE(ker.size() == 1);
  // Proportional to (1,-1); normalized with 1 in the free coordinate.
  auto v = densify(ker[0], 2);
  CHECK(v[0] == -v[1]);
  CHECK(v[1] == f(1));

  GradedSlice zero1;
  zero1.row_labels.resize(1);
  zero1.col_labels.resize(1);
  zero1.columns = {{}};
  CHECK(!graded_solve(zero1, {{0, Scalar(1)}}, f));

  GradedSlice zero3;
  zero3.row_labels.resize(2);
  zero3.col_labels.resize(3);
  zero3.columns = {{}, {}, {}};
  auto zk = kernel_in_degree(zero3, f);
  REQUIRE(zk.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(zk[i] == SparseVec{{i, Scalar(1)}});
}

namespace {

PolyMatrix random_matrix(const RingPtr& r, const std::vector<int>& src, const std::vector<int>& tgt,
                         std::mt19937& rng) {
  PolyMatrix m{src, tgt, {}};
  m.columns.resize(src.size());
  for (size_t s = 0; s < src.size(); ++s)
    for (size_t t = 0; t < tgt.size(); ++t) {
      auto p = random_homogeneous(r, src[s] - tgt[t], rng);
      if (!p.is_zero()) m.columns[s].emplace_back(static_cast<int>(t), p);
    }
  return m;
}

PolyMatrix compose(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix c{b.source_degrees, a.target_degrees, {}};
  c.columns.resize(b.source_degrees.size());
  for (size_t s = 0; s < b.columns.size(); ++s) {
    std::vector<Polynomial> acc(a.target_degrees.size());
    for (auto& [mid, p] : b.columns[s])
      for (auto& [t, q] : a.columns[mid]) acc[t] += q * p;
    for (size_t t = 0; t < acc.size(); ++t)
      if (!acc[t].is_zero()) c.columns[s].emplace_back(static_cast<int>(t), acc[t]);
  }
  return c;
}

}  // namespace

TEST_CASE("property: slices are functorial, solves back-multiply, kernels have the right size") {
  set_self_checks(true);
  std::mt19937 rng(20240611);
  for (uint32_t p : {0u, 32003u}) {
    auto r = make_ring({"x", "y", "z"}, Field{p});
    auto R = polynomial_coefficients(r);
    for (int trial = 0; trial < 25; ++trial) {
      std::uniform_int_distribution<int> deg(0, 2), cnt(1, 3);
      std::vector<int> d0(cnt(rng)), d1(cnt(rng)), d2(cnt(rng));
      for (auto& d : d0) d = deg(rng);
      for (auto& d : d1) d = deg(rng) + 1;
      for (auto& d : d2) d = deg(rng) + 2;
      auto n = random_matrix(r, d2, d1, rng);
      auto m = random_matrix(r, d1, d0, rng);
      auto mn = compose(m, n);
      for (int d = 0; d <= 5; ++d) {
        auto sm = expand_in_degree(m, d, *R), sn = expand_in_degree(n, d, *R), smn = expand_in_degree(mn, d, *R);
        for (size_t j = 0; j < sn.ncols(); ++j) CHECK(sm.apply(sn.columns[j]) == smn.columns[j]);
        size_t rk = slice_rank(smn, r->field);
        auto ker = kernel_in_degree(smn, r->field);
        CHECK(ker.size() == smn.ncols() - rk);
        for (auto& v : ker) CHECK(sparse_is_zero(smn.apply(v)));
        for (size_t j = 0; j < smn.ncols(); ++j) {
          auto x = graded_solve(smn, smn.columns[j], r->field);
          REQUIRE(x);
          CHECK(smn.apply(*x) == smn.columns[j]);
        }
        auto again = expand_in_degree(mn, d, *R);
        CHECK(again.columns == smn.columns);
        CHECK(kernel_in_degree(again, r->field) == ker);
      }
    }
  }
  set_self_checks(false);
}
