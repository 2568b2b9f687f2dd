#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sk/complex.hpp"

namespace sk {

struct RingSpec {
  RingPtr ring;
  std::vector<Polynomial> gens;
  bool monomial = false;
  bool regular_sequence = false;

  // Validates homogeneity and sets the monomial flag.
  static RingSpec make(RingPtr r, std::vector<Polynomial> gens, bool regular_sequence = false);
  int max_generator_degree() const;
  // N * maxdeg + maxdeg.
  int default_ideg_bound(int hdeg_bound) const;
  std::vector<Monomial> monomial_generators() const;
};

// Q/I with a degreewise standard-monomial basis.
CoeffPtr quotient_ring(const RingSpec& spec);

// Multiplication table on a basis of a complex; absent pairs multiply to zero.
struct DgProduct {
  int unit = -1;
  std::map<std::pair<int, int>, Element> table;

  Element mul(int a, int b) const;
  Element mul(const Element& x, const Element& y, const CoefficientRing& R) const;
};

// Empty optional when the product is graded-commutative, unital and satisfies Leibniz.
std::optional<std::string> check_dg_algebra(const ChainComplex& c, const DgProduct& prod);

struct DgAlgebra {
  ChainComplex complex;
  DgProduct product;
  std::vector<unsigned> subsets;  // subset mask of each generator
};

DgAlgebra koszul_complex(const RingPtr& r, const std::vector<Polynomial>& fs);

struct Dominance {
  bool dominant = false;
  // Per generator: (variable, exponent) witnessing dominance, or (-1, 0).
  std::vector<std::pair<int, int>> witness;
};

Dominance dominance_certificate(const RingPtr& r, const std::vector<Monomial>& ms);

struct TaylorResult {
  DgAlgebra algebra;
  Dominance dominance;
};

TaylorResult taylor_resolution(const RingPtr& r, const std::vector<Monomial>& ms);

// Minimal graded free resolution of Q/I over Q through homological degree N and internal degree D.
ChainComplex minimal_free_resolution(const RingSpec& spec, int N, int D);

// Minimal resolution over R = Q/I of the module presented by `presentation` (columns over R with
// target degrees `target_degrees`); the residue field when both are empty.
ChainComplex resolve_over_quotient(const RingSpec& spec, int N, int D, const std::vector<int>& target_degrees = {},
                                   const PolyMatrix& presentation = {});

struct BettiTable {
  std::map<std::pair<int, int>, int> rank;  // (i, j), zero entries omitted
  Bounds bounds;

  static BettiTable of(const ChainComplex& c);
  int at(int i, int j) const;
  int max_i() const;
  std::vector<int> totals() const;
  std::string csv() const;
  // rank(i, j) == rank(pd - i, socle_degree - j) for all entries.
  bool is_symmetric(int pd, int top_degree) const;
};

std::string dump_resolution(const ChainComplex& c);

// Coefficients of (1+t)^n / (1 - sum_{i>=1} rank A_i t^{i+1}) through t^N, n the number of variables.
std::vector<long> serre_bound(const ChainComplex& A, int N);

// Finite-dimensional bigraded k-algebra with basis indexed by resolution generators.
struct TorAlgebra {
  Field field;
  std::vector<Generator> basis;
  int unit = -1;
  std::map<std::pair<int, int>, SparseVec> mult;

  SparseVec product(int a, int b) const;
  std::vector<int> in_hdeg(int i) const;
  std::vector<int> dims() const;
};

// H(K^R) as A (x) k with the product induced by m_2 on the minimal resolution A.
TorAlgebra koszul_homology_algebra(const RingSpec& spec, int D = -1);
TorAlgebra tor_algebra_from(const ChainComplex& A, const std::map<std::pair<int, int>, Element>& m2);

}  // namespace sk
