#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sk/linalg.hpp"

namespace sk {

struct Generator {
  std::string label;
  int hdeg = 0;
  int ideg = 0;
  Monomial::Exps mdeg;  // exponent-vector degree, empty unless multigraded
};

// Element of a free module: generator index -> coefficient.
using Element = std::map<int, Polynomial>;

void add_term(Element& acc, int g, const Polynomial& p);
// acc += c * x
void add_scaled(Element& acc, const Element& x, const Polynomial& c);
Element scaled(const Element& x, const Polynomial& c);
Element element_normal_form(const Element& x, const CoefficientRing& R);
bool element_is_zero(const Element& x);

struct Bounds {
  int hdeg = -1;  // homological bound, -1 = none recorded
  int ideg = -1;  // internal-degree bound, -1 = none recorded
  bool truncated = false;
};

// Free graded complex over the polynomial ring or a quotient; generators indexed globally.
class ChainComplex {
 public:
  ChainComplex() = default;
  explicit ChainComplex(CoeffPtr coeffs);

  const CoeffPtr& coeffs() const { return coeffs_; }
  const RingPtr& ring() const { return coeffs_->ring(); }
  Field field() const { return ring()->field; }
  bool over_quotient() const { return !coeffs_->is_polynomial_ring(); }

  int add_generator(Generator g);
  void set_differential(int g, Element d);

  size_t size() const { return gens_.size(); }
  const Generator& gen(int g) const { return gens_[g]; }
  const std::vector<Generator>& gens() const { return gens_; }
  const Element& d(int g) const { return d_[g]; }
  // Generators of homological degree i, increasing index.
  const std::vector<int>& in_degree(int i) const;
  int local_index(int g) const { return local_[g]; }
  int max_hdeg() const { return static_cast<int>(by_hdeg_.size()) - 1; }
  int rank(int i) const { return static_cast<int>(in_degree(i).size()); }
  std::vector<int> ranks() const;

  Element apply_d(const Element& x) const;
  // Differential F_i -> F_{i-1} on local indices.
  PolyMatrix differential_matrix(int i) const;
  std::string element_str(const Element& x) const;

  Bounds bounds;

 private:
  CoeffPtr coeffs_;
  std::vector<Generator> gens_;
  std::vector<Element> d_;
  std::vector<std::vector<int>> by_hdeg_;
  std::vector<int> local_;
};

struct VerifyReport {
  bool ok = true;
  bool minimal = true;
  std::string violation;  // empty when ok
  int degree = -1;        // homological degree of the failing generator
  int generator = -1;
  int target = -1;
};

VerifyReport verify_complex(const ChainComplex& c);

struct HomologyTable {
  std::map<std::pair<int, int>, int> rank;  // (i, j) -> rank H_i(c)_j, zero entries omitted
  int min_ideg = 0;
  int max_ideg = 0;
  Bounds bounds;
  int at(int i, int j) const;
  int total(int i) const;
};

HomologyTable homology_ranks(const ChainComplex& c, int max_ideg);
// Ranks of the degree-j part of each module.
int module_dim(const ChainComplex& c, int i, int j);

ChainComplex minimize(const ChainComplex& c);

// Map between free complexes of bidegree (hshift, ishift), stored per source generator.
struct ComplexMap {
  int hshift = 0;
  int ishift = 0;
  std::vector<Element> images;
};

Element apply_map(const ComplexMap& f, const Element& x, const CoefficientRing& R);

// Solves the boundary equation d(y) = rhs degreewise; slices and echelon forms are cached.
class BoundarySolver {
 public:
  explicit BoundarySolver(const ChainComplex& A);
  ~BoundarySolver();
  // y in A_k of internal degree j with d(y) = rhs; nullopt when rhs is not a boundary.
  std::optional<Element> solve(int k, int j, const Element& rhs);

 private:
  struct Entry;
  Entry& entry(int k, int j);
  const ChainComplex& A_;
  std::map<std::pair<int, int>, std::unique_ptr<Entry>> cache_;
};

struct LiftResult {
  bool ok = true;
  ComplexMap h;
  std::string failure;
  int fail_hdeg = -1;
  int fail_ideg = -1;
};

// Finds h of bidegree (f.hshift + 1, f.ishift) with d_A h - (-1)^{|h|} h d_X = f,
// generator by generator in increasing homological then internal degree.
LiftResult null_homotopy_lift(const ChainComplex& X, const ChainComplex& A, const ComplexMap& f);

// Betti/homology tables as CSV: rows internal degree, columns homological degree.
std::string table_csv(const std::map<std::pair<int, int>, int>& entries, int max_i, int min_j, int max_j);

}  // namespace sk
