#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sk/poly.hpp"

namespace sk {

// Sparse vector: strictly increasing indices, nonzero entries.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparse_axpy(const SparseVec& x, const Scalar& a, const SparseVec& y);  // x + a*y
bool sparse_is_zero(const SparseVec& v);

// When on, solvers verify every solution by back-multiplication (used by the test suites).
void set_self_checks(bool on);
bool self_checks();

// Incremental column echelon form. Columns are appended left to right; a column is a pivot
// column iff it is independent of the columns before it, exactly as in row-reduced echelon form.
class Echelon {
 public:
  Echelon(size_t nrows, Field f, bool track = true);
  ~Echelon();
  Echelon(Echelon&&) noexcept;
  Echelon& operator=(Echelon&&) noexcept;

  // Returns true when the column is independent of those pushed before.
  bool push(const SparseVec& col);
  size_t rank() const;
  size_t ncols() const;
  size_t nrows() const;
  const std::vector<size_t>& pivot_columns() const;
  // Coefficients over pushed columns, free columns zero; nullopt when rhs is outside the span.
  std::optional<SparseVec> solve(const SparseVec& rhs) const;
  bool contains(const SparseVec& v) const;
  // Remainder of v modulo the span (zero iff v in span); deterministic normal form.
  SparseVec reduce(const SparseVec& v) const;
  // One vector per dependent column c: 1 at c, minus its expression in earlier pivot columns.
  const std::vector<SparseVec>& kernel() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// Graded coefficient ring: the polynomial ring or a quotient with a degreewise monomial basis.
class CoefficientRing {
 public:
  virtual ~CoefficientRing() = default;
  const RingPtr& ring() const { return ring_; }
  virtual bool is_polynomial_ring() const = 0;
  // Standard monomials of degree d, decreasing term order.
  const std::vector<Monomial>& basis(int d) const;
  // Position of m within basis(m.degree()), or -1 if m is not a standard monomial.
  int index_of(const Monomial& m) const;
  // Representative supported on standard monomials.
  virtual Polynomial normal_form(const Polynomial& p) const = 0;

 protected:
  explicit CoefficientRing(RingPtr r) : ring_(std::move(r)) {}
  virtual std::vector<Monomial> compute_basis(int d) const = 0;

 private:
  struct DegreeData {
    std::vector<Monomial> basis;
    std::unordered_map<Monomial, int, MonomialHash> index;
  };
  const DegreeData& data(int d) const;

  RingPtr ring_;
  mutable std::mutex mu_;
  mutable std::unordered_map<int, std::unique_ptr<DegreeData>> cache_;
};
using CoeffPtr = std::shared_ptr<const CoefficientRing>;

CoeffPtr polynomial_coefficients(RingPtr r);

// Matrix of homogeneous polynomials between graded free modules (columns = source generators).
struct PolyMatrix {
  std::vector<int> source_degrees;
  std::vector<int> target_degrees;
  std::vector<std::vector<std::pair<int, Polynomial>>> columns;
};

struct SliceLabel {
  int gen;
  Monomial mono;
};

// Degree-d part of a map of free modules over a coefficient ring, as a scalar matrix.
// Labels are ordered generator-major, then decreasing term order.
struct GradedSlice {
  int degree = 0;
  std::vector<SliceLabel> col_labels;
  std::vector<SliceLabel> row_labels;
  std::vector<SparseVec> columns;

  size_t nrows() const { return row_labels.size(); }
  size_t ncols() const { return col_labels.size(); }
  SparseVec apply(const SparseVec& x) const;
};

struct HomogeneityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

GradedSlice expand_in_degree(const PolyMatrix& m, int d, const CoefficientRing& R);
std::optional<SparseVec> graded_solve(const GradedSlice& s, const SparseVec& rhs, Field f);
std::vector<SparseVec> kernel_in_degree(const GradedSlice& s, Field f);
size_t slice_rank(const GradedSlice& s, Field f);

}  // namespace sk
