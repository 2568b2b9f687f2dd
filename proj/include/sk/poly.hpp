#pragma once

#include <boost/container/small_vector.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sk/scalar.hpp"

namespace sk {

// Ring descriptor: variable names, positive weights, coefficient field.
struct PolyRing {
  std::vector<std::string> vars;
  std::vector<int> weights;
  Field field;

  PolyRing(std::vector<std::string> v, Field f = {}, std::vector<int> w = {});
  size_t nvars() const { return vars.size(); }
  bool same_as(const PolyRing& o) const;
};
using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> vars, Field f = {}, std::vector<int> weights = {});

class Monomial {
 public:
  using Exps = boost::container::small_vector<int32_t, 8>;

  Monomial() = default;
  Monomial(const PolyRing& r, Exps e);
  static Monomial one(const PolyRing& r);
  static Monomial variable(const PolyRing& r, size_t i, int power = 1);

  int degree() const { return deg_; }
  int total_degree() const;
  size_t size() const { return e_.size(); }
  int operator[](size_t i) const { return e_[i]; }
  const Exps& exps() const { return e_; }
  bool is_one() const;
  bool divides(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  Monomial operator*(const Monomial& o) const;
  // Exact quotient; requires o.divides(*this).
  Monomial operator/(const Monomial& o) const;
  std::string str(const PolyRing& r) const;
  size_t hash() const;

  // Term order: weighted degree, then lexicographic on exponents.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
    return a.e_ < b.e_;
  }
  friend bool operator>(const Monomial& a, const Monomial& b) { return b < a; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.deg_ == b.deg_ && a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

 private:
  Exps e_;
  int deg_ = 0;
};

Monomial lcm(const PolyRing& r, const Monomial& a, const Monomial& b);
Monomial gcd(const PolyRing& r, const Monomial& a, const Monomial& b);
// All monomials of weighted degree d, in decreasing term order.
std::vector<Monomial> monomials_of_degree(const PolyRing& r, int d);

struct MonomialHash {
  size_t operator()(const Monomial& m) const { return m.hash(); }
};

using Term = std::pair<Monomial, Scalar>;

// Sparse polynomial; terms kept in strictly decreasing term order with nonzero coefficients.
// A default-constructed polynomial is the zero of every ring.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr r) : ring_(std::move(r)) {}
  static Polynomial constant(RingPtr r, const Scalar& c);
  static Polynomial term(RingPtr r, const Monomial& m, const Scalar& c = Scalar(1));
  static Polynomial variable(RingPtr r, size_t i);
  // Builds from arbitrary terms (duplicates merged, zeros dropped).
  static Polynomial from_terms(RingPtr r, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Nonzero constant.
  bool is_unit() const;
  Scalar constant_term() const;
  Scalar coefficient(const Monomial& m) const;
  bool is_homogeneous() const;
  // Weighted degree of the leading term; requires nonzero.
  int degree() const;
  const Monomial& leading_monomial() const { return terms_.front().first; }

  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_monomial(const Monomial& m, const Scalar& c = Scalar(1)) const;
  // Substitute 0 for every variable.
  Polynomial reduce_mod_maximal() const { return constant(ring_, constant_term()); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  // Adds c*m in place.
  void add_term(const Monomial& m, const Scalar& c);
  std::string str() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class PolyOp { add, mul, scale };
// Ring-checked arithmetic; for scale, b must be constant. Throws on descriptor mismatch.
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);

// Parses e.g. "x^2*y - 3/2 z^2", "xy+z^2", "x2x4x5"; juxtaposition of known variable names is a product.
// Throws ParseError with the column of the offending character.
Polynomial parse_polynomial(const RingPtr& r, const std::string& text);

struct DescriptorMismatch : std::invalid_argument {
  DescriptorMismatch() : std::invalid_argument("polynomial: ring descriptor mismatch") {}
};

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line_, int col_);
};

}  // namespace sk
