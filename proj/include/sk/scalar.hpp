#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>

namespace sk {

inline constexpr uint32_t kDefaultCharacteristic = 32003;

// Exact element of F_p (p > 0) or Q (p == 0).
// A plain integer carries p == 0 and is coerced into F_p when combined with a mod-p value.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT

  static Scalar modp(int64_t v, uint32_t p);
  static Scalar rational(const mpq_class& q);
  static Scalar rational(long num, long den);

  uint32_t characteristic() const { return p_; }
  bool is_zero() const { return !q_ && v_ == 0; }
  bool is_one() const { return !q_ && v_ == 1; }
  bool is_small_integer() const { return p_ == 0 && !q_; }
  int64_t small_value() const { return v_; }
  // Representative in [0,p) of a mod-p value.
  int64_t residue() const { return v_; }

  Scalar inverse() const;
  Scalar operator-() const;
  mpq_class to_mpq() const;
  // Image in F_p; throws if p divides the denominator.
  Scalar in_field(uint32_t p) const;
  std::string str() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

 private:
  static Scalar from_mpq(const mpq_class& q);

  uint32_t p_ = 0;
  int64_t v_ = 0;                       // residue in [0,p) when p_ > 0; integer value when q_ is null
  std::shared_ptr<const mpq_class> q_;  // non-small rational value (p_ == 0 only)
};

// Coefficient field descriptor.
struct Field {
  uint32_t p = kDefaultCharacteristic;  // 0 = rationals

  bool is_rational() const { return p == 0; }
  Scalar operator()(long v) const;
  Scalar from(const Scalar& s) const { return p == 0 ? s : s.in_field(p); }
  // Accepts "n" or "n/d"; throws std::invalid_argument on malformed text.
  Scalar parse(const std::string& text) const;
  std::string name() const;
  friend bool operator==(const Field& a, const Field& b) { return a.p == b.p; }
};

bool is_prime(uint32_t p);

}  // namespace sk
