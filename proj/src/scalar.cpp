#include "sk/scalar.hpp"

#include <limits>
#include <stdexcept>

namespace sk {
namespace {

uint32_t common_char(const Scalar& a, const Scalar& b) {
  uint32_t pa = a.characteristic(), pb = b.characteristic();
  if (pa && pb && pa != pb) throw std::invalid_argument("scalar: mixed characteristics");
  return pa ? pa : pb;
}

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

uint32_t mpz_mod(const mpz_class& z, uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<uint32_t>(r.get_ui());
}

bool fits(__int128 x) {
  return x >= std::numeric_limits<int64_t>::min() && x <= std::numeric_limits<int64_t>::max();
}

}  // namespace

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Scalar::Scalar(long v) : v_(v) {}

Scalar Scalar::modp(int64_t v, uint32_t p) {
  Scalar s;
  s.p_ = p;
  int64_t r = v % static_cast<int64_t>(p);
  if (r < 0) r += p;
  s.v_ = r;
  return s;
}

Scalar Scalar::from_mpq(const mpq_class& q) {
  Scalar s;
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
    s.v_ = q.get_num().get_si();
  } else {
    s.q_ = std::make_shared<const mpq_class>(q);
  }
  return s;
}

Scalar Scalar::rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return from_mpq(c);
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw std::domain_error("scalar: zero denominator");
  return rational(mpq_class(num, den));
}

mpq_class Scalar::to_mpq() const {
  if (p_) throw std::logic_error("scalar: mod-p value has no rational lift");
  if (q_) return *q_;
  return mpq_class(mpz_class(static_cast<long>(v_)));
}

Scalar Scalar::in_field(uint32_t p) const {
  if (p == 0) {
    if (p_) throw std::invalid_argument("scalar: cannot lift mod-p value to Q");
    return *this;
  }
  if (p_ == p) return *this;
  if (p_) throw std::invalid_argument("scalar: mixed characteristics");
  if (!q_) return modp(v_, p);
  uint32_t num = mpz_mod(q_->get_num(), p);
  uint32_t den = mpz_mod(q_->get_den(), p);
  if (den == 0) throw std::domain_error("scalar: denominator vanishes mod p");
  return modp(static_cast<int64_t>(uint64_t(num) * pow_mod(den, p - 2, p) % p), p);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("scalar: inverse of zero");
  if (p_) return modp(static_cast<int64_t>(pow_mod(uint64_t(v_), p_ - 2, p_)), p_);
  return from_mpq(1 / to_mpq());
}

Scalar Scalar::operator-() const {
  if (p_) return modp(v_ == 0 ? 0 : p_ - v_, p_);
  if (!q_ && v_ != std::numeric_limits<int64_t>::min()) return Scalar(static_cast<long>(-v_));
  return from_mpq(-to_mpq());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  uint32_t p = common_char(a, b);
  if (p) {
    uint64_t x = a.in_field(p).v_, y = b.in_field(p).v_;
    return Scalar::modp(static_cast<int64_t>((x + y) % p), p);
  }
  if (!a.q_ && !b.q_) {
    __int128 s = static_cast<__int128>(a.v_) + b.v_;
    if (fits(s)) return Scalar(static_cast<long>(s));
  }
  return Scalar::from_mpq(a.to_mpq() + b.to_mpq());
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  uint32_t p = common_char(a, b);
  if (p) {
    uint64_t x = a.in_field(p).v_, y = b.in_field(p).v_;
    return Scalar::modp(static_cast<int64_t>(x * y % p), p);
  }
  if (!a.q_ && !b.q_) {
    __int128 s = static_cast<__int128>(a.v_) * b.v_;
    if (fits(s)) return Scalar(static_cast<long>(s));
  }
  return Scalar::from_mpq(a.to_mpq() * b.to_mpq());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  uint32_t p = common_char(a, b);
  if (p) return a.in_field(p) * b.in_field(p).inverse();
  return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  uint32_t p = common_char(a, b);
  if (p) return a.in_field(p).v_ == b.in_field(p).v_;
  if (!a.q_ && !b.q_) return a.v_ == b.v_;
  return a.to_mpq() == b.to_mpq();
}

std::string Scalar::str() const {
  if (q_) return q_->get_str();
  return std::to_string(v_);
}

Scalar Field::operator()(long v) const { return p ? Scalar::modp(v, p) : Scalar(v); }

Scalar Field::parse(const std::string& text) const {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) throw std::invalid_argument("bad number '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  q.canonicalize();
  return from(Scalar::rational(q));
}

std::string Field::name() const { return p ? "GF(" + std::to_string(p) + ")" : "QQ"; }

}  // namespace sk
