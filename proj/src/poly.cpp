#include "sk/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace sk {

PolyRing::PolyRing(std::vector<std::string> v, Field f, std::vector<int> w)
    : vars(std::move(v)), weights(std::move(w)), field(f) {
  if (weights.empty()) weights.assign(vars.size(), 1);
  if (weights.size() != vars.size()) throw std::invalid_argument("ring: weight count mismatch");
  for (int x : weights)
    if (x <= 0) throw std::invalid_argument("ring: weights must be positive");
}

bool PolyRing::same_as(const PolyRing& o) const {
  return vars == o.vars && weights == o.weights && field == o.field;
}

RingPtr make_ring(std::vector<std::string> vars, Field f, std::vector<int> weights) {
  return std::make_shared<const PolyRing>(std::move(vars), f, std::move(weights));
}

Monomial::Monomial(const PolyRing& r, Exps e) : e_(std::move(e)) {
  if (e_.size() != r.nvars()) throw std::invalid_argument("monomial: wrong number of exponents");
  for (size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] < 0) throw std::invalid_argument("monomial: negative exponent");
    deg_ += e_[i] * r.weights[i];
  }
}

Monomial Monomial::one(const PolyRing& r) { return Monomial(r, Exps(r.nvars(), 0)); }

Monomial Monomial::variable(const PolyRing& r, size_t i, int power) {
  Exps e(r.nvars(), 0);
  e[i] = power;
  return Monomial(r, std::move(e));
}

int Monomial::total_degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](int x) { return x == 0; });
}

bool Monomial::divides(const Monomial& o) const {
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& o) const {
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] && o.e_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.e_ = e_;
  if (m.e_.size() < o.e_.size()) m.e_.resize(o.e_.size(), 0);
  for (size_t i = 0; i < o.e_.size(); ++i) m.e_[i] += o.e_[i];
  m.deg_ = deg_ + o.deg_;
  return m;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial m;
  m.e_ = e_;
  for (size_t i = 0; i < o.e_.size(); ++i) {
    m.e_[i] -= o.e_[i];
    if (m.e_[i] < 0) throw std::invalid_argument("monomial: inexact division");
  }
  m.deg_ = deg_ - o.deg_;
  return m;
}

std::string Monomial::str(const PolyRing& r) const {
  std::string s;
  for (size_t i = 0; i < e_.size(); ++i) {
    if (!e_[i]) continue;
    if (!s.empty()) s += '*';
    s += r.vars[i];
    if (e_[i] > 1) s += '^' + std::to_string(e_[i]);
  }
  return s.empty() ? "1" : s;
}

size_t Monomial::hash() const {
  size_t h = 1469598103934665603ull;
  for (int x : e_) h = (h ^ static_cast<size_t>(x)) * 1099511628211ull;
  return h;
}

Monomial lcm(const PolyRing& r, const Monomial& a, const Monomial& b) {
  Monomial::Exps e(r.nvars());
  for (size_t i = 0; i < e.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(r, std::move(e));
}

Monomial gcd(const PolyRing& r, const Monomial& a, const Monomial& b) {
  Monomial::Exps e(r.nvars());
  for (size_t i = 0; i < e.size(); ++i) e[i] = std::min(a[i], b[i]);
  return Monomial(r, std::move(e));
}

namespace {

void enumerate(const PolyRing& r, size_t i, int left, Monomial::Exps& cur, std::vector<Monomial>& out) {
  if (i + 1 == r.nvars()) {
    if (left % r.weights[i] == 0) {
      cur[i] = left / r.weights[i];
      out.emplace_back(r, cur);
      cur[i] = 0;
    }
    return;
  }
  for (int a = left / r.weights[i]; a >= 0; --a) {
    cur[i] = a;
    enumerate(r, i + 1, left - a * r.weights[i], cur, out);
  }
  cur[i] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const PolyRing& r, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (r.nvars() == 0) {
    if (d == 0) out.push_back(Monomial::one(r));
    return out;
  }
  Monomial::Exps cur(r.nvars(), 0);
  enumerate(r, 0, d, cur, out);
  return out;  // lex-decreasing within one degree
}

namespace {

const RingPtr& common_ring(const Polynomial& a, const Polynomial& b) {
  if (!a.ring()) return b.ring();
  if (!b.ring() || a.ring() == b.ring()) return a.ring();
  if (!a.ring()->same_as(*b.ring())) throw DescriptorMismatch();
  return a.ring();
}

Scalar coerce(const RingPtr& r, const Scalar& c) { return r ? r->field.from(c) : c; }

}  // namespace

Polynomial Polynomial::constant(RingPtr r, const Scalar& c) {
  Polynomial p(r);
  if (!c.is_zero()) p.terms_.emplace_back(Monomial::one(*r), coerce(r, c));
  return p;
}

Polynomial Polynomial::term(RingPtr r, const Monomial& m, const Scalar& c) {
  Polynomial p(r);
  if (!c.is_zero()) p.terms_.emplace_back(m, coerce(r, c));
  return p;
}

Polynomial Polynomial::variable(RingPtr r, size_t i) {
  auto m = Monomial::variable(*r, i);
  return term(std::move(r), m);
}

Polynomial Polynomial::from_terms(RingPtr r, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  Polynomial p(r);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.emplace_back(std::move(t.first), coerce(r, t.second));
    }
  }
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

bool Polynomial::is_unit() const { return terms_.size() == 1 && terms_[0].first.is_one(); }

Scalar Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return Scalar(0);
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return t.first > x; });
  if (it != terms_.end() && it->first == m) return it->second;
  return Scalar(0);
}

bool Polynomial::is_homogeneous() const {
  for (auto& t : terms_)
    if (t.first.degree() != terms_.front().first.degree()) return false;
  return true;
}

int Polynomial::degree() const {
  if (terms_.empty()) throw std::logic_error("polynomial: degree of zero");
  return terms_.front().first.degree();
}

Polynomial Polynomial::operator-() const {
  Polynomial p(*this);
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  Polynomial p(*this);
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Scalar& c) const {
  if (c.is_zero()) return Polynomial(ring_);
  Polynomial p(*this);
  for (auto& t : p.terms_) {
    t.first = t.first * m;
    t.second *= c;
  }
  return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const RingPtr& r = common_ring(a, b);
  Polynomial p(r);
  p.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first > b.terms_[j].first)) {
      p.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || b.terms_[j].first > a.terms_[i].first) {
      p.terms_.push_back(b.terms_[j++]);
    } else {
      Scalar c = a.terms_[i].second + b.terms_[j].second;
      if (!c.is_zero()) p.terms_.emplace_back(a.terms_[i].first, c);
      ++i, ++j;
    }
  }
  return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const RingPtr& r = common_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(r);
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].first, a.terms_[0].second);
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].first, b.terms_[0].second);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (auto& s : a.terms_)
    for (auto& t : b.terms_) prod.emplace_back(s.first * t.first, s.second * t.second);
  return Polynomial::from_terms(r, std::move(prod));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.ring_ && b.ring_ && a.ring_ != b.ring_ && !a.ring_->same_as(*b.ring_)) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return t.first > x; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, Term(m, coerce(ring_, c)));
  }
}

namespace {

std::string coeff_text(const Scalar& c, uint32_t p, bool& negative) {
  if (p) {
    int64_t r = c.in_field(p).residue();
    negative = r > static_cast<int64_t>(p / 2);
    return std::to_string(negative ? static_cast<int64_t>(p) - r : r);
  }
  mpq_class q = c.to_mpq();
  negative = q < 0;
  if (negative) q = -q;
  return q.get_str();
}

}  // namespace

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  uint32_t p = ring_ ? ring_->field.p : terms_[0].second.characteristic();
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    bool neg = false;
    std::string c = coeff_text(terms_[i].second, p, neg);
    std::string m = terms_[i].first.str(*ring_);
    if (i == 0) {
      if (neg) s += '-';
    } else {
      s += neg ? " - " : " + ";
    }
    if (m == "1") {
      s += c;
    } else {
      if (c != "1") s += c + '*';
      s += m;
    }
  }
  return s;
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op) {
  if (a.ring() && b.ring() && a.ring() != b.ring() && !a.ring()->same_as(*b.ring())) throw DescriptorMismatch();
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::mul: return a * b;
    case PolyOp::scale:
      if (!b.is_constant()) throw std::invalid_argument("poly_arith: scale factor must be constant");
      return a.scaled(b.constant_term());
  }
  return a;
}

ParseError::ParseError(const std::string& msg, int line_, int col_)
    : std::runtime_error(msg), line(line_), column(col_) {}

namespace {

struct PolyParser {
  const RingPtr& r;
  const std::string& s;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 0, static_cast<int>(i) + 1); }
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool at_factor_start() {
    skip();
    if (i >= s.size()) return false;
    char c = s[i];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }
  int parse_int() {
    skip();
    size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) fail("expected integer");
    return std::stoi(s.substr(st, i - st));
  }
  Polynomial power(const Polynomial& b, int e) {
    Polynomial acc = Polynomial::constant(r, Scalar(1));
    for (int k = 0; k < e; ++k) acc = acc * b;
    return acc;
  }
  Polynomial factor() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    Polynomial base;
    if (s[i] == '(') {
      ++i;
      base = expr();
      skip();
      if (i >= s.size() || s[i] != ')') fail("expected ')'");
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t st = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '/') {
        ++i;
        size_t dst = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (dst == i) fail("expected denominator");
      }
      try {
        base = Polynomial::constant(r, r->field.parse(s.substr(st, i - st)));
      } catch (const std::exception& e) {
        fail(e.what());
      }
    } else {
      size_t best = 0, which = 0;
      for (size_t v = 0; v < r->nvars(); ++v) {
        const std::string& name = r->vars[v];
        if (name.size() > best && s.compare(i, name.size(), name) == 0) best = name.size(), which = v;
      }
      if (!best) fail("unknown variable");
      i += best;
      base = Polynomial::variable(r, which);
    }
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      base = power(base, parse_int());
    }
    return base;
  }
  Polynomial term() {
    Polynomial t = factor();
    for (;;) {
      skip();
      if (i < s.size() && s[i] == '*') {
        ++i;
        t = t * factor();
      } else if (at_factor_start()) {
        t = t * factor();
      } else {
        return t;
      }
    }
  }
  Polynomial expr() {
    skip();
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    Polynomial acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        bool minus = s[i++] == '-';
        Polynomial t = term();
        acc = minus ? acc - t : acc + t;
      } else {
        return acc;
      }
    }
  }
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& r, const std::string& text) {
  PolyParser p{r, text};
  Polynomial out = p.expr();
  p.skip();
  if (p.i != text.size()) p.fail("unexpected character");
  return Polynomial(r) + out;
}

}  // namespace sk
