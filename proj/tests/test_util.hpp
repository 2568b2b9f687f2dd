#pragma once

#include <random>
#include <string>
#include <vector>

#include "sk/linalg.hpp"
#include "sk/poly.hpp"
#include "sk/resolution.hpp"

namespace sk::testing {

inline RingPtr ring_xyz(Field f = {}) { return make_ring({"x", "y", "z"}, f); }

inline Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

inline Polynomial random_homogeneous(const RingPtr& r, int deg, std::mt19937& rng, int max_terms = 3) {
  Polynomial p(r);
  if (deg < 0) return p;
  auto monos = monomials_of_degree(*r, deg);
  std::uniform_int_distribution<size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> nterms(0, max_terms);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) p.add_term(monos[pick(rng)], r->field(coef(rng)));
  return p;
}

inline std::vector<Monomial> monos(const RingPtr& r, const std::vector<std::string>& s) {
  std::vector<Monomial> out;
  for (auto& x : s) out.push_back(P(r, x).leading_monomial());
  return out;
}

inline RingSpec spec_of(const RingPtr& r, const std::vector<std::string>& s, bool regular = false) {
  std::vector<Polynomial> g;
  for (auto& x : s) g.push_back(P(r, x));
  return RingSpec::make(r, g, regular);
}

inline const std::vector<std::string> kBurke = {"x^2", "y*z", "x*y+z^2", "x*z", "y^2"};

inline std::vector<Scalar> densify(const SparseVec& v, size_t n) {
  std::vector<Scalar> out(n, Scalar(0));
  for (auto& [i, c] : v) out[i] = c;
  return out;
}

}  // namespace sk::testing
