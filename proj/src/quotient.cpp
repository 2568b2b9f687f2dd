#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "sk/resolution.hpp"

namespace sk {

RingSpec RingSpec::make(RingPtr r, std::vector<Polynomial> gens, bool regular_sequence) {
  RingSpec s;
  s.ring = std::move(r);
  s.regular_sequence = regular_sequence;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw HomogeneityError("ideal generator is not homogeneous: " + g.str());
    if (g.degree() <= 0) throw std::invalid_argument("ideal generator of degree 0: the quotient is zero");
    s.gens.push_back(g);
  }
  s.monomial = std::all_of(s.gens.begin(), s.gens.end(), [](const Polynomial& g) { return g.size() == 1; });
  if (s.monomial)
    for (auto& g : s.gens) g = Polynomial::term(s.ring, g.leading_monomial());
  return s;
}

int RingSpec::max_generator_degree() const {
  int m = 0;
  for (auto& g : gens) m = std::max(m, g.degree());
  return m;
}

int RingSpec::default_ideg_bound(int hdeg_bound) const {
  int m = std::max(1, max_generator_degree());
  return hdeg_bound * m + m;
}

std::vector<Monomial> RingSpec::monomial_generators() const {
  if (!monomial) throw std::invalid_argument("ideal is not monomial");
  std::vector<Monomial> out;
  for (auto& g : gens) out.push_back(g.leading_monomial());
  return out;
}

namespace {

class MonomialQuotient final : public CoefficientRing {
 public:
  explicit MonomialQuotient(const RingSpec& s) : CoefficientRing(s.ring), gens_(s.monomial_generators()) {}
  bool is_polynomial_ring() const override { return gens_.empty(); }
  Polynomial normal_form(const Polynomial& p) const override {
    std::vector<Term> keep;
    for (auto& t : p.terms())
      if (standard(t.first)) keep.push_back(t);
    if (keep.size() == p.size()) return p;
    return Polynomial::from_terms(ring(), std::move(keep));
  }

 protected:
  std::vector<Monomial> compute_basis(int d) const override {
    std::vector<Monomial> out;
    for (auto& m : monomials_of_degree(*ring(), d))
      if (standard(m)) out.push_back(m);
    return out;
  }

 private:
  bool standard(const Monomial& m) const {
    for (auto& g : gens_)
      if (g.divides(m)) return false;
    return true;
  }
  std::vector<Monomial> gens_;
};

// Per degree: a semi-echelon basis of I_d with leading monomials as pivots; every non-standard
// monomial is stored with its normal form.
class GeneralQuotient final : public CoefficientRing {
 public:
  explicit GeneralQuotient(const RingSpec& s) : CoefficientRing(s.ring), gens_(s.gens) {}
  bool is_polynomial_ring() const override { return false; }

  Polynomial normal_form(const Polynomial& p) const override {
    std::vector<Term> out;
    bool changed = false;
    for (auto& [m, c] : p.terms()) {
      const Deg& dd = deg(m.degree());
      auto it = dd.reduced.find(m);
      if (it == dd.reduced.end()) {
        out.emplace_back(m, c);
        continue;
      }
      changed = true;
      for (auto& [m2, c2] : it->second) out.emplace_back(m2, c * c2);
    }
    if (!changed) return p;
    return Polynomial::from_terms(ring(), std::move(out));
  }

 protected:
  std::vector<Monomial> compute_basis(int d) const override { return deg(d).standard; }

 private:
  struct Deg {
    std::vector<Monomial> standard;
    std::unordered_map<Monomial, std::vector<Term>, MonomialHash> reduced;
  };

  const Deg& deg(int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return *it->second;
    auto dd = std::make_unique<Deg>();
    auto monos = monomials_of_degree(*ring(), d);
    std::unordered_map<Monomial, int, MonomialHash> row;
    for (size_t i = 0; i < monos.size(); ++i) row.emplace(monos[i], static_cast<int>(i));
    Echelon ech(monos.size(), ring()->field, false);
    for (auto& f : gens_) {
      if (f.degree() > d) continue;
      for (auto& m : monomials_of_degree(*ring(), d - f.degree())) {
        if (ech.rank() == monos.size()) break;
        SparseVec v;
        for (auto& [fm, c] : f.terms()) v.emplace_back(row.at(fm * m), c);
        std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
        ech.push(v);
      }
    }
    for (size_t i = 0; i < monos.size(); ++i) {
      SparseVec r = ech.reduce({{static_cast<int>(i), Scalar(1)}});
      if (r.size() == 1 && r[0].first == static_cast<int>(i)) {
        dd->standard.push_back(monos[i]);
        continue;
      }
      std::vector<Term> nf;
      for (auto& [j, c] : r) nf.emplace_back(monos[j], c);
      dd->reduced.emplace(monos[i], std::move(nf));
    }
    auto& ref = *dd;
    cache_.emplace(d, std::move(dd));
    return ref;
  }

  std::vector<Polynomial> gens_;
  mutable std::mutex mu_;
  mutable std::unordered_map<int, std::unique_ptr<Deg>> cache_;
};

}  // namespace

CoeffPtr quotient_ring(const RingSpec& spec) {
  if (spec.gens.empty()) return polynomial_coefficients(spec.ring);
  if (spec.monomial) return std::make_shared<MonomialQuotient>(spec);
  return std::make_shared<GeneralQuotient>(spec);
}

}  // namespace sk
