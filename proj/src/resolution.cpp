#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "sk/resolution.hpp"

namespace sk {

namespace {

int shuffle_sign(unsigned s, unsigned t) {
  int inv = 0;
  for (unsigned b = 0; b < 32; ++b)
    if (t >> b & 1) inv += __builtin_popcount(s >> (b + 1));
  return inv % 2 ? -1 : 1;
}

std::string subset_label(unsigned s, size_t n) {
  if (!s) return "1";
  std::string out = "e";
  bool first = true;
  for (size_t i = 0; i < n; ++i)
    if (s >> i & 1) {
      if (n >= 10 && !first) out += ",";
      out += std::to_string(i + 1);
      first = false;
    }
  return out;
}

std::string resolution_label(int i, int k) { return "e" + std::to_string(i) + "_" + std::to_string(k); }

// Exterior-type complex on subsets; the k-th element of S (from 1) enters d(e_S) with sign first_sign * (-1)^(k-1).
// coefficient(S, i) is the entry of e_S -> e_{S\i}, product(S, T) of e_S e_T.
DgAlgebra subset_algebra(const RingPtr& r, size_t n, const std::function<int(unsigned)>& degree,
                         const std::function<Polynomial(unsigned, size_t)>& coefficient,
                         const std::function<Polynomial(unsigned, unsigned)>& product, int first_sign) {
  if (n > 24) throw std::invalid_argument("subset complex: too many generators");
  DgAlgebra a{ChainComplex(polynomial_coefficients(r)), {}, {}};
  std::vector<int> idx(1u << n);
  for (int k = 0; k <= static_cast<int>(n); ++k)
    for (unsigned s = 0; s < (1u << n); ++s)
      if (__builtin_popcount(s) == k) {
        idx[s] = a.complex.add_generator({subset_label(s, n), k, degree(s), {}});
        a.subsets.push_back(s);
      }
  for (unsigned s = 1; s < (1u << n); ++s) {
    Element d;
    int sign = first_sign;
    for (size_t i = 0; i < n; ++i)
      if (s >> i & 1) {
        add_term(d, idx[s & ~(1u << i)], coefficient(s, i).scaled(Scalar(sign)));
        sign = -sign;
      }
    a.complex.set_differential(idx[s], std::move(d));
  }
  a.product.unit = idx[0];
  for (unsigned s = 0; s < (1u << n); ++s)
    for (unsigned t = 0; t < (1u << n); ++t)
      if (!(s & t)) {
        Polynomial c = product(s, t).scaled(Scalar(shuffle_sign(s, t)));
        if (!c.is_zero()) a.product.table[{idx[s], idx[t]}] = {{idx[s | t], c}};
      }
  return a;
}

}  // namespace

Element DgProduct::mul(int a, int b) const {
  auto it = table.find({a, b});
  return it == table.end() ? Element{} : it->second;
}

Element DgProduct::mul(const Element& x, const Element& y, const CoefficientRing& R) const {
  Element out;
  for (auto& [a, p] : x)
    for (auto& [b, q] : y) {
      auto it = table.find({a, b});
      if (it != table.end()) add_scaled(out, it->second, p * q);
    }
  return element_normal_form(out, R);
}

std::optional<std::string> check_dg_algebra(const ChainComplex& c, const DgProduct& prod) {
  const CoefficientRing& R = *c.coeffs();
  auto one = Polynomial::constant(c.ring(), Scalar(1));
  for (size_t a = 0; a < c.size(); ++a) {
    Element ea{{static_cast<int>(a), one}};
    if (prod.mul(prod.unit, a) != ea || prod.mul(a, prod.unit) != ea) return "not unital at " + c.gen(a).label;
    for (size_t b = 0; b < c.size(); ++b) {
      int ha = c.gen(a).hdeg, hb = c.gen(b).hdeg;
      Element ab = prod.mul(a, b);
      Element ba = scaled(prod.mul(b, a), one.scaled(Scalar(ha * hb % 2 ? -1 : 1)));
      if (ab != ba) return "not graded-commutative at (" + c.gen(a).label + ", " + c.gen(b).label + ")";
      Element lhs = c.apply_d(ab);
      Element rhs = prod.mul(c.d(a), Element{{static_cast<int>(b), one}}, R);
      add_scaled(rhs, prod.mul(ea, c.d(b), R), one.scaled(Scalar(ha % 2 ? -1 : 1)));
      rhs = element_normal_form(rhs, R);
      if (lhs != rhs) return "Leibniz rule fails at (" + c.gen(a).label + ", " + c.gen(b).label + ")";
    }
  }
  return std::nullopt;
}

DgAlgebra koszul_complex(const RingPtr& r, const std::vector<Polynomial>& fs) {
  for (auto& f : fs)
    if (!f.is_homogeneous()) throw HomogeneityError("koszul_complex: inhomogeneous element " + f.str());
  return subset_algebra(
      r, fs.size(),
      [&](unsigned s) {
        int d = 0;
        for (size_t i = 0; i < fs.size(); ++i)
          if (s >> i & 1) d += fs[i].degree();
        return d;
      },
      [&](unsigned, size_t i) { return fs[i]; }, [&](unsigned, unsigned) { return Polynomial::constant(r, Scalar(1)); },
      1);
}

Dominance dominance_certificate(const RingPtr& r, const std::vector<Monomial>& ms) {
  Dominance d;
  d.dominant = true;
  for (size_t k = 0; k < ms.size(); ++k) {
    std::pair<int, int> w{-1, 0};
    for (size_t v = 0; v < r->nvars() && w.first < 0; ++v) {
      int a = ms[k].exps()[v];
      if (a == 0) continue;
      bool unique = true;
      for (size_t l = 0; l < ms.size() && unique; ++l)
        if (l != k && ms[l].exps()[v] >= a) unique = false;
      if (unique) w = {static_cast<int>(v), a};
    }
    if (w.first < 0) d.dominant = false;
    d.witness.push_back(w);
  }
  return d;
}

TaylorResult taylor_resolution(const RingPtr& r, const std::vector<Monomial>& ms) {
  for (size_t i = 0; i < ms.size(); ++i)
    for (size_t j = 0; j < ms.size(); ++j)
      if (i != j && ms[i].divides(ms[j]))
        throw std::invalid_argument("taylor_resolution: generating set is not minimal");
  size_t n = ms.size();
  if (n > 24) throw std::invalid_argument("taylor_resolution: too many generators");
  std::vector<Monomial> lc(1u << n, Monomial::one(*r));
  for (unsigned s = 1; s < (1u << n); ++s) {
    int low = __builtin_ctz(s);
    lc[s] = lcm(*r, lc[s & (s - 1)], ms[low]);
  }
  TaylorResult t{subset_algebra(
                     r, n, [&](unsigned s) { return lc[s].degree(); },
                     [&](unsigned s, size_t i) { return Polynomial::term(r, lc[s] / lc[s & ~(1u << i)]); },
                     [&](unsigned s, unsigned u) { return Polynomial::term(r, (lc[s] * lc[u]) / lc[s | u]); }, -1),
                 dominance_certificate(r, ms)};
  return t;
}

namespace {

// Degreewise minimal generators: at each internal degree, candidates are added when they are
// independent of the image of the generators already present.
class SyzygyEngine {
 public:
  SyzygyEngine(ChainComplex& c, int D) : c_(c), D_(D), R_(*c.coeffs()) {}

  // Adds generators of homological degree i spanning the given candidates modulo existing images;
  // returns true when a generator was added in the top degree D.
  using Candidates = std::function<std::vector<SparseVec>(int delta, const GradedSlice& target)>;
  bool extend(int i, int lo, const Candidates& cand) {
    bool top = false;
    int count = c_.rank(i);
    for (int delta = lo; delta <= D_; ++delta) {
      GradedSlice s = expand_in_degree(c_.differential_matrix(i), delta, R_);
      if (s.nrows() == 0) continue;
      std::vector<SparseVec> cv = cand(delta, s);
      if (cv.empty()) continue;
      Echelon ech(s.nrows(), c_.field(), false);
      for (auto& col : s.columns) ech.push(col);
      const std::vector<int> targets = c_.in_degree(i - 1);
      for (auto& v : cv) {
        if (!ech.push(v)) continue;
        Element d;
        for (auto& [row, coef] : v) {
          const SliceLabel& lab = s.row_labels[row];
          add_term(d, targets[lab.gen], Polynomial::term(c_.ring(), lab.mono, coef));
        }
        int g = c_.add_generator({resolution_label(i, ++count), i, delta, {}});
        c_.set_differential(g, std::move(d));
        if (delta == D_) top = true;
      }
    }
    return top;
  }

  // Kernel of d_{i-1} in degree delta, in the row coordinates of `target`.
  std::vector<SparseVec> kernel(int i, int delta) {
    return kernel_in_degree(expand_in_degree(c_.differential_matrix(i - 1), delta, R_), c_.field());
  }

  int min_ideg(int i) const {
    int lo = D_ + 1;
    for (int g : c_.in_degree(i)) lo = std::min(lo, c_.gen(g).ideg);
    return lo;
  }

 private:
  ChainComplex& c_;
  int D_;
  const CoefficientRing& R_;
};

ChainComplex resolve_graded(CoeffPtr R, const std::vector<int>& target_degrees, const PolyMatrix& pres, int N,
                            int D) {
  ChainComplex c(R);
  for (size_t k = 0; k < target_degrees.size(); ++k)
    c.add_generator({resolution_label(0, static_cast<int>(k) + 1), 0, target_degrees[k], {}});
  c.bounds = {N, D, false};
  SyzygyEngine eng(c, D);
  if (N < 1) return c;
  bool top = eng.extend(1, eng.min_ideg(0), [&](int delta, const GradedSlice& target) {
    GradedSlice p = expand_in_degree(pres, delta, *R);
    if (p.nrows() != target.nrows()) throw std::logic_error("syzygy engine: presentation mismatch");
    return p.columns;
  });
  for (int i = 2; i <= N + 1; ++i) {
    if (c.rank(i - 1) == 0) break;
    if (i == N + 1) {
      // Probe only: any syzygy of d_N within D means the resolution continues.
      for (int delta = eng.min_ideg(i - 1); delta <= D && !c.bounds.truncated; ++delta)
        if (!eng.kernel(i, delta).empty()) c.bounds.truncated = true;
      break;
    }
    top |= eng.extend(i, eng.min_ideg(i - 1), [&](int delta, const GradedSlice&) { return eng.kernel(i, delta); });
  }
  if (top) c.bounds.truncated = true;
  return c;
}

// Multigraded resolution of Q/I for monomial I: Betti multidegrees lie in the lcm lattice, and each
// multidegree slice is a scalar matrix on the generators whose multidegree divides it.
ChainComplex resolve_monomial(const RingSpec& spec, int N, int D) {
  const RingPtr& r = spec.ring;
  auto ms = spec.monomial_generators();
  std::unordered_set<Monomial, MonomialHash> lat{Monomial::one(*r)};
  for (auto& m : ms) {
    std::vector<Monomial> add;
    for (auto& l : lat) add.push_back(lcm(*r, l, m));
    lat.insert(add.begin(), add.end());
  }
  std::vector<Monomial> alphas;
  bool dropped = false;
  for (auto& l : lat) {
    if (l.degree() <= D)
      alphas.push_back(l);
    else
      dropped = true;
  }
  std::sort(alphas.begin(), alphas.end(), [](const Monomial& a, const Monomial& b) { return a < b; });

  ChainComplex c(polynomial_coefficients(r));
  c.bounds = {N, D, false};
  Generator g0{resolution_label(0, 1), 0, 0, Monomial::one(*r).exps()};
  c.add_generator(g0);
  Field f = r->field;
  auto divides = [&](const Monomial::Exps& e, const Monomial& a) {
    for (size_t v = 0; v < e.size(); ++v)
      if (e[v] > a.exps()[v]) return false;
    return true;
  };
  // Scalar matrix of d_i at alpha: columns = gens of F_i below alpha, rows = gens of F_{i-1} below alpha.
  auto below = [&](int i, const Monomial& a) {
    std::vector<int> out;
    for (int g : c.in_degree(i))
      if (divides(c.gen(g).mdeg, a)) out.push_back(g);
    return out;
  };
  auto column = [&](int g, const std::vector<int>& rows) {
    SparseVec v;
    for (size_t k = 0; k < rows.size(); ++k) {
      auto it = c.d(g).find(rows[k]);
      if (it != c.d(g).end()) v.emplace_back(static_cast<int>(k), it->second.terms().front().second);
    }
    return v;
  };
  for (int i = 1; i <= N + 1; ++i) {
    if (c.rank(i - 1) == 0) break;
    int count = 0;
    for (auto& a : alphas) {
      std::vector<int> rows = below(i - 1, a);
      if (rows.empty()) continue;
      std::vector<SparseVec> cand;
      if (i == 1) {
        bool in_ideal = std::any_of(ms.begin(), ms.end(), [&](const Monomial& m) { return m.divides(a); });
        if (in_ideal) cand.push_back({{0, Scalar(1)}});
      } else {
        std::vector<int> rows2 = below(i - 2, a);
        Echelon k(rows2.size(), f, true);
        for (int g : rows) k.push(column(g, rows2));
        cand = k.kernel();
      }
      if (cand.empty()) continue;
      if (i == N + 1) {
        Echelon img(rows.size(), f, false);
        for (int g : below(i, a)) img.push(column(g, rows));
        for (auto& v : cand)
          if (img.push(v)) c.bounds.truncated = true;
        continue;
      }
      Echelon img(rows.size(), f, false);
      for (int g : below(i, a)) img.push(column(g, rows));
      for (auto& v : cand) {
        if (!img.push(v)) continue;
        Element d;
        for (auto& [k, coef] : v) {
          Monomial q = a / Monomial(*r, c.gen(rows[k]).mdeg);
          add_term(d, rows[k], Polynomial::term(r, q, coef));
        }
        int g = c.add_generator({resolution_label(i, ++count), i, a.degree(), a.exps()});
        c.set_differential(g, std::move(d));
      }
    }
    if (i == N + 1) break;
  }
  if (dropped) c.bounds.truncated = true;
  return c;
}

}  // namespace

ChainComplex minimal_free_resolution(const RingSpec& spec, int N, int D) {
  if (spec.monomial && !spec.gens.empty()) return resolve_monomial(spec, N, D);
  PolyMatrix pres;
  pres.target_degrees = {0};
  for (auto& g : spec.gens) {
    pres.source_degrees.push_back(g.degree());
    pres.columns.push_back({{0, g}});
  }
  return resolve_graded(polynomial_coefficients(spec.ring), {0}, pres, N, D);
}

ChainComplex resolve_over_quotient(const RingSpec& spec, int N, int D, const std::vector<int>& target_degrees,
                                   const PolyMatrix& presentation) {
  CoeffPtr R = quotient_ring(spec);
  if (target_degrees.empty()) {
    PolyMatrix pres;
    pres.target_degrees = {0};
    for (size_t v = 0; v < spec.ring->nvars(); ++v) {
      Polynomial x = Polynomial::variable(spec.ring, v);
      pres.source_degrees.push_back(x.degree());
      pres.columns.push_back({{0, x}});
    }
    return resolve_graded(R, {0}, pres, N, D);
  }
  PolyMatrix pres = presentation;
  pres.target_degrees = target_degrees;
  for (auto& col : pres.columns)
    for (auto& e : col) e.second = R->normal_form(e.second);
  return resolve_graded(R, target_degrees, pres, N, D);
}

BettiTable BettiTable::of(const ChainComplex& c) {
  BettiTable b;
  for (auto& g : c.gens()) b.rank[{g.hdeg, g.ideg}]++;
  b.bounds = c.bounds;
  return b;
}

int BettiTable::at(int i, int j) const {
  auto it = rank.find({i, j});
  return it == rank.end() ? 0 : it->second;
}

int BettiTable::max_i() const {
  int m = -1;
  for (auto& [k, v] : rank) m = std::max(m, k.first);
  return m;
}

std::vector<int> BettiTable::totals() const {
  std::vector<int> t(max_i() + 1, 0);
  for (auto& [k, v] : rank) t[k.first] += v;
  return t;
}

std::string BettiTable::csv() const {
  int lo = 0, hi = 0;
  bool first = true;
  for (auto& [k, v] : rank) {
    lo = first ? k.second : std::min(lo, k.second);
    hi = first ? k.second : std::max(hi, k.second);
    first = false;
  }
  return table_csv(rank, std::max(0, max_i()), lo, hi);
}

bool BettiTable::is_symmetric(int pd, int top_degree) const {
  for (auto& [k, v] : rank)
    if (at(pd - k.first, top_degree - k.second) != v) return false;
  return true;
}

std::vector<long> serre_bound(const ChainComplex& A, int N) {
  int n = static_cast<int>(A.ring()->nvars());
  std::vector<long> num(N + 1, 0), den(N + 1, 0), q(N + 1, 0);
  long binom = 1;
  for (int k = 0; k <= std::min(n, N); ++k) {
    num[k] = binom;
    binom = binom * (n - k) / (k + 1);
  }
  den[0] = 1;
  for (int i = 1; i <= A.max_hdeg(); ++i)
    if (i + 1 <= N) den[i + 1] -= A.rank(i);
  for (int k = 0; k <= N; ++k) {
    long v = num[k];
    for (int j = 1; j <= k; ++j) v -= den[j] * q[k - j];
    q[k] = v;
  }
  return q;
}

std::string dump_resolution(const ChainComplex& c) {
  std::ostringstream os;
  os << "ring " << c.field().name() << " [";
  for (size_t v = 0; v < c.ring()->nvars(); ++v) os << (v ? "," : "") << c.ring()->vars[v];
  os << "]\n";
  os << "bounds hdeg=" << c.bounds.hdeg << " ideg=" << c.bounds.ideg << " truncated=" << (c.bounds.truncated ? 1 : 0)
     << "\n";
  for (auto& g : c.gens()) os << "generator " << g.label << " " << g.hdeg << " " << g.ideg << "\n";
  for (size_t g = 0; g < c.size(); ++g)
    if (c.gen(g).hdeg > 0) os << "d " << c.gen(g).label << " = " << c.element_str(c.d(g)) << "\n";
  return os.str();
}

}  // namespace sk
