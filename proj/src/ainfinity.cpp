#include "sk/ainfinity.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sk {

namespace {

Polynomial one_of(const RingPtr& r) { return Polynomial::constant(r, Scalar(1)); }

Polynomial sign_poly(const RingPtr& r, int parity) { return Polynomial::constant(r, Scalar(parity % 2 ? -1 : 1)); }

int hsum(const ChainComplex& c, const Tuple& t, size_t from, size_t to) {
  int s = 0;
  for (size_t i = from; i < to; ++i) s += c.gen(t[i]).hdeg;
  return s;
}

// Expands f over all generator tuples of the tensor product of xs.
Element expand(const std::vector<Element>& xs, const std::function<Element(const Tuple&)>& f) {
  Element out;
  Tuple cur(xs.size());
  std::function<void(size_t, const Polynomial*)> rec = [&](size_t i, const Polynomial* coef) {
    if (i == xs.size()) {
      Element v = f(cur);
      if (!v.empty()) add_scaled(out, v, *coef);
      return;
    }
    for (auto& [g, p] : xs[i]) {
      cur[i] = g;
      Polynomial c = coef ? *coef * p : p;
      rec(i + 1, &c);
    }
  };
  if (xs.empty()) return out;
  rec(0, nullptr);
  return out;
}

Element gen_element(const RingPtr& r, int g) { return Element{{g, one_of(r)}}; }

// m_{r+1+t}(a_1..a_r, x, a_{r+s+1}..a_n) for an element x.
template <class Eval>
Element with_slot(const Tuple& a, size_t r, size_t s, const Element& x, const Eval& eval) {
  Element out;
  Tuple t(a.begin(), a.begin() + r);
  t.push_back(-1);
  t.insert(t.end(), a.begin() + r + s, a.end());
  for (auto& [g, p] : x) {
    t[r] = g;
    Element v = eval(t);
    if (!v.empty()) add_scaled(out, v, p);
  }
  return out;
}

}  // namespace

std::vector<int> AinfStructure::bar_basis() const {
  std::vector<int> out;
  for (size_t g = 0; g < A.size(); ++g)
    if (static_cast<int>(g) != unit) out.push_back(static_cast<int>(g));
  return out;
}

int AinfStructure::tuple_hdeg(const Tuple& t) const { return hsum(A, t, 0, t.size()); }

int AinfStructure::tuple_ideg(const Tuple& t) const {
  int s = 0;
  for (int g : t) s += A.gen(g).ideg;
  return s;
}

Element AinfStructure::m(const Tuple& t) const {
  if (t.empty()) throw std::invalid_argument("m_0 is not defined");
  if (t.size() == 1) return A.d(t[0]);
  if (unit >= 0) {
    bool has_unit = std::find(t.begin(), t.end(), unit) != t.end();
    if (has_unit) {
      if (t.size() > 2) return {};
      return gen_element(A.ring(), t[0] == unit ? t[1] : t[0]);
    }
  }
  auto it = ops.find(t);
  return it == ops.end() ? Element{} : it->second;
}

Element AinfStructure::m(const std::vector<Element>& xs) const {
  return expand(xs, [&](const Tuple& t) { return m(t); });
}

std::string AinfStructure::tuple_str(const Tuple& t) const {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + A.gen(t[i]).label;
  return s + ")";
}

Element AinfModuleStructure::m(const Tuple& as, int g) const {
  if (as.empty()) return G.d(g);
  int u = alg->unit;
  if (u >= 0 && std::find(as.begin(), as.end(), u) != as.end()) {
    if (as.size() > 1) return {};
    return gen_element(G.ring(), g);
  }
  Tuple key = as;
  key.push_back(g);
  auto it = ops.find(key);
  return it == ops.end() ? Element{} : it->second;
}

Element AinfModuleStructure::m(const std::vector<Element>& as, const Element& g) const {
  std::vector<Element> xs = as;
  xs.push_back(g);
  return expand(xs, [&](const Tuple& t) { return m(Tuple(t.begin(), t.end() - 1), t.back()); });
}

Element stasheff_terms(const AinfStructure& s, const Tuple& a, bool skip_top) {
  const RingPtr& R = s.A.ring();
  size_t n = a.size();
  Element out;
  auto eval = [&](const Tuple& t) { return s.m(t); };
  for (size_t sz = 1; sz <= n; ++sz) {
    if (sz == n && skip_top) continue;
    for (size_t r = 0; r + sz <= n; ++r) {
      size_t t = n - r - sz;
      Element inner = s.m(Tuple(a.begin() + r, a.begin() + r + sz));
      if (inner.empty()) continue;
      int parity = static_cast<int>(r + sz * t) + static_cast<int>(sz % 2) * hsum(s.A, a, 0, r);
      Element v = sz == n ? s.A.apply_d(inner) : with_slot(a, r, sz, inner, eval);
      add_scaled(out, v, sign_poly(R, parity));
    }
  }
  return out;
}

Element module_stasheff_terms(const AinfModuleStructure& s, const Tuple& as, int g, bool skip_top) {
  const AinfStructure& A = *s.alg;
  const RingPtr& R = s.G.ring();
  size_t n = as.size() + 1;
  Element out;
  auto eval_g = [&](const Tuple& t) { return s.m(t, g); };
  // Inner algebra operation on a window of the algebra inputs.
  for (size_t sz = 1; sz + 1 <= n; ++sz)
    for (size_t r = 0; r + sz <= as.size(); ++r) {
      size_t t = n - r - sz;
      Element inner = A.m(Tuple(as.begin() + r, as.begin() + r + sz));
      if (inner.empty()) continue;
      int parity = static_cast<int>(r + sz * t) + static_cast<int>(sz % 2) * hsum(A.A, as, 0, r);
      add_scaled(out, with_slot(as, r, sz, inner, eval_g), sign_poly(R, parity));
    }
  // Inner module operation on the tail a_{r+1}..a_{n-1}, g.
  for (size_t r = 0; r < n; ++r) {
    size_t sz = n - r;
    if (r == 0 && skip_top) continue;
    Element inner = s.m(Tuple(as.begin() + r, as.end()), g);
    if (inner.empty()) continue;
    int parity = static_cast<int>(r) + static_cast<int>(sz % 2) * hsum(A.A, as, 0, r);
    Element v;
    Tuple prefix(as.begin(), as.begin() + r);
    if (r == 0)
      v = s.G.apply_d(inner);
    else
      for (auto& [h, p] : inner) add_scaled(v, s.m(prefix, h), p);
    add_scaled(out, v, sign_poly(R, parity));
  }
  return out;
}

std::vector<Tuple> enumerate_tuples(const ChainComplex& c, const std::vector<int>& alphabet, int n, int max_hdeg,
                                    int max_ideg) {
  std::vector<Tuple> out;
  Tuple cur;
  std::function<void(int, int)> rec = [&](int h, int j) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int g : alphabet) {
      int h2 = h + c.gen(g).hdeg, j2 = j + c.gen(g).ideg;
      if (h2 > max_hdeg || (max_ideg >= 0 && j2 > max_ideg)) continue;
      cur.push_back(g);
      rec(h2, j2);
      cur.pop_back();
    }
  };
  if (n > 0) rec(0, 0);
  return out;
}

namespace {

int find_unit(const ChainComplex& A) {
  if (A.rank(0) != 1 || A.gen(A.in_degree(0)[0]).ideg != 0)
    throw std::invalid_argument("A-infinity transfer: A_0 must be Q in internal degree 0");
  return A.in_degree(0)[0];
}

void sort_by_hdeg(std::vector<Tuple>& ts, const std::function<int(const Tuple&)>& h) {
  std::stable_sort(ts.begin(), ts.end(), [&](const Tuple& x, const Tuple& y) { return h(x) < h(y); });
}

// Lifts m_n for n in [from, arity] generator tuple by generator tuple.
void lift_algebra_ops(AinfStructure& s, int from, int to, BoundarySolver& solver) {
  auto bar = s.bar_basis();
  int pd = s.pd();
  for (int n = from; n <= to; ++n) {
    auto tuples = enumerate_tuples(s.A, bar, n, pd + 2 - n, s.ideg_bound);
    sort_by_hdeg(tuples, [&](const Tuple& t) { return s.tuple_hdeg(t); });
    for (auto& t : tuples) {
      Element rhs = scaled(stasheff_terms(s, t, true), sign_poly(s.A.ring(), 1));
      int k = s.tuple_hdeg(t) + n - 2;
      auto y = solver.solve(k, s.tuple_ideg(t), rhs);
      if (!y)
        throw TransferError("A-infinity transfer: no lift for m_" + std::to_string(n) + s.tuple_str(t) +
                            " at bidegree (" + std::to_string(k) + "," + std::to_string(s.tuple_ideg(t)) + ")");
      if (!y->empty()) s.ops[t] = std::move(*y);
    }
  }
}

}  // namespace

AinfStructure transfer_ainf_algebra(const ChainComplex& A, int arity, int ideg_bound, const DgProduct* seed) {
  AinfStructure s;
  s.A = A;
  s.unit = find_unit(A);
  s.arity = arity;
  s.ideg_bound = ideg_bound;
  BoundarySolver solver(s.A);
  int from = 2;
  if (seed) {
    if (seed->unit != s.unit) throw std::invalid_argument("A-infinity transfer: seed product has a different unit");
    for (auto& [key, v] : seed->table)
      if (key.first != s.unit && key.second != s.unit && !v.empty()) s.ops[{key.first, key.second}] = v;
    from = 3;
  }
  lift_algebra_ops(s, from, s.arity, solver);
  auto rep = verify_stasheff(s);
  if (!rep.ok) throw TransferError("A-infinity transfer produced a structure failing " + rep.violation);
  return s;
}

AinfModuleStructure transfer_ainf_module(const AinfStructure& alg, const ChainComplex& G, int arity, int ideg_bound) {
  AinfModuleStructure s;
  s.alg = std::make_shared<const AinfStructure>(alg);
  s.G = G;
  s.arity = arity;
  s.ideg_bound = ideg_bound;
  BoundarySolver solver(s.G);
  auto bar = alg.bar_basis();
  int pdG = G.max_hdeg();
  for (int n = 2; n <= arity; ++n) {
    struct Job {
      Tuple as;
      int g, h, j;
    };
    std::vector<Job> jobs;
    for (size_t g = 0; g < G.size(); ++g) {
      int hg = G.gen(g).hdeg, jg = G.gen(g).ideg;
      int budget = pdG + 2 - n - hg;
      if (budget < 0) continue;
      for (auto& t : enumerate_tuples(alg.A, bar, n - 1, budget, ideg_bound < 0 ? -1 : ideg_bound - jg))
        jobs.push_back({t, static_cast<int>(g), alg.tuple_hdeg(t) + hg, alg.tuple_ideg(t) + jg});
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& x, const Job& y) { return x.h < y.h; });
    for (auto& job : jobs) {
      Element rhs = scaled(module_stasheff_terms(s, job.as, job.g, true), sign_poly(G.ring(), 1));
      int k = job.h + n - 2;
      auto y = solver.solve(k, job.j, rhs);
      if (!y)
        throw TransferError("module transfer: no lift for m_" + std::to_string(n) + " on " + alg.tuple_str(job.as) +
                            " (x) " + G.gen(job.g).label);
      if (!y->empty()) {
        Tuple key = job.as;
        key.push_back(job.g);
        s.ops[key] = std::move(*y);
      }
    }
  }
  auto rep = verify_stasheff(s);
  if (!rep.ok) throw TransferError("module transfer produced a structure failing " + rep.violation);
  return s;
}

StasheffReport verify_stasheff(const AinfStructure& s, int arity) {
  StasheffReport rep;
  if (arity < 0) arity = s.arity;
  auto v = verify_complex(s.A);
  if (!v.ok) {
    rep.ok = false;
    rep.arity = 1;
    rep.violation = "identity 1: " + v.violation;
    return rep;
  }
  std::vector<int> alphabet = s.bar_basis();
  std::vector<int> with_unit = alphabet;
  if (s.unit >= 0) with_unit.push_back(s.unit);
  for (int n = 2; n <= arity + 1; ++n) {
    auto tuples = enumerate_tuples(s.A, n <= 3 ? with_unit : alphabet, n, s.pd() + 3 - n, s.ideg_bound);
    for (auto& t : tuples) {
      ++rep.checked;
      Element e = element_normal_form(stasheff_terms(s, t, false), *s.A.coeffs());
      if (!element_is_zero(e)) {
        rep.ok = false;
        rep.arity = n;
        rep.tuple = t;
        rep.violation = "identity " + std::to_string(n) + " at " + s.tuple_str(t) + ": residual " + s.A.element_str(e);
        return rep;
      }
    }
    // Identity n+1 involves m_{n+1}, known only up to the arity bound.
    if (n == arity) break;
  }
  rep.arity = arity;
  return rep;
}

StasheffReport verify_stasheff(const AinfModuleStructure& s, int arity) {
  StasheffReport rep;
  if (arity < 0) arity = s.arity;
  const AinfStructure& A = *s.alg;
  auto v = verify_complex(s.G);
  if (!v.ok) {
    rep.ok = false;
    rep.arity = 1;
    rep.violation = "module identity 1: " + v.violation;
    return rep;
  }
  std::vector<int> alphabet = A.bar_basis();
  std::vector<int> with_unit = alphabet;
  with_unit.push_back(A.unit);
  int pdG = s.G.max_hdeg();
  for (int n = 2; n <= arity; ++n)
    for (size_t g = 0; g < s.G.size(); ++g) {
      int budget = pdG + 3 - n - s.G.gen(g).hdeg;
      if (budget < 0) continue;
      int jb = s.ideg_bound < 0 ? -1 : s.ideg_bound - s.G.gen(g).ideg;
      for (auto& t : enumerate_tuples(A.A, n <= 3 ? with_unit : alphabet, n - 1, budget, jb)) {
        ++rep.checked;
        Element e = module_stasheff_terms(s, t, static_cast<int>(g), false);
        if (!element_is_zero(e)) {
          rep.ok = false;
          rep.arity = n;
          rep.tuple = t;
          rep.tuple.push_back(static_cast<int>(g));
          rep.violation = "module identity " + std::to_string(n) + " at " + A.tuple_str(t) + " (x) " +
                          s.G.gen(g).label + ": residual " + s.G.element_str(e);
          return rep;
        }
      }
    }
  rep.arity = arity;
  return rep;
}

namespace {

Element constant_part(const Element& x) {
  Element out;
  for (auto& [g, p] : x) {
    Polynomial c = p.reduce_mod_maximal();
    if (!c.is_zero()) out.emplace(g, c);
  }
  return out;
}

}  // namespace

AinfStructure reduce_mod_maximal(const AinfStructure& s) {
  AinfStructure r = s;
  r.ops.clear();
  for (auto& [t, v] : s.ops) {
    Element c = constant_part(v);
    if (!c.empty()) r.ops[t] = c;
  }
  ChainComplex A(s.A.coeffs());
  A.bounds = s.A.bounds;
  for (auto& g : s.A.gens()) A.add_generator(g);
  for (size_t g = 0; g < s.A.size(); ++g) A.set_differential(static_cast<int>(g), constant_part(s.A.d(g)));
  r.A = std::move(A);
  return r;
}

FormalityCertificate formality_certificate(const AinfStructure& s) {
  FormalityCertificate fc;
  std::map<std::pair<int, int>, Element> m2;
  fc.certified = true;
  for (auto& [t, v] : s.ops) {
    if (t.size() == 2) {
      m2[{t[0], t[1]}] = v;
      continue;
    }
    if (!constant_part(v).empty()) {
      int n = static_cast<int>(t.size());
      if (fc.certified || n < fc.first_nonzero_arity) fc.first_nonzero_arity = n;
      fc.certified = false;
    }
  }
  fc.tor = tor_algebra_from(s.A, m2);
  return fc;
}

TorAlgebra tor_algebra_from(const ChainComplex& A, const std::map<std::pair<int, int>, Element>& m2) {
  TorAlgebra t;
  t.field = A.field();
  t.basis = A.gens();
  t.unit = find_unit(A);
  for (size_t g = 0; g < A.size(); ++g) {
    int gi = static_cast<int>(g);
    t.mult[{t.unit, gi}] = {{gi, Scalar(1)}};
    t.mult[{gi, t.unit}] = {{gi, Scalar(1)}};
  }
  for (auto& [key, v] : m2) {
    SparseVec sv;
    for (auto& [g, p] : constant_part(v)) sv.emplace_back(g, p.constant_term());
    if (!sv.empty()) t.mult[key] = sv;
  }
  return t;
}

TorAlgebra koszul_homology_algebra(const RingSpec& spec, int D) {
  int n = static_cast<int>(spec.ring->nvars());
  if (D < 0) D = spec.default_ideg_bound(n);
  ChainComplex A = minimal_free_resolution(spec, n, D);
  AinfStructure s = transfer_ainf_algebra(A, 2, D);
  std::map<std::pair<int, int>, Element> m2;
  for (auto& [t, v] : s.ops)
    if (t.size() == 2) m2[{t[0], t[1]}] = v;
  return tor_algebra_from(A, m2);
}

SparseVec TorAlgebra::product(int a, int b) const {
  auto it = mult.find({a, b});
  return it == mult.end() ? SparseVec{} : it->second;
}

std::vector<int> TorAlgebra::in_hdeg(int i) const {
  std::vector<int> out;
  for (size_t g = 0; g < basis.size(); ++g)
    if (basis[g].hdeg == i) out.push_back(static_cast<int>(g));
  return out;
}

std::vector<int> TorAlgebra::dims() const {
  std::vector<int> d;
  for (auto& g : basis) {
    if (static_cast<int>(d.size()) <= g.hdeg) d.resize(g.hdeg + 1, 0);
    d[g.hdeg]++;
  }
  return d;
}

Polynomial CyclicPairing::pair(int a, int b) const {
  auto it = values.find({a, b});
  return it == values.end() ? Polynomial() : it->second;
}

namespace {

// Rotates u by c^i in place and returns the sign of c^i.
int rotate_sign(const ChainComplex& c, Tuple& u, int times) {
  int parity = 0;
  for (int i = 0; i < times; ++i) {
    int h0 = c.gen(u[0]).hdeg;
    parity += h0 * hsum(c, u, 1, u.size());
    std::rotate(u.begin(), u.begin() + 1, u.end());
  }
  return parity % 2;
}

struct VData {
  ChainComplex V;
  std::vector<int> to_a;    // V index -> A index
  std::map<int, int> to_v;  // A index -> V index
};

VData truncate(const ChainComplex& A, int d) {
  VData v{ChainComplex(A.coeffs()), {}, {}};
  for (int i = 1; i < d; ++i)
    for (int g : A.in_degree(i)) {
      v.to_v[g] = v.V.add_generator(A.gen(g));
      v.to_a.push_back(g);
    }
  for (size_t k = 0; k < v.to_a.size(); ++k) {
    Element dv;
    for (auto& [h, p] : A.d(v.to_a[k]))
      if (auto it = v.to_v.find(h); it != v.to_v.end()) dv[it->second] = p;
    v.V.set_differential(static_cast<int>(k), dv);
  }
  return v;
}

// Replaces the arity-n ops of s (on V) by the cyclic symmetrization of the current ones.
void symmetrize(AinfStructure& s, int n, int d, int omega_ideg, const std::function<Polynomial(int, int)>& pair) {
  const ChainComplex& V = s.A;
  const RingPtr& R = V.ring();
  std::vector<int> all = s.bar_basis();
  auto cyc = [&](const Tuple& u) {
    Polynomial out(R);
    Element x = s.m(Tuple(u.begin(), u.end() - 1));
    for (auto& [g, p] : x) {
      Polynomial q = pair(g, u.back());
      if (!q.is_zero()) out += p * q;
    }
    return out;
  };
  int total = d - n + 2;
  std::map<Tuple, std::map<int, Polynomial>> target;  // n-tuple -> (b -> averaged value)
  for (auto& u : enumerate_tuples(V, all, n + 1, total, -1)) {
    if (s.tuple_hdeg(u) != total) continue;
    Polynomial acc(R);
    for (int i = 0; i <= n; ++i) {
      Tuple w = u;
      int parity = rotate_sign(V, w, i) + i * n;
      Polynomial f = cyc(w);
      if (!f.is_zero()) acc += parity % 2 ? -f : f;
    }
    acc = acc.scaled(Scalar::rational(1, n + 1));
    Tuple t(u.begin(), u.end() - 1);
    auto& row = target[t];
    if (!acc.is_zero()) row[u.back()] = acc;
  }
  for (auto it = s.ops.begin(); it != s.ops.end();)
    it = static_cast<int>(it->first.size()) == n ? s.ops.erase(it) : std::next(it);
  for (auto& [t, row] : target) {
    if (row.empty()) continue;
    int k = s.tuple_hdeg(t) + n - 2;
    const auto& cols = V.in_degree(k);
    const auto& rows = V.in_degree(d - k);
    PolyMatrix phi;
    for (int g : cols) phi.source_degrees.push_back(V.gen(g).ideg);
    for (int b : rows) phi.target_degrees.push_back(omega_ideg - V.gen(b).ideg);
    phi.columns.resize(cols.size());
    for (size_t ci = 0; ci < cols.size(); ++ci)
      for (size_t ri = 0; ri < rows.size(); ++ri) {
        Polynomial q = pair(cols[ci], rows[ri]);
        if (!q.is_zero()) phi.columns[ci].emplace_back(static_cast<int>(ri), q);
      }
    int J = s.tuple_ideg(t);
    GradedSlice sl = expand_in_degree(phi, J, *V.coeffs());
    std::map<std::pair<int, Monomial>, int> row_index;
    for (size_t i = 0; i < sl.row_labels.size(); ++i)
      row_index[{sl.row_labels[i].gen, sl.row_labels[i].mono}] = static_cast<int>(i);
    std::map<int, Scalar> dense;
    for (size_t ri = 0; ri < rows.size(); ++ri) {
      auto f = row.find(rows[ri]);
      if (f == row.end()) continue;
      for (auto& [mono, c] : f->second.terms()) dense[row_index.at({static_cast<int>(ri), mono})] = c;
    }
    SparseVec rhs(dense.begin(), dense.end());
    auto x = graded_solve(sl, rhs, V.field());
    if (!x) throw TransferError("cyclic transfer: pairing does not invert at " + s.tuple_str(t));
    Element val;
    for (auto& [ci, c] : *x)
      add_term(val, cols[sl.col_labels[ci].gen], Polynomial::term(R, sl.col_labels[ci].mono, c));
    if (!element_is_zero(val)) s.ops[t] = val;
  }
}

}  // namespace

CyclicResult cyclic_transfer(const ChainComplex& A, int arity, int ideg_bound) {
  int d = A.max_hdeg();
  if (!A.field().is_rational())
    throw UnsupportedInput("cyclic transfer needs characteristic zero (averaging divides by n+1)");
  if (d < 1 || d % 2 == 0)
    throw UnsupportedInput("cyclic transfer needs odd projective dimension; got " + std::to_string(d));
  if (A.rank(d) != 1) throw UnsupportedInput("cyclic transfer needs a Gorenstein quotient (rank A_d = 1)");
  int unit = find_unit(A);
  int omega = A.in_degree(d)[0];
  const RingPtr& R = A.ring();

  AinfStructure base = transfer_ainf_algebra(A, 2, -1);
  auto mu = [&](int a, int b) {
    Element x = base.m(Tuple{a, b});
    int sgn = A.gen(a).hdeg * A.gen(b).hdeg;
    add_scaled(x, base.m(Tuple{b, a}), sign_poly(R, sgn));
    return scaled(x, Polynomial::constant(R, Scalar::rational(1, 2)));
  };

  CyclicResult res;
  res.pairing.d = d;
  res.pairing.omega = omega;
  for (int k = 0; k <= d; ++k) {
    const auto& as = A.in_degree(k);
    const auto& bs = A.in_degree(d - k);
    if (as.size() != bs.size()) throw UnsupportedInput("cyclic transfer: Betti numbers are not self-dual");
    Echelon ech(as.size(), A.field(), false);
    for (int b : bs) {
      SparseVec col;
      for (size_t i = 0; i < as.size(); ++i) {
        Element x = mu(as[i], b);
        auto it = x.find(omega);
        if (it == x.end() || it->second.is_zero()) continue;
        res.pairing.values[{as[i], b}] = it->second;
        Scalar c = it->second.constant_term();
        if (!c.is_zero()) col.emplace_back(static_cast<int>(i), c);
      }
      ech.push(col);
    }
    if (ech.rank() != as.size()) throw UnsupportedInput("cyclic transfer: pairing is not perfect (not Gorenstein)");
  }

  VData v = truncate(A, d);
  AinfStructure sv;
  sv.A = v.V;
  sv.unit = -1;
  sv.arity = arity;
  for (size_t a = 0; a < v.to_a.size(); ++a)
    for (size_t b = 0; b < v.to_a.size(); ++b) {
      int hd = A.gen(v.to_a[a]).hdeg + A.gen(v.to_a[b]).hdeg;
      if (hd >= d) continue;
      Element x;
      for (auto& [g, p] : mu(v.to_a[a], v.to_a[b]))
        if (auto it = v.to_v.find(g); it != v.to_v.end()) x[it->second] = p;
      if (!element_is_zero(x)) sv.ops[{static_cast<int>(a), static_cast<int>(b)}] = x;
    }
  auto vpair = [&](int a, int b) { return res.pairing.pair(v.to_a[a], v.to_a[b]); };
  int omega_ideg = A.gen(omega).ideg;
  if (d >= 3) {
    symmetrize(sv, 2, d, omega_ideg, vpair);
    BoundarySolver solver(sv.A);
    for (int n = 3; n <= arity; ++n) {
      lift_algebra_ops(sv, n, n, solver);
      symmetrize(sv, n, d, omega_ideg, vpair);
    }
  }

  AinfStructure& s = res.structure;
  s.A = A;
  s.unit = unit;
  s.arity = arity;
  s.ideg_bound = ideg_bound;
  for (auto& [t, x] : sv.ops) {
    Tuple ta;
    for (int g : t) ta.push_back(v.to_a[g]);
    Element xa;
    for (auto& [g, p] : x) xa[v.to_a[g]] = p;
    s.ops[ta] = xa;
  }
  for (auto& [key, p] : res.pairing.values)
    if (key.first != unit && key.second != unit) s.ops[{key.first, key.second}] = Element{{omega, p}};

  auto rep = verify_stasheff(s);
  if (!rep.ok) throw TransferError("cyclic transfer produced a structure failing " + rep.violation);
  auto cyc = verify_cyclic(s, res.pairing);
  if (!cyc.ok) throw TransferError("cyclic transfer produced a non-cyclic structure: " + cyc.violation);
  return res;
}

StasheffReport verify_cyclic(const AinfStructure& s, const CyclicPairing& p, int arity) {
  StasheffReport rep;
  if (arity < 0) arity = s.arity;
  const RingPtr& R = s.A.ring();
  std::vector<int> alphabet = s.bar_basis();
  std::vector<int> with_unit = alphabet;
  if (s.unit >= 0) with_unit.push_back(s.unit);
  auto cyc = [&](const Tuple& u) {
    Polynomial out(R);
    for (auto& [g, c] : s.m(Tuple(u.begin(), u.end() - 1))) {
      Polynomial q = p.pair(g, u.back());
      if (!q.is_zero()) out += c * q;
    }
    return out;
  };
  for (int n = 1; n <= arity; ++n) {
    int total = p.d - n + 2;
    if (total < 0) break;
    for (auto& u : enumerate_tuples(s.A, n <= 2 ? with_unit : alphabet, n + 1, total, s.ideg_bound)) {
      if (s.tuple_hdeg(u) != total) continue;
      ++rep.checked;
      Tuple w = u;
      int parity = rotate_sign(s.A, w, 1) + n;
      Polynomial lhs = cyc(u), rhs = cyc(w);
      if (lhs != (parity % 2 ? -rhs : rhs)) {
        rep.ok = false;
        rep.arity = n;
        rep.tuple = u;
        rep.violation = "cyclic identity " + std::to_string(n) + " at " + s.tuple_str(u) + ": " + lhs.str() +
                        " vs " + (parity % 2 ? -rhs : rhs).str();
        return rep;
      }
    }
  }
  rep.arity = arity;
  return rep;
}

std::string serialize_ainf(const AinfStructure& s) {
  if (s.A.over_quotient()) throw std::invalid_argument("serialize_ainf: complex must be over the polynomial ring");
  const PolyRing& r = *s.A.ring();
  std::ostringstream os;
  os << "field " << r.field.p << "\nvars";
  for (size_t i = 0; i < r.nvars(); ++i) os << ' ' << r.vars[i] << ':' << r.weights[i];
  os << "\narity " << s.arity << "\nideg_bound " << s.ideg_bound << "\nbounds " << s.A.bounds.hdeg << ' '
     << s.A.bounds.ideg << ' ' << (s.A.bounds.truncated ? 1 : 0) << '\n';
  auto elem = [&](const Element& x) {
    std::string out;
    for (auto& [g, p] : x) {
      if (p.is_zero()) continue;
      out += " " + s.A.gen(g).label + " (" + p.str() + ") ;";
    }
    return out;
  };
  for (auto& g : s.A.gens()) os << "gen " << g.label << ' ' << g.hdeg << ' ' << g.ideg << '\n';
  if (s.unit >= 0) os << "unit " << s.A.gen(s.unit).label << '\n';
  for (size_t g = 0; g < s.A.size(); ++g)
    if (!element_is_zero(s.A.d(g))) os << "d " << s.A.gen(g).label << " :" << elem(s.A.d(g)) << '\n';
  for (auto& [t, x] : s.ops) {
    if (element_is_zero(x)) continue;
    os << "m " << t.size();
    for (int g : t) os << ' ' << s.A.gen(g).label;
    os << " :" << elem(x) << '\n';
  }
  return os.str();
}

AinfStructure parse_ainf(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  RingPtr ring;
  Field field;
  AinfStructure s;
  std::map<std::string, int> index;
  std::vector<std::pair<int, std::string>> dlines;
  std::vector<std::pair<Tuple, std::string>> mlines;
  Bounds bounds;
  std::string unit_label;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("parse_ainf line " + std::to_string(lineno) + ": " + what);
  };
  auto gen_of = [&](const std::string& l) {
    auto it = index.find(l);
    if (it == index.end()) fail("unknown generator '" + l + "'");
    return it->second;
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "field") {
      uint32_t p;
      if (!(ls >> p)) fail("bad field");
      field = Field{p};
    } else if (key == "vars") {
      std::vector<std::string> names;
      std::vector<int> weights;
      std::string tok;
      while (ls >> tok) {
        auto c = tok.rfind(':');
        if (c == std::string::npos) fail("variable needs name:weight");
        names.push_back(tok.substr(0, c));
        weights.push_back(std::stoi(tok.substr(c + 1)));
      }
      ring = make_ring(names, field, weights);
      s.A = ChainComplex(polynomial_coefficients(ring));
    } else if (key == "arity") {
      ls >> s.arity;
    } else if (key == "ideg_bound") {
      ls >> s.ideg_bound;
    } else if (key == "bounds") {
      int t = 0;
      ls >> bounds.hdeg >> bounds.ideg >> t;
      bounds.truncated = t != 0;
    } else if (key == "gen") {
      if (!ring) fail("gen before vars");
      Generator g;
      if (!(ls >> g.label >> g.hdeg >> g.ideg)) fail("bad generator");
      if (index.count(g.label)) fail("duplicate generator '" + g.label + "'");
      index[g.label] = s.A.add_generator(g);
    } else if (key == "unit") {
      ls >> unit_label;
    } else if (key == "d") {
      std::string l;
      ls >> l;
      std::string rest;
      std::getline(ls, rest);
      dlines.emplace_back(gen_of(l), rest);
    } else if (key == "m") {
      int n;
      ls >> n;
      Tuple t;
      for (int i = 0; i < n; ++i) {
        std::string l;
        ls >> l;
        t.push_back(gen_of(l));
      }
      std::string rest;
      std::getline(ls, rest);
      mlines.emplace_back(t, rest);
    } else {
      fail("unknown record '" + key + "'");
    }
  }
  if (!ring) fail("missing vars");
  auto parse_elem = [&](std::string rest) {
    Element x;
    auto colon = rest.find(':');
    if (colon == std::string::npos) fail("missing ':'");
    rest = rest.substr(colon + 1);
    size_t pos = 0;
    while (true) {
      auto semi = rest.find(';', pos);
      if (semi == std::string::npos) break;
      std::string item = rest.substr(pos, semi - pos);
      pos = semi + 1;
      auto open = item.find('(');
      auto close = item.rfind(')');
      if (open == std::string::npos || close == std::string::npos) fail("bad term '" + item + "'");
      std::istringstream ls(item.substr(0, open));
      std::string l;
      ls >> l;
      add_term(x, gen_of(l), parse_polynomial(ring, item.substr(open + 1, close - open - 1)));
    }
    return x;
  };
  for (auto& [g, rest] : dlines) s.A.set_differential(g, parse_elem(rest));
  for (auto& [t, rest] : mlines) s.ops[t] = parse_elem(rest);
  s.A.bounds = bounds;
  s.unit = unit_label.empty() ? -1 : gen_of(unit_label);
  return s;
}

}  // namespace sk
