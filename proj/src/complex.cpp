#include "sk/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sk {

void add_term(Element& acc, int g, const Polynomial& p) {
  if (p.is_zero()) return;
  auto it = acc.find(g);
  if (it == acc.end()) {
    acc.emplace(g, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) acc.erase(it);
}

void add_scaled(Element& acc, const Element& x, const Polynomial& c) {
  if (c.is_zero()) return;
  for (auto& [g, p] : x) add_term(acc, g, c * p);
}

Element scaled(const Element& x, const Polynomial& c) {
  Element out;
  add_scaled(out, x, c);
  return out;
}

Element element_normal_form(const Element& x, const CoefficientRing& R) {
  if (R.is_polynomial_ring()) return x;
  Element out;
  for (auto& [g, p] : x) add_term(out, g, R.normal_form(p));
  return out;
}

bool element_is_zero(const Element& x) {
  for (auto& [g, p] : x)
    if (!p.is_zero()) return false;
  return true;
}

ChainComplex::ChainComplex(CoeffPtr coeffs) : coeffs_(std::move(coeffs)) {}

int ChainComplex::add_generator(Generator g) {
  if (g.hdeg < 0) throw std::invalid_argument("complex: negative homological degree");
  int idx = static_cast<int>(gens_.size());
  if (static_cast<int>(by_hdeg_.size()) <= g.hdeg) by_hdeg_.resize(g.hdeg + 1);
  local_.push_back(static_cast<int>(by_hdeg_[g.hdeg].size()));
  by_hdeg_[g.hdeg].push_back(idx);
  gens_.push_back(std::move(g));
  d_.emplace_back();
  return idx;
}

void ChainComplex::set_differential(int g, Element d) {
  for (auto& [t, p] : d) {
    if (gens_.at(t).hdeg != gens_[g].hdeg - 1) throw std::invalid_argument("complex: differential must lower hdeg by 1");
    if (!p.is_zero() && (!p.is_homogeneous() || p.degree() != gens_[g].ideg - gens_[t].ideg))
      throw HomogeneityError("complex: differential entry of wrong internal degree at " + gens_[g].label);
  }
  d_[g] = std::move(d);
}

const std::vector<int>& ChainComplex::in_degree(int i) const {
  static const std::vector<int> empty;
  if (i < 0 || i >= static_cast<int>(by_hdeg_.size())) return empty;
  return by_hdeg_[i];
}

std::vector<int> ChainComplex::ranks() const {
  std::vector<int> r;
  for (auto& v : by_hdeg_) r.push_back(static_cast<int>(v.size()));
  return r;
}

Element ChainComplex::apply_d(const Element& x) const {
  Element out;
  for (auto& [g, p] : x) add_scaled(out, d_[g], p);
  return element_normal_form(out, *coeffs_);
}

PolyMatrix ChainComplex::differential_matrix(int i) const {
  PolyMatrix m;
  for (int g : in_degree(i)) m.source_degrees.push_back(gens_[g].ideg);
  for (int t : in_degree(i - 1)) m.target_degrees.push_back(gens_[t].ideg);
  for (int g : in_degree(i)) {
    std::vector<std::pair<int, Polynomial>> col;
    if (i > 0)
      for (auto& [t, p] : d_[g]) col.emplace_back(local_[t], p);
    m.columns.push_back(std::move(col));
  }
  return m;
}

std::string ChainComplex::element_str(const Element& x) const {
  if (x.empty()) return "0";
  std::string s;
  for (auto& [g, p] : x) {
    if (!s.empty()) s += " + ";
    if (p.size() > 1)
      s += "(" + p.str() + ")*";
    else if (!p.is_unit() || !p.constant_term().is_one())
      s += p.str() + "*";
    s += gens_[g].label;
  }
  return s;
}

VerifyReport verify_complex(const ChainComplex& c) {
  VerifyReport rep;
  for (int i = 0; i <= c.max_hdeg(); ++i) {
    for (int g : c.in_degree(i)) {
      if (rep.ok && i >= 2) {
        Element dd = c.apply_d(c.d(g));
        if (!element_is_zero(dd)) {
          rep.ok = false;
          rep.degree = i;
          rep.generator = g;
          rep.target = dd.begin()->first;
          rep.violation = "d(d(" + c.gen(g).label + ")) = " + c.element_str(dd) + " in degree " + std::to_string(i);
        }
      }
      if (rep.minimal) {
        for (auto& [t, p] : c.d(g)) {
          Polynomial q = c.over_quotient() ? c.coeffs()->normal_form(p) : p;
          if (!q.constant_term().is_zero()) {
            rep.minimal = false;
            break;
          }
        }
      }
    }
  }
  return rep;
}

int module_dim(const ChainComplex& c, int i, int j) {
  int n = 0;
  for (int g : c.in_degree(i)) n += static_cast<int>(c.coeffs()->basis(j - c.gen(g).ideg).size());
  return n;
}

int HomologyTable::at(int i, int j) const {
  auto it = rank.find({i, j});
  return it == rank.end() ? 0 : it->second;
}

int HomologyTable::total(int i) const {
  int t = 0;
  for (auto& [k, v] : rank)
    if (k.first == i) t += v;
  return t;
}

HomologyTable homology_ranks(const ChainComplex& c, int max_ideg) {
  HomologyTable h;
  h.bounds = c.bounds;
  h.bounds.ideg = max_ideg;
  int lo = max_ideg;
  for (auto& g : c.gens()) lo = std::min(lo, g.ideg);
  h.min_ideg = lo;
  h.max_ideg = max_ideg;
  int top = c.max_hdeg();
  Field f = c.field();
  std::vector<PolyMatrix> mats;
  for (int i = 0; i <= top + 1; ++i) mats.push_back(c.differential_matrix(i));
  for (int j = lo; j <= max_ideg; ++j) {
    std::vector<size_t> rk(top + 2, 0);
    for (int i = 1; i <= top; ++i) rk[i] = slice_rank(expand_in_degree(mats[i], j, *c.coeffs()), f);
    for (int i = 0; i <= top; ++i) {
      int dim = module_dim(c, i, j);
      int r = dim - static_cast<int>(rk[i]) - static_cast<int>(rk[i + 1]);
      if (r) h.rank[{i, j}] = r;
    }
  }
  return h;
}

ChainComplex minimize(const ChainComplex& c) {
  std::vector<Element> d(c.size());
  for (size_t g = 0; g < c.size(); ++g) d[g] = element_normal_form(c.d(static_cast<int>(g)), *c.coeffs());
  std::vector<char> alive(c.size(), 1);
  const CoefficientRing& R = *c.coeffs();
  for (;;) {
    int pg = -1, ph = -1;
    for (int i = 1; i <= c.max_hdeg() && pg < 0; ++i)
      for (int g : c.in_degree(i)) {
        if (!alive[g]) continue;
        for (auto& [t, p] : d[g])
          if (alive[t] && p.is_unit()) {
            pg = g, ph = t;
            break;
          }
        if (pg >= 0) break;
      }
    if (pg < 0) break;
    int i = c.gen(pg).hdeg;
    Scalar unit = d[pg].at(ph).constant_term();
    for (int x : c.in_degree(i)) {
      if (x == pg || !alive[x]) continue;
      auto it = d[x].find(ph);
      if (it == d[x].end()) continue;
      Polynomial coef = it->second.scaled(-unit.inverse());
      add_scaled(d[x], d[pg], coef);
      d[x] = element_normal_form(d[x], R);
      d[x].erase(ph);
    }
    for (int y : c.in_degree(i + 1)) d[y].erase(pg);
    alive[pg] = alive[ph] = 0;
  }
  ChainComplex out(c.coeffs());
  out.bounds = c.bounds;
  std::vector<int> renum(c.size(), -1);
  for (int i = 0; i <= c.max_hdeg(); ++i)
    for (int g : c.in_degree(i))
      if (alive[g]) renum[g] = out.add_generator(c.gen(g));
  for (size_t g = 0; g < c.size(); ++g) {
    if (!alive[g]) continue;
    Element e;
    for (auto& [t, p] : d[g]) {
      if (!alive[t]) throw std::logic_error("minimize: dangling reference");
      add_term(e, renum[t], p);
    }
    out.set_differential(renum[g], std::move(e));
  }
  return out;
}

Element apply_map(const ComplexMap& f, const Element& x, const CoefficientRing& R) {
  Element out;
  for (auto& [g, p] : x)
    if (g < static_cast<int>(f.images.size())) add_scaled(out, f.images[g], p);
  return element_normal_form(out, R);
}

struct BoundarySolver::Entry {
  GradedSlice slice;
  Echelon ech;
  std::vector<int> row_offset;  // per local generator of A_{k-1}
  Entry(GradedSlice s, Field f) : slice(std::move(s)), ech(slice.nrows(), f) {}
};

BoundarySolver::BoundarySolver(const ChainComplex& A) : A_(A) {}
BoundarySolver::~BoundarySolver() = default;

BoundarySolver::Entry& BoundarySolver::entry(int k, int j) {
  auto key = std::make_pair(k, j);
  auto it = cache_.find(key);
  if (it != cache_.end()) return *it->second;
  auto e = std::make_unique<Entry>(expand_in_degree(A_.differential_matrix(k), j, *A_.coeffs()), A_.field());
  for (auto& col : e->slice.columns) e->ech.push(col);
  e->row_offset.assign(A_.in_degree(k - 1).size() + 1, -1);
  for (size_t r = e->slice.row_labels.size(); r-- > 0;) e->row_offset[e->slice.row_labels[r].gen] = static_cast<int>(r);
  auto& ref = *e;
  cache_.emplace(key, std::move(e));
  return ref;
}

std::optional<Element> BoundarySolver::solve(int k, int j, const Element& rhs) {
  if (element_is_zero(rhs)) return Element{};
  if (k < 1 || k > A_.max_hdeg()) return std::nullopt;
  Entry& e = entry(k, j);
  const CoefficientRing& R = *A_.coeffs();
  SparseVec b;
  for (auto& [g, p] : rhs) {
    if (A_.gen(g).hdeg != k - 1) throw std::invalid_argument("BoundarySolver: rhs in wrong homological degree");
    int off = e.row_offset[A_.local_index(g)];
    for (auto& [m, c] : p.terms()) {
      int idx = R.index_of(m);
      if (off < 0 || idx < 0 || m.degree() != j - A_.gen(g).ideg)
        throw std::invalid_argument("BoundarySolver: rhs not homogeneous of degree " + std::to_string(j));
      b.emplace_back(off + idx, c);
    }
  }
  std::sort(b.begin(), b.end(), [](auto& x, auto& y) { return x.first < y.first; });
  auto x = e.ech.solve(b);
  if (!x) return std::nullopt;
  if (self_checks() && e.slice.apply(*x) != b) throw std::logic_error("BoundarySolver: back-multiplication failed");
  Element y;
  const auto& src = A_.in_degree(k);
  for (auto& [col, c] : *x) {
    const SliceLabel& lab = e.slice.col_labels[col];
    add_term(y, src[lab.gen], Polynomial::term(A_.ring(), lab.mono, c));
  }
  return y;
}

LiftResult null_homotopy_lift(const ChainComplex& X, const ChainComplex& A, const ComplexMap& f) {
  LiftResult res;
  res.h.hshift = f.hshift + 1;
  res.h.ishift = f.ishift;
  res.h.images.assign(X.size(), Element{});
  const bool odd = res.h.hshift % 2 != 0;
  std::vector<int> order(X.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (X.gen(a).hdeg != X.gen(b).hdeg) return X.gen(a).hdeg < X.gen(b).hdeg;
    return X.gen(a).ideg < X.gen(b).ideg;
  });
  BoundarySolver solver(A);
  const CoefficientRing& R = *A.coeffs();
  for (int x : order) {
    Element rhs = x < static_cast<int>(f.images.size()) ? element_normal_form(f.images[x], R) : Element{};
    Element hdx = apply_map(res.h, X.d(x), R);
    add_scaled(rhs, hdx, Polynomial::constant(A.ring(), Scalar(odd ? -1 : 1)));
    rhs = element_normal_form(rhs, R);
    int k = X.gen(x).hdeg + res.h.hshift;
    int j = X.gen(x).ideg + res.h.ishift;
    auto y = solver.solve(k, j, rhs);
    if (!y) {
      res.ok = false;
      res.fail_hdeg = k;
      res.fail_ideg = j;
      res.failure = "no lift for generator " + X.gen(x).label + " at bidegree (" + std::to_string(k) + "," +
                    std::to_string(j) + ")";
      return res;
    }
    res.h.images[x] = std::move(*y);
  }
  return res;
}

std::string table_csv(const std::map<std::pair<int, int>, int>& entries, int max_i, int min_j, int max_j) {
  std::ostringstream os;
  os << "ideg";
  for (int i = 0; i <= max_i; ++i) os << ',' << i;
  os << '\n';
  for (int j = min_j; j <= max_j; ++j) {
    os << j;
    for (int i = 0; i <= max_i; ++i) {
      auto it = entries.find({i, j});
      os << ',' << (it == entries.end() ? 0 : it->second);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace sk
