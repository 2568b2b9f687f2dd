#include "sk/linalg.hpp"

#include <atomic>
#include <stdexcept>

namespace sk {

namespace {

std::atomic<bool> g_self_checks{false};

struct ModP {
  using E = uint32_t;
  uint32_t p;
  E zero() const { return 0; }
  bool is_zero(E a) const { return a == 0; }
  E add(E a, E b) const { return static_cast<E>((uint64_t(a) + b) % p); }
  E sub(E a, E b) const { return static_cast<E>((uint64_t(a) + p - b) % p); }
  E mul(E a, E b) const { return static_cast<E>(uint64_t(a) * b % p); }
  E inv(E a) const {
    uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<E>(r);
  }
  E from(const Scalar& s) const { return static_cast<E>(s.in_field(p).residue()); }
  Scalar to(E a) const { return Scalar::modp(a, p); }
};

struct Rat {
  using E = mpq_class;
  E zero() const { return 0; }
  bool is_zero(const E& a) const { return sgn(a) == 0; }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E inv(const E& a) const { return 1 / a; }
  E from(const Scalar& s) const { return s.to_mpq(); }
  Scalar to(const E& a) const { return Scalar::rational(a); }
};

}  // namespace

void set_self_checks(bool on) { g_self_checks = on; }
bool self_checks() { return g_self_checks; }

struct Echelon::Impl {
  virtual ~Impl() = default;
  virtual bool push(const SparseVec& col) = 0;
  virtual std::optional<SparseVec> solve(const SparseVec& rhs) const = 0;
  virtual SparseVec reduce(const SparseVec& v) const = 0;
  size_t nrows = 0, ncols = 0;
  bool track = true;
  std::vector<size_t> pivot_cols;
  std::vector<SparseVec> kernel;
};

namespace {

template <class F>
struct EchelonT final : Echelon::Impl {
  using E = typename F::E;
  using SV = std::vector<std::pair<int, E>>;
  F f;
  std::vector<int> pivot_row;  // per basis vector
  std::vector<SV> vecs;        // basis vectors, 1 at their pivot row
  std::vector<SV> combs;       // expression over pushed columns

  explicit EchelonT(F f_) : f(std::move(f_)) {}

  std::vector<E> dense(const SparseVec& v) const {
    std::vector<E> w(nrows, f.zero());
    for (auto& [i, c] : v) {
      if (i < 0 || static_cast<size_t>(i) >= nrows) throw std::out_of_range("echelon: row index");
      w[i] = f.from(c);
    }
    return w;
  }

  // Reduces w in place; lambdas receives the multiplier of each basis vector.
  void reduce_dense(std::vector<E>& w, std::vector<E>* lambdas) const {
    for (size_t k = 0; k < vecs.size(); ++k) {
      E lam = w[pivot_row[k]];
      if (f.is_zero(lam)) continue;
      for (auto& [i, e] : vecs[k]) w[i] = f.sub(w[i], f.mul(lam, e));
      if (lambdas) (*lambdas)[k] = lam;
    }
  }

  bool push(const SparseVec& col) override {
    std::vector<E> w = dense(col);
    std::vector<E> lam(vecs.size(), f.zero());
    reduce_dense(w, track ? &lam : nullptr);
    size_t c = ncols++;
    int piv = -1;
    for (size_t i = 0; i < nrows; ++i)
      if (!f.is_zero(w[i])) {
        piv = static_cast<int>(i);
        break;
      }
    std::vector<E> comb;
    if (track) {
      comb.assign(ncols, f.zero());
      comb[c] = f.add(f.zero(), E(1));
      for (size_t k = 0; k < vecs.size(); ++k) {
        if (f.is_zero(lam[k])) continue;
        for (auto& [j, e] : combs[k]) comb[j] = f.sub(comb[j], f.mul(lam[k], e));
      }
    }
    if (piv < 0) {
      if (track) {
        SparseVec kv;
        for (size_t j = 0; j < comb.size(); ++j)
          if (!f.is_zero(comb[j])) kv.emplace_back(static_cast<int>(j), f.to(comb[j]));
        kernel.push_back(std::move(kv));
      }
      return false;
    }
    E inv = f.inv(w[piv]);
    SV v;
    for (size_t i = piv; i < nrows; ++i)
      if (!f.is_zero(w[i])) v.emplace_back(static_cast<int>(i), f.mul(w[i], inv));
    if (track) {
      SV cv;
      for (size_t j = 0; j < comb.size(); ++j)
        if (!f.is_zero(comb[j])) cv.emplace_back(static_cast<int>(j), f.mul(comb[j], inv));
      combs.push_back(std::move(cv));
    }
    pivot_row.push_back(piv);
    vecs.push_back(std::move(v));
    pivot_cols.push_back(c);
    return true;
  }

  std::optional<SparseVec> solve(const SparseVec& rhs) const override {
    if (!track) throw std::logic_error("echelon: solve requires tracking");
    std::vector<E> w = dense(rhs);
    std::vector<E> lam(vecs.size(), f.zero());
    reduce_dense(w, &lam);
    for (auto& e : w)
      if (!f.is_zero(e)) return std::nullopt;
    std::vector<E> x(ncols, f.zero());
    for (size_t k = 0; k < vecs.size(); ++k) {
      if (f.is_zero(lam[k])) continue;
      for (auto& [j, e] : combs[k]) x[j] = f.add(x[j], f.mul(lam[k], e));
    }
    SparseVec out;
    for (size_t j = 0; j < ncols; ++j)
      if (!f.is_zero(x[j])) out.emplace_back(static_cast<int>(j), f.to(x[j]));
    return out;
  }

  SparseVec reduce(const SparseVec& v) const override {
    std::vector<E> w = dense(v);
    reduce_dense(w, nullptr);
    SparseVec out;
    for (size_t i = 0; i < nrows; ++i)
      if (!f.is_zero(w[i])) out.emplace_back(static_cast<int>(i), f.to(w[i]));
    return out;
  }
};

}  // namespace

Echelon::Echelon(size_t nrows, Field f, bool track) {
  if (f.p)
    impl_ = std::make_unique<EchelonT<ModP>>(ModP{f.p});
  else
    impl_ = std::make_unique<EchelonT<Rat>>(Rat{});
  impl_->nrows = nrows;
  impl_->track = track;
}
Echelon::~Echelon() = default;
Echelon::Echelon(Echelon&&) noexcept = default;
Echelon& Echelon::operator=(Echelon&&) noexcept = default;

bool Echelon::push(const SparseVec& col) { return impl_->push(col); }
size_t Echelon::rank() const { return impl_->pivot_cols.size(); }
size_t Echelon::ncols() const { return impl_->ncols; }
size_t Echelon::nrows() const { return impl_->nrows; }
const std::vector<size_t>& Echelon::pivot_columns() const { return impl_->pivot_cols; }
std::optional<SparseVec> Echelon::solve(const SparseVec& rhs) const { return impl_->solve(rhs); }
bool Echelon::contains(const SparseVec& v) const { return impl_->reduce(v).empty(); }
SparseVec Echelon::reduce(const SparseVec& v) const { return impl_->reduce(v); }
const std::vector<SparseVec>& Echelon::kernel() const { return impl_->kernel; }

SparseVec sparse_axpy(const SparseVec& x, const Scalar& a, const SparseVec& y) {
  SparseVec out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      Scalar c = a * y[j].second;
      if (!c.is_zero()) out.emplace_back(y[j].first, c);
      ++j;
    } else {
      Scalar c = x[i].second + a * y[j].second;
      if (!c.is_zero()) out.emplace_back(x[i].first, c);
      ++i, ++j;
    }
  }
  return out;
}

bool sparse_is_zero(const SparseVec& v) {
  for (auto& e : v)
    if (!e.second.is_zero()) return false;
  return true;
}

const CoefficientRing::DegreeData& CoefficientRing::data(int d) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(d);
  if (it != cache_.end()) return *it->second;
  auto dd = std::make_unique<DegreeData>();
  dd->basis = compute_basis(d);
  for (size_t i = 0; i < dd->basis.size(); ++i) dd->index.emplace(dd->basis[i], static_cast<int>(i));
  auto& ref = *dd;
  cache_.emplace(d, std::move(dd));
  return ref;
}

const std::vector<Monomial>& CoefficientRing::basis(int d) const {
  static const std::vector<Monomial> empty;
  if (d < 0) return empty;
  return data(d).basis;
}

int CoefficientRing::index_of(const Monomial& m) const {
  const auto& idx = data(m.degree()).index;
  auto it = idx.find(m);
  return it == idx.end() ? -1 : it->second;
}

namespace {

class PolynomialCoefficients final : public CoefficientRing {
 public:
  explicit PolynomialCoefficients(RingPtr r) : CoefficientRing(std::move(r)) {}
  bool is_polynomial_ring() const override { return true; }
  Polynomial normal_form(const Polynomial& p) const override { return p; }

 protected:
  std::vector<Monomial> compute_basis(int d) const override { return monomials_of_degree(*ring(), d); }
};

}  // namespace

CoeffPtr polynomial_coefficients(RingPtr r) { return std::make_shared<PolynomialCoefficients>(std::move(r)); }

SparseVec GradedSlice::apply(const SparseVec& x) const {
  SparseVec out;
  for (auto& [j, c] : x) out = sparse_axpy(out, c, columns.at(j));
  return out;
}

GradedSlice expand_in_degree(const PolyMatrix& m, int d, const CoefficientRing& R) {
  GradedSlice s;
  s.degree = d;
  std::vector<int> row_offset(m.target_degrees.size());
  for (size_t t = 0; t < m.target_degrees.size(); ++t) {
    row_offset[t] = static_cast<int>(s.row_labels.size());
    for (auto& mono : R.basis(d - m.target_degrees[t])) s.row_labels.push_back({static_cast<int>(t), mono});
  }
  for (size_t src = 0; src < m.source_degrees.size(); ++src) {
    const auto& col = src < m.columns.size() ? m.columns[src] : std::vector<std::pair<int, Polynomial>>{};
    for (auto& [t, entry] : col) {
      if (entry.is_zero()) continue;
      if (!entry.is_homogeneous() || entry.degree() != m.source_degrees[src] - m.target_degrees[t])
        throw HomogeneityError("expand_in_degree: entry (" + std::to_string(t) + "," + std::to_string(src) +
                               ") is not homogeneous of the forced degree");
    }
    for (auto& mono : R.basis(d - m.source_degrees[src])) {
      s.col_labels.push_back({static_cast<int>(src), mono});
      std::vector<std::pair<int, Scalar>> entries;
      for (auto& [t, entry] : col) {
        if (entry.is_zero()) continue;
        Polynomial img = entry.times_monomial(mono);
        if (!R.is_polynomial_ring()) img = R.normal_form(img);
        for (auto& [mm, c] : img.terms()) {
          int idx = R.index_of(mm);
          if (idx < 0) throw std::logic_error("expand_in_degree: normal form left a non-standard monomial");
          entries.emplace_back(row_offset[t] + idx, c);
        }
      }
      std::sort(entries.begin(), entries.end(), [](auto& a, auto& b) { return a.first < b.first; });
      SparseVec v;
      for (auto& e : entries) {
        if (!v.empty() && v.back().first == e.first) {
          v.back().second += e.second;
          if (v.back().second.is_zero()) v.pop_back();
        } else if (!e.second.is_zero()) {
          v.push_back(e);
        }
      }
      s.columns.push_back(std::move(v));
    }
  }
  return s;
}

std::optional<SparseVec> graded_solve(const GradedSlice& s, const SparseVec& rhs, Field f) {
  Echelon e(s.nrows(), f);
  for (auto& c : s.columns) e.push(c);
  auto x = e.solve(rhs);
  if (x && g_self_checks) {
    SparseVec back = s.apply(*x);
    if (!sparse_is_zero(sparse_axpy(back, Scalar(-1), rhs)))
      throw std::logic_error("graded_solve: back-multiplication check failed");
  }
  return x;
}

std::vector<SparseVec> kernel_in_degree(const GradedSlice& s, Field f) {
  Echelon e(s.nrows(), f);
  for (auto& c : s.columns) e.push(c);
  return e.kernel();
}

size_t slice_rank(const GradedSlice& s, Field f) {
  Echelon e(s.nrows(), f, false);
  for (auto& c : s.columns) e.push(c);
  return e.rank();
}

}  // namespace sk
