#include "sk/classify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace sk {

namespace {

SparseVec unit_vec(int i) { return {{i, Scalar(1)}}; }

SparseVec mulvec(const TorAlgebra& T, const SparseVec& u, const SparseVec& v) {
  SparseVec out;
  for (auto& [i, a] : u)
    for (auto& [j, b] : v) out = sparse_axpy(out, a * b, T.product(i, j));
  return out;
}

size_t rank_of(const std::vector<SparseVec>& vs, size_t nrows, Field f) {
  Echelon e(nrows, f, false);
  for (auto& v : vs) e.push(v);
  return e.rank();
}

// rank of y -> x y on T_1 for x = sum c_a a.
size_t multiplication_rank(const TorAlgebra& T, const SparseVec& x, const std::vector<int>& T1) {
  std::vector<SparseVec> cols;
  for (int b : T1) cols.push_back(mulvec(T, x, unit_vec(b)));
  return rank_of(cols, T.basis.size(), T.field);
}

RatSeries to_rat(const std::vector<long>& v, int N) {
  RatSeries s(N + 1, mpq_class(0));
  for (int i = 0; i <= N && i < static_cast<int>(v.size()); ++i) s[i] = v[i];
  return s;
}

RatSeries binomial_series(int e, int N) {
  RatSeries s(N + 1, mpq_class(0));
  mpz_class b = 1;
  for (int k = 0; k <= std::min(e, N); ++k) {
    s[k] = b;
    b = b * (e - k) / (k + 1);
  }
  return s;
}

std::vector<long> ranks_through(const ChainComplex& c, int N) {
  std::vector<long> out(N + 1, 0);
  auto r = c.ranks();
  for (int i = 0; i <= N && i < static_cast<int>(r.size()); ++i) out[i] = r[i];
  return out;
}

int nvars(const RingSpec& spec) { return static_cast<int>(spec.ring->nvars()); }

ChainComplex q_resolution(const RingSpec& spec) {
  int n = nvars(spec);
  return minimal_free_resolution(spec, n, spec.default_ideg_bound(n));
}

std::vector<long> residue_totals(const RingSpec& spec, int N) {
  return ranks_through(resolve_over_quotient(spec, N, spec.default_ideg_bound(N)), N);
}

bool almost_linear(const ChainComplex& A, int& e) {
  int pd = A.max_hdeg();
  e = -1;
  for (int g : A.in_degree(1)) {
    if (e < 0) e = A.gen(g).ideg;
    if (A.gen(g).ideg != e) return false;
  }
  for (int i = 1; i < pd; ++i)
    for (int g : A.in_degree(i))
      if (A.gen(g).ideg != i + e - 1) return false;
  return e > 0;
}

}  // namespace

std::string TorClass::name() const {
  switch (kind) {
    case TorKind::CI:
      return "CI";
    case TorKind::TE:
      return "TE";
    case TorKind::B:
      return "B";
    case TorKind::G:
      return "G(" + std::to_string(r) + ")";
    case TorKind::H:
      return "H(" + std::to_string(p) + "," + std::to_string(q) + ")";
    default:
      return "unclassified";
  }
}

TorClass classify_codepth3(const TorAlgebra& T) {
  TorClass c;
  auto dims = T.dims();
  int pd = static_cast<int>(dims.size()) - 1;
  if (pd > 3) throw UnsupportedInput("classify: codepth " + std::to_string(pd) + " > 3");
  auto T1 = T.in_hdeg(1), T2 = T.in_hdeg(2), T3 = T.in_hdeg(3);
  c.l = static_cast<int>(T1.size());
  c.m = static_cast<int>(T2.size());
  c.n = static_cast<int>(T3.size());
  size_t nb = T.basis.size();

  std::vector<SparseVec> prods;
  for (int a : T1)
    for (int b : T1) prods.push_back(T.product(a, b));
  c.p = static_cast<int>(rank_of(prods, nb, T.field));
  prods.clear();
  for (int a : T1)
    for (int f : T2) prods.push_back(T.product(a, f));
  c.q = static_cast<int>(rank_of(prods, nb, T.field));
  // delta(f) in Hom(T_1, T_3), flattened.
  std::vector<int> pos(nb, -1);
  for (size_t k = 0; k < T3.size(); ++k) pos[T3[k]] = static_cast<int>(k);
  std::vector<SparseVec> deltas;
  for (int f : T2) {
    SparseVec v;
    for (size_t a = 0; a < T1.size(); ++a)
      for (auto& [g, x] : T.product(T1[a], f))
        if (pos[g] >= 0) v.emplace_back(static_cast<int>(a * T3.size()) + pos[g], x);
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    deltas.push_back(v);
  }
  c.r = static_cast<int>(rank_of(deltas, T1.size() * std::max<size_t>(T3.size(), 1), T.field));

  std::ostringstream ev;
  ev << "ranks l,m,n = " << c.l << "," << c.m << "," << c.n << "; pairing ranks p,q,r = " << c.p << "," << c.q << ","
     << c.r;
  if (pd <= 2) {
    bool ci = (c.l == 1 && pd == 1) || (c.l == 2 && c.m == 1 && c.p == 1);
    c.kind = ci ? TorKind::CI : TorKind::H;
    if (!ci) c.p = c.q = c.r = 0;
    ev << "; codepth " << pd << (ci ? ": complete intersection" : ": Golod");
    c.evidence = ev.str();
    return c;
  }
  if (c.p == 3 && c.q == 1 && c.r == 3 && c.l == 3 && c.m == 3 && c.n == 1) {
    c.kind = TorKind::CI;
  } else if (c.p == 3 && c.q == 0) {
    // Generic multiplier rank: 3 for H(3,0) (T_1 T_1 = e T_1), 2 for TE.
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dist(-50, 50);
    size_t best = 0;
    for (int trial = 0; trial < 6; ++trial) {
      SparseVec x;
      for (int a : T1) x.emplace_back(a, T.field(dist(rng)));
      std::sort(x.begin(), x.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
      x.erase(std::remove_if(x.begin(), x.end(), [](const auto& t) { return t.second.is_zero(); }), x.end());
      best = std::max(best, multiplication_rank(T, x, T1));
    }
    ev << "; generic multiplier rank " << best;
    if (best >= 3) {
      c.kind = TorKind::H;
      c.r = 0;
    } else {
      c.kind = TorKind::TE;
    }
  } else if (c.p == 1 && c.q == 1 && c.r == 2) {
    c.kind = TorKind::B;
  } else if (c.p == 0 && c.q == 1 && c.r >= 2) {
    c.kind = TorKind::G;
  } else if (c.r == c.q) {
    c.kind = TorKind::H;
  }
  if (c.kind == TorKind::G) c.p = c.q = 0;
  if (c.kind == TorKind::H) c.r = 0;
  if (c.kind == TorKind::CI || c.kind == TorKind::TE || c.kind == TorKind::B) c.p = c.q = c.r = 0;
  c.evidence = ev.str();
  return c;
}

TorAlgebra change_basis(const TorAlgebra& T, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  size_t n = T.basis.size();
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (size_t g = 0; g < n; ++g)
    if (static_cast<int>(g) != T.unit) blocks[{T.basis[g].hdeg, T.basis[g].ideg}].push_back(static_cast<int>(g));
  // New basis vector for each old index (same position, same bidegree).
  std::vector<SparseVec> vec(n);
  vec[T.unit] = unit_vec(T.unit);
  for (auto& [deg, idx] : blocks) {
    size_t k = idx.size();
    std::vector<std::vector<Scalar>> L(k, std::vector<Scalar>(k, Scalar(0))), U = L;
    for (size_t i = 0; i < k; ++i) {
      L[i][i] = U[i][i] = Scalar(1);
      for (size_t j = 0; j < i; ++j) L[i][j] = T.field(dist(rng));
      for (size_t j = i + 1; j < k; ++j) U[i][j] = T.field(dist(rng));
    }
    for (size_t col = 0; col < k; ++col) {
      SparseVec v;
      for (size_t row = 0; row < k; ++row) {
        Scalar s(0);
        for (size_t t = 0; t < k; ++t) s += L[row][t] * U[t][col];
        s = T.field.from(s);
        if (!s.is_zero()) v.emplace_back(idx[row], s);
      }
      vec[idx[col]] = v;
    }
  }
  Echelon e(n, T.field);
  for (auto& v : vec) e.push(v);
  TorAlgebra out;
  out.field = T.field;
  out.basis = T.basis;
  out.unit = T.unit;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      SparseVec prod = mulvec(T, vec[a], vec[b]);
      if (prod.empty()) continue;
      auto x = e.solve(prod);
      if (!x) throw std::logic_error("change_basis: product outside the span");
      if (!x->empty()) out.mult[{static_cast<int>(a), static_cast<int>(b)}] = *x;
    }
  return out;
}

std::string GolodVerdict::str() const {
  std::ostringstream os;
  if (golod)
    os << "golod-through-" << through;
  else
    os << "not-golod (first failure at homological degree " << first_failure << ": " << actual[first_failure] << " < "
       << bound[first_failure] << ")";
  if (bound_violated) os << " [serre bound violated]";
  return os.str();
}

GolodVerdict golod_test(const RingSpec& spec, int N) {
  GolodVerdict v;
  v.through = N;
  v.bound = serre_bound(q_resolution(spec), N);
  v.actual = residue_totals(spec, N);
  for (int i = 0; i <= N; ++i) {
    if (v.actual[i] > v.bound[i]) v.bound_violated = true;
    if (v.actual[i] != v.bound[i] && v.first_failure < 0) v.first_failure = i;
  }
  v.golod = v.first_failure < 0;
  return v;
}

std::optional<std::string> golod_product_obstruction(const TorAlgebra& T) {
  for (auto& [ab, v] : T.mult) {
    auto [a, b] = ab;
    if (a == T.unit || b == T.unit || v.empty()) continue;
    return T.basis[a].label + " * " + T.basis[b].label + " != 0";
  }
  return std::nullopt;
}

std::string DominantVerdict::str(const PolyRing& r, const std::vector<Monomial>& ms) const {
  std::ostringstream os;
  if (!dominant) {
    os << "not dominant: " << ms[failing].str(r) << " has no private pure power";
    return os.str();
  }
  os << "dominant:";
  for (size_t k = 0; k < ms.size(); ++k)
    os << " " << ms[k].str(r) << "<-" << r.vars[witness[k].first] << "^" << witness[k].second;
  return os.str();
}

DominantVerdict dominant_test(const RingPtr& r, const std::vector<Monomial>& ms) {
  auto d = dominance_certificate(r, ms);
  DominantVerdict v;
  v.dominant = d.dominant;
  v.witness = d.witness;
  for (size_t k = 0; k < d.witness.size(); ++k)
    if (d.witness[k].first < 0) {
      v.failing = static_cast<int>(k);
      break;
    }
  return v;
}

bool is_gorenstein(const ChainComplex& A) {
  int pd = A.max_hdeg();
  if (pd < 0 || A.rank(pd) != 1) return false;
  int top = A.gen(A.in_degree(pd)[0]).ideg;
  return BettiTable::of(A).is_symmetric(pd, top);
}

std::vector<Polynomial> socle(const RingSpec& spec, int max_degree) {
  CoeffPtr R = quotient_ring(spec);
  const RingPtr& r = spec.ring;
  if (!R->basis(max_degree + 1).empty()) return {};
  std::vector<Polynomial> out;
  for (int j = 0; j <= max_degree; ++j) {
    const auto& cols = R->basis(j);
    if (cols.empty()) continue;
    std::vector<int> offset;
    size_t rows = 0;
    for (size_t v = 0; v < r->nvars(); ++v) {
      offset.push_back(static_cast<int>(rows));
      rows += R->basis(j + r->weights[v]).size();
    }
    Echelon e(std::max<size_t>(rows, 1), r->field);
    for (auto& m : cols) {
      SparseVec col;
      for (size_t v = 0; v < r->nvars(); ++v) {
        Polynomial p = R->normal_form(Polynomial::term(r, m * Monomial::variable(*r, v)));
        for (auto& [mm, c] : p.terms()) col.emplace_back(offset[v] + R->index_of(mm), c);
      }
      std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      e.push(col);
    }
    for (auto& k : e.kernel()) {
      Polynomial p(r);
      for (auto& [i, c] : k) p.add_term(cols[i], c);
      out.push_back(p);
    }
  }
  return out;
}

AlmostGolodVerdict almost_golod_gorenstein_test(const RingSpec& spec, int N) {
  ChainComplex A = q_resolution(spec);
  if (!is_gorenstein(A)) throw UnsupportedInput("almost golod: ring is not Gorenstein (Betti table not self-dual)");
  AlmostGolodVerdict v;
  std::ostringstream ev;
  int pd = A.max_hdeg();
  AinfStructure s = transfer_ainf_algebra(A, pd + 2, -1);
  auto fc = formality_certificate(s);
  v.formal = fc.certified;
  const TorAlgebra& T = fc.tor;
  // Short Gorenstein: T_+ T_+ inside T_pd, perfect pairing on 0 < i < pd.
  bool ok = true;
  auto top = T.in_hdeg(pd);
  std::vector<int> mid;
  for (int i = 1; i < pd; ++i)
    for (int g : T.in_hdeg(i)) mid.push_back(g);
  std::vector<SparseVec> rows;
  for (int a : mid) {
    SparseVec row;
    for (size_t k = 0; k < mid.size(); ++k)
      for (auto& [g, x] : T.product(a, mid[k])) {
        if (T.basis[g].hdeg != pd) ok = false;
        else row.emplace_back(static_cast<int>(k), x);
      }
    rows.push_back(row);
  }
  for (int a : top)
    for (size_t b = 0; b < T.basis.size(); ++b)
      if (static_cast<int>(b) != T.unit && !T.product(a, static_cast<int>(b)).empty()) ok = false;
  bool perfect = rank_of(rows, std::max<size_t>(mid.size(), 1), T.field) == mid.size();
  v.tor_short_gorenstein = ok && perfect;
  v.tor_route = v.tor_short_gorenstein && v.formal;
  ev << "tor: " << (ok ? "" : "products leave the top degree; ") << (perfect ? "perfect" : "degenerate")
     << " middle pairing; formality " << (v.formal ? "certified" : "not certified") << "\n";

  int n = nvars(spec);
  auto soc = socle(spec, spec.default_ideg_bound(n));
  if (soc.empty()) {
    ev << "socle: ring not artinian within the degree bound; route skipped\n";
  } else {
    std::vector<Polynomial> gens = spec.gens;
    gens.insert(gens.end(), soc.begin(), soc.end());
    auto qs = RingSpec::make(spec.ring, gens);
    v.socle_quotient = golod_test(qs, N);
    v.socle_route = v.socle_quotient.golod;
    ev << "socle: " << soc.size() << " socle generators; R/soc(R) " << v.socle_quotient.str() << "\n";
  }
  v.evidence = ev.str();
  return v;
}

WeightedTor weight_filtration(const TorAlgebra& T) {
  size_t n = T.basis.size();
  std::vector<std::vector<SparseVec>> F(2);
  for (size_t g = 0; g < n; ++g)
    if (static_cast<int>(g) != T.unit) F[1].push_back(unit_vec(static_cast<int>(g)));
  while (!F.back().empty()) {
    Echelon e(n, T.field, false);
    std::vector<SparseVec> next;
    for (auto& u : F.back())
      for (size_t g = 0; g < n; ++g) {
        if (static_cast<int>(g) == T.unit) continue;
        SparseVec p = mulvec(T, u, unit_vec(static_cast<int>(g)));
        if (!p.empty() && e.push(p)) next.push_back(p);
      }
    F.push_back(next);
  }
  WeightedTor w;
  std::vector<SparseVec> adapted{unit_vec(T.unit)};
  w.weight.push_back(0);
  for (size_t k = 1; k + 1 < F.size(); ++k) {
    Echelon e(n, T.field, false);
    for (auto& v : F[k + 1]) e.push(v);
    for (auto& v : F[k])
      if (e.push(v)) {
        adapted.push_back(v);
        w.weight.push_back(static_cast<int>(k));
      }
  }
  Echelon all(n, T.field);
  for (auto& v : adapted) all.push(v);
  w.gr.field = T.field;
  w.gr.unit = 0;
  for (size_t k = 0; k < adapted.size(); ++k) {
    Generator g = T.basis[adapted[k].front().first];
    g.label = "w" + std::to_string(w.weight[k]) + "_" + std::to_string(k);
    w.gr.basis.push_back(g);
    w.ranks[{g.hdeg, w.weight[k]}]++;
  }
  for (size_t a = 0; a < adapted.size(); ++a)
    for (size_t b = 0; b < adapted.size(); ++b) {
      SparseVec p = mulvec(T, adapted[a], adapted[b]);
      if (p.empty()) continue;
      auto x = all.solve(p);
      if (!x) throw std::logic_error("weight filtration: product outside T");
      SparseVec keep;
      for (auto& [i, c] : *x)
        if (w.weight[i] == w.weight[a] + w.weight[b]) keep.emplace_back(i, c);
      if (!keep.empty()) w.gr.mult[{static_cast<int>(a), static_cast<int>(b)}] = keep;
    }
  return w;
}

std::string KoszulEvidence::str() const {
  std::ostringstream os;
  os << (linear ? "linear" : "not linear") << " resolution of k over T through weight " << weight_bound;
  if (!linear) os << " (first off-diagonal class: hdeg " << first_hdeg << ", weight " << first_weight << ")";
  return os.str();
}

KoszulEvidence koszul_algebra_test(const WeightedTor& W, int weight_bound, size_t max_columns) {
  const TorAlgebra& A = W.gr;
  const auto& wt = W.weight;
  int n = static_cast<int>(A.basis.size());
  KoszulEvidence ev;
  ev.ext.push_back(std::vector<int>(weight_bound + 1, 0));
  ev.ext[0][0] = 1;

  // Left multiplication b * x on a free module with coordinates g * n + c.
  auto left = [&](int b, const SparseVec& x) {
    std::map<int, Scalar> acc;
    for (auto& [idx, c] : x) {
      int g = idx / n, c0 = idx % n;
      for (auto& [c1, m] : A.product(b, c0)) acc[g * n + c1] += c * m;
    }
    SparseVec out;
    for (auto& [i, c] : acc)
      if (!c.is_zero()) out.emplace_back(i, c);
    return out;
  };

  std::vector<int> gw{0};  // generator weights of the current free module
  std::map<int, std::vector<SparseVec>> K;
  for (int b = 0; b < n; ++b)
    if (wt[b] >= 1 && wt[b] <= weight_bound) K[wt[b]].push_back(unit_vec(b));
  ev.weight_bound = weight_bound;
  for (int i = 0; i < weight_bound; ++i) {
    size_t rows = gw.size() * n;
    std::vector<int> new_w;
    std::vector<SparseVec> images;
    std::vector<int> row(weight_bound + 1, 0);
    for (int w = 1; w <= weight_bound; ++w) {
      Echelon e(rows, A.field, false);
      // gr T is generated in weight one, so A_+ K = A_1 K.
      for (int b = 0; b < n; ++b) {
        if (wt[b] != 1) continue;
        for (auto& k : K[w - 1]) e.push(left(b, k));
      }
      for (auto& k : K[w])
        if (e.push(k)) {
          new_w.push_back(w);
          images.push_back(k);
          row[w]++;
        }
    }
    ev.ext.push_back(row);
    for (int w = 0; w <= weight_bound; ++w)
      if (row[w] && w != i + 1 && ev.linear) {
        ev.linear = false;
        ev.first_hdeg = i + 1;
        ev.first_weight = w;
      }
    if (!ev.linear || new_w.empty()) return ev;
    size_t cols = 0;
    for (int g : new_w)
      for (int b = 0; b < n; ++b) cols += g + wt[b] <= weight_bound;
    if (cols > max_columns) {
      ev.weight_bound = i + 1;
      return ev;
    }
    std::map<int, std::vector<SparseVec>> next;
    for (int w = 1; w <= weight_bound; ++w) {
      std::vector<int> colidx;
      Echelon e(rows, A.field);
      for (size_t g = 0; g < new_w.size(); ++g)
        for (int b = 0; b < n; ++b)
          if (new_w[g] + wt[b] == w) {
            colidx.push_back(static_cast<int>(g) * n + b);
            e.push(left(b, images[g]));
          }
      for (auto& k : e.kernel()) {
        SparseVec v;
        for (auto& [c, x] : k) v.emplace_back(colidx[c], x);
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        next[w].push_back(v);
      }
    }
    K = std::move(next);
    gw = new_w;
  }
  return ev;
}

const char* ck_name(CKVerdict v) {
  switch (v) {
    case CKVerdict::Certified:
      return "certified";
    case CKVerdict::Refuted:
      return "refuted";
    default:
      return "inconclusive";
  }
}

std::string CohenKoszulReport::text() const {
  std::ostringstream os;
  os << "cohen_koszul: " << ck_name(verdict) << "\nroute: " << route << "\n";
  if (tor_class) os << "class: " << tor_class->name() << " (" << tor_class->evidence << ")\n";
  os << "formality: " << (formal ? "certified" : "not certified") << "\n";
  os << "presentation: " << (presentation.empty() ? "none detected" : presentation) << "\n";
  if (koszul) os << "koszul_T: " << koszul->str() << "\n";
  os << "almost_linear: " << (almost_linear ? "yes" : "no") << "\n";
  return os.str();
}

CohenKoszulReport cohen_koszul_report(const RingSpec& spec, int N) {
  CohenKoszulReport rep;
  ChainComplex A = q_resolution(spec);
  int pd = A.max_hdeg();
  AinfStructure s = transfer_ainf_algebra(A, pd + 2, -1);
  auto fc = formality_certificate(s);
  rep.formal = fc.certified;
  auto det = detect_presentation(s, PresentationClass::Auto, &spec, N);
  if (det.presentation) rep.presentation = det.presentation->recipe;
  int e = 0;
  rep.almost_linear = almost_linear(A, e);

  if (pd <= 3) {
    rep.tor_class = classify_codepth3(fc.tor);
    if (rep.tor_class->kind == TorKind::TE) {
      rep.verdict = CKVerdict::Refuted;
      rep.route = "codepth <= 3, class TE";
    } else if (rep.tor_class->kind != TorKind::Unclassified) {
      rep.verdict = CKVerdict::Certified;
      rep.route = "codepth <= 3, class " + rep.tor_class->name();
    }
    if (rep.verdict != CKVerdict::Inconclusive) return rep;
  }
  if (spec.monomial) {
    auto ms = spec.monomial_generators();
    rep.dominance = dominant_test(spec.ring, ms);
    if (rep.dominance->dominant) {
      rep.verdict = CKVerdict::Certified;
      rep.route = "dominant monomial ideal (" + rep.dominance->str(*spec.ring, ms) + ")";
      return rep;
    }
  }
  if (is_gorenstein(A) && rep.almost_linear && e >= 3) {
    rep.verdict = CKVerdict::Certified;
    rep.route = "Gorenstein with almost linear resolution, generator degree " + std::to_string(e);
    return rep;
  }
  if (rep.formal && det.presentation) rep.koszul = koszul_algebra_test(weight_filtration(fc.tor), 6);
  if (rep.koszul && rep.koszul->linear) {
    rep.verdict = CKVerdict::Certified;
    rep.route = "formal, strict presentation " + rep.presentation + ", T Koszul through weight " +
                std::to_string(rep.koszul->weight_bound);
    return rep;
  }
  rep.route = "no certificate applies";
  return rep;
}

RatSeries series_mul(const RatSeries& a, const RatSeries& b, int N) {
  RatSeries out(N + 1, mpq_class(0));
  for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j) out[i + j] += a[i] * b[j];
  return out;
}

RatSeries series_div(const RatSeries& a, const RatSeries& b, int N) {
  if (b.empty() || b[0] == 0) throw std::invalid_argument("series_div: constant term of the divisor is zero");
  RatSeries q(N + 1, mpq_class(0));
  for (int k = 0; k <= N; ++k) {
    mpq_class v = k < static_cast<int>(a.size()) ? a[k] : mpq_class(0);
    for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j) v -= b[j] * q[k - j];
    q[k] = v / b[0];
  }
  return q;
}

std::string series_str(const RatSeries& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].get_str();
  return out;
}

const char* compare_name(Compare c) {
  switch (c) {
    case Compare::Equal:
      return "equal";
    case Compare::Below:
      return "strictly below";
    case Compare::Violated:
      return "violated";
    default:
      return "skipped";
  }
}

Compare compare_series(const RatSeries& truth, const RatSeries& formula, int N) {
  bool equal = true;
  for (int i = 0; i <= N; ++i) {
    if (truth[i] > formula[i]) return Compare::Violated;
    if (truth[i] != formula[i]) equal = false;
  }
  return equal ? Compare::Equal : Compare::Below;
}

const SeriesComparison* PoincareBundle::find(const std::string& name) const {
  for (auto& i : items)
    if (i.name == name) return &i;
  return nullptr;
}

std::string PoincareBundle::text() const {
  std::ostringstream os;
  os << "P^R_k: " << series_str(truth) << "\n";
  for (auto& i : items) {
    os << i.name << ": " << compare_name(i.verdict) << " through hdeg " << i.bound;
    if (i.verdict != Compare::Skipped) os << "; formula " << i.form << " = " << series_str(i.formula);
    if (!i.reason.empty()) os << " (" << i.reason << ")";
    os << "\n";
  }
  return os.str();
}

namespace {

std::string poly_str(const RatSeries& p) {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    std::string c = abs(p[i]) == 1 && i > 0 ? "" : mpq_class(abs(p[i])).get_str();
    std::string t = i == 0 ? "" : i == 1 ? "t" : "t^" + std::to_string(i);
    s += (p[i] < 0 ? "-" : s.empty() ? "" : "+") + c + t;
  }
  return s.empty() ? "0" : s;
}

}  // namespace

PoincareBundle poincare_formulas(const RingSpec& spec, int N) {
  PoincareBundle b;
  int e = nvars(spec);
  ChainComplex A = q_resolution(spec);
  int pd = A.max_hdeg();
  b.truth = to_rat(residue_totals(spec, N), N);
  AinfStructure s = transfer_ainf_algebra(A, pd + 2, -1);
  auto fc = formality_certificate(s);
  auto wt = weight_filtration(fc.tor);
  RatSeries numer = binomial_series(e, N);
  std::string ename = "(1+t)^" + std::to_string(e);

  int maxdeg = 0;
  for (auto& [iw, r] : wt.ranks) maxdeg = std::max(maxdeg, iw.first + iw.second);
  b.denominator.assign(maxdeg + 1, 0);
  for (auto& [iw, r] : wt.ranks) b.denominator[iw.first + iw.second] += (iw.second % 2 ? -1 : 1) * r;
  RatSeries den(b.denominator.begin(), b.denominator.end());

  SeriesComparison ck{"cohen_koszul", ename + "/(" + poly_str(den) + ")", series_div(numer, den, N), b.truth, N, Compare::Skipped, ""};
  ck.verdict = compare_series(b.truth, ck.formula, N);
  if (ck.verdict == Compare::Violated) {
    bool above = true;
    for (int i = 0; i <= N; ++i) above = above && b.truth[i] >= ck.formula[i];
    ck.reason = above ? "ground truth exceeds the formula" : "formula and ground truth cross";
  }
  b.items.push_back(ck);

  auto sb = serre_bound(A, N);
  RatSeries serre_den(pd + 2, mpq_class(0));
  serre_den[0] = 1;
  for (int i = 1; i <= pd; ++i) serre_den[i + 1] = -A.rank(i);
  SeriesComparison se{"serre", ename + "/(" + poly_str(serre_den) + ")", to_rat(sb, N), b.truth, N, Compare::Skipped, ""};
  se.verdict = compare_series(b.truth, se.formula, N);
  b.items.push_back(se);

  SeriesComparison go{"gorenstein", "", {}, {}, N, Compare::Skipped, ""};
  if (!is_gorenstein(A)) {
    go.reason = "not Gorenstein";
  } else if (pd < 2) {
    go.reason = "regular or hypersurface";
  } else {
    int d = e - pd;
    RatSeries lhs_den = binomial_series(d, N);
    RatSeries t2p = series_mul(RatSeries{0, 0, 1}, b.truth, N);
    for (int i = 0; i <= N; ++i) lhs_den[i] -= t2p[i];
    go.truth = series_div(b.truth, lhs_den, N);
    RatSeries rden(pd + 3, mpq_class(0));
    rden[0] = 1;
    RatSeries bin = binomial_series(pd, pd);
    for (int i = 0; i <= pd; ++i) rden[i + 2] -= bin[i];
    rden[pd + 2] += 1;
    for (int i = 1; i <= pd - 1; ++i) rden[i + 1] -= A.rank(i);
    go.formula = series_div(binomial_series(pd, N), rden, N);
    go.form = "(1+t)^" + std::to_string(pd) + "/(" + poly_str(rden) + ")";
    go.verdict = compare_series(go.truth, go.formula, N);
    go.reason = "left side P/((1+t)^" + std::to_string(d) + " - t^2 P)";
  }
  b.items.push_back(go);

  SeriesComparison in{"inert", "", {}, b.truth, N, Compare::Skipped, ""};
  auto det = detect_presentation(s, PresentationClass::Auto, &spec, N);
  if (!det.presentation) {
    in.reason = "no strict presentation detected";
  } else {
    auto C = priddy_coalgebra(s, *det.presentation, N);
    in.formula = series_mul(to_rat(C.series(), N), numer, N);
    in.form = "C(t)*" + ename + " [" + det.presentation->recipe + "]";
    in.verdict = compare_series(b.truth, in.formula, N);
  }
  b.items.push_back(in);
  return b;
}

}  // namespace sk
