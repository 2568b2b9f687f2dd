#include "sk/koszul.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace sk {

int word_hdeg(const ChainComplex& A, const Word& w) {
  int h = 0;
  for (int g : w) h += A.gen(g).hdeg + 1;
  return h;
}

int word_ideg(const ChainComplex& A, const Word& w) {
  int j = 0;
  for (int g : w) j += A.gen(g).ideg;
  return j;
}

std::string word_str(const ChainComplex& A, const Word& w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "|" : "") + A.gen(w[i]).label;
  return s + "]";
}

namespace {

Polynomial signed_poly(const Polynomial& p, int parity) { return parity % 2 ? -p : p; }

void add_word(WordVec& acc, const Word& w, const Polynomial& p) {
  if (p.is_zero()) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) acc.erase(it);
}

// Words over `letters` with hdeg <= hmax and ideg <= jmax (jmax < 0: unbounded), grouped by (weight, hdeg, ideg).
std::map<std::tuple<int, int, int>, std::vector<Word>> enumerate_words(const ChainComplex& A,
                                                                       const std::vector<int>& letters, int hmax,
                                                                       int jmax) {
  std::map<std::tuple<int, int, int>, std::vector<Word>> out;
  Word cur;
  std::function<void(int, int)> rec = [&](int h, int j) {
    out[{static_cast<int>(cur.size()), h, j}].push_back(cur);
    for (int g : letters) {
      int h2 = h + A.gen(g).hdeg + 1, j2 = j + A.gen(g).ideg;
      if (h2 > hmax || (jmax >= 0 && j2 > jmax)) continue;
      cur.push_back(g);
      rec(h2, j2);
      cur.pop_back();
    }
  };
  rec(0, 0);
  for (auto& [k, ws] : out) std::sort(ws.begin(), ws.end());
  return out;
}

int needed_arity(const AinfStructure& s, int hdeg_bound) {
  int max_weight = hdeg_bound / 2;
  return std::min(max_weight, (s.pd() + 2) / 2);
}

void check_arity(const AinfStructure& s, int hdeg_bound) {
  if (s.arity < needed_arity(s, hdeg_bound))
    throw std::invalid_argument("bar construction: A-infinity structure known to arity " + std::to_string(s.arity) +
                                ", need " + std::to_string(needed_arity(s, hdeg_bound)));
}

// The W tensors in word coordinates: the coefficient of a (x) b becomes (-1)^{|a|} times that of [a|b].
std::vector<Tensor2> shifted(const ChainComplex& A, const std::vector<Tensor2>& W) {
  std::vector<Tensor2> out;
  for (auto& w : W) {
    Tensor2 t;
    for (auto& [ab, c] : w) t[ab] = A.gen(ab.first).hdeg % 2 ? -c : c;
    out.push_back(t);
  }
  return out;
}

using PairDeg = std::pair<int, int>;

PairDeg pair_deg(const ChainComplex& A, int a, int b) {
  return {A.gen(a).hdeg + A.gen(b).hdeg, A.gen(a).ideg + A.gen(b).ideg};
}

// Basis of the annihilator of span(ws) inside the two-letter words over V, per bidegree.
std::map<PairDeg, std::vector<Tensor2>> annihilator(const ChainComplex& A, const std::vector<int>& V,
                                                    const std::vector<Tensor2>& ws) {
  std::map<PairDeg, std::vector<std::pair<int, int>>> pairs;
  for (int a : V)
    for (int b : V) pairs[pair_deg(A, a, b)].emplace_back(a, b);
  std::map<PairDeg, std::vector<const Tensor2*>> by_deg;
  for (auto& w : ws) {
    if (w.empty()) continue;
    PairDeg d = pair_deg(A, w.begin()->first.first, w.begin()->first.second);
    for (auto& [ab, c] : w)
      if (pair_deg(A, ab.first, ab.second) != d) throw std::invalid_argument("quadratic presentation: W tensor not homogeneous");
    by_deg[d].push_back(&w);
  }
  std::map<PairDeg, std::vector<Tensor2>> out;
  for (auto& [d, ps] : pairs) {
    auto& rel = by_deg[d];
    Echelon e(rel.size(), A.field());
    for (auto& ab : ps) {
      SparseVec col;
      for (size_t r = 0; r < rel.size(); ++r)
        if (auto it = rel[r]->find(ab); it != rel[r]->end() && !it->second.is_zero())
          col.emplace_back(static_cast<int>(r), it->second);
      e.push(col);
    }
    for (auto& k : e.kernel()) {
      Tensor2 f;
      for (auto& [i, c] : k) f[ps[i]] = c;
      out[d].push_back(f);
    }
  }
  return out;
}

// Columns (one per word) of the conditions "slots i, i+1 are annihilated by every functional in perp".
std::vector<SparseVec> slot_conditions(const ChainComplex& A, const std::vector<Word>& words,
                                       const std::map<PairDeg, std::vector<Tensor2>>& perp, size_t& nrows) {
  std::map<std::vector<int>, int> rows;
  std::vector<SparseVec> cols;
  for (auto& w : words) {
    std::map<int, Scalar> col;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      auto it = perp.find(pair_deg(A, w[i], w[i + 1]));
      if (it == perp.end()) continue;
      for (size_t f = 0; f < it->second.size(); ++f) {
        auto c = it->second[f].find({w[i], w[i + 1]});
        if (c == it->second[f].end()) continue;
        PairDeg pd = pair_deg(A, w[i], w[i + 1]);
        std::vector<int> key{static_cast<int>(i), static_cast<int>(f), pd.first, pd.second};
        for (size_t l = 0; l < w.size(); ++l)
          if (l != i && l != i + 1) key.push_back(w[l]);
        auto [r, fresh] = rows.emplace(key, static_cast<int>(rows.size()));
        col[r->second] = c->second;
      }
    }
    cols.emplace_back(col.begin(), col.end());
  }
  nrows = rows.size();
  return cols;
}

// Basis of C^n in one (weight, hdeg, ideg) block: kernel of the slot conditions.
std::vector<CoBasisVector> intersection_basis(const ChainComplex& A, const std::vector<Word>& words,
                                              const std::map<PairDeg, std::vector<Tensor2>>& perp) {
  std::vector<CoBasisVector> out;
  if (words.empty()) return out;
  size_t nrows = 0;
  auto cols = slot_conditions(A, words, perp, nrows);
  Echelon e(nrows, A.field());
  for (auto& c : cols) e.push(c);
  for (auto& k : e.kernel()) {
    CoBasisVector b;
    b.weight = static_cast<int>(words[0].size());
    b.hdeg = word_hdeg(A, words[0]);
    b.ideg = word_ideg(A, words[0]);
    for (auto& [i, c] : k) b.terms.emplace_back(words[i], c);
    // The free column carries 1 and has the largest index; the other entries sit on pivot columns.
    b.pivot = words[k.back().first];
    out.push_back(std::move(b));
  }
  return out;
}

// Dimension of the span of the slot-placed relations inside the words of one block.
size_t ideal_dim(const ChainComplex& A, const std::vector<Word>& words, const std::map<PairDeg, std::vector<Tensor2>>& rel) {
  std::map<Word, int> index;
  for (size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);
  std::set<std::vector<int>> done;
  Echelon e(words.size(), A.field(), false);
  for (auto& w : words)
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      auto it = rel.find(pair_deg(A, w[i], w[i + 1]));
      if (it == rel.end()) continue;
      for (size_t f = 0; f < it->second.size(); ++f) {
        std::vector<int> key{static_cast<int>(i), static_cast<int>(f), pair_deg(A, w[i], w[i + 1]).first,
                             pair_deg(A, w[i], w[i + 1]).second};
        for (size_t l = 0; l < w.size(); ++l)
          if (l != i && l != i + 1) key.push_back(w[l]);
        if (!done.insert(key).second) continue;
        std::map<int, Scalar> v;
        for (auto& [ab, c] : it->second[f]) {
          Word x = w;
          x[i] = ab.first;
          x[i + 1] = ab.second;
          v[index.at(x)] = c;
        }
        e.push(SparseVec(v.begin(), v.end()));
      }
    }
  return e.rank();
}

std::map<PairDeg, std::vector<Tensor2>> group_by_deg(const ChainComplex& A, const std::vector<Tensor2>& ws) {
  std::map<PairDeg, std::vector<Tensor2>> out;
  for (auto& w : ws)
    if (!w.empty()) out[pair_deg(A, w.begin()->first.first, w.begin()->first.second)].push_back(w);
  return out;
}

void finish(CurvedCoalgebra& c) {
  std::stable_sort(c.basis.begin(), c.basis.end(), [](const CoBasisVector& x, const CoBasisVector& y) {
    return std::tie(x.weight, x.hdeg, x.ideg, x.pivot) < std::tie(y.weight, y.hdeg, y.ideg, y.pivot);
  });
  for (size_t b = 0; b < c.basis.size(); ++b) c.pivot_index[c.basis[b].pivot] = static_cast<int>(b);
  const AinfStructure& s = *c.alg;
  c.coderivation.resize(c.basis.size());
  c.curvature.resize(c.basis.size());
  for (size_t b = 0; b < c.basis.size(); ++b) {
    WordVec x = c.word_vector(static_cast<int>(b));
    c.coderivation[b] = c.coordinates(bar_differential(s, x));
    Polynomial h(s.A.ring());
    for (auto& [w, p] : x) h += p * bar_curvature(s, w);
    c.curvature[b] = h;
  }
}

}  // namespace

WordVec CurvedCoalgebra::word_vector(int b) const {
  WordVec x;
  const RingPtr& R = alg->A.ring();
  for (auto& [w, c] : basis[b].terms) x.emplace(w, Polynomial::constant(R, c));
  return x;
}

std::map<int, Polynomial> CurvedCoalgebra::coordinates(const WordVec& x) const {
  std::map<int, Polynomial> out;
  for (auto& [w, p] : x) {
    auto it = pivot_index.find(w);
    if (it != pivot_index.end()) out[it->second] = p;
  }
  if (!is_bar) {
    WordVec back;
    for (auto& [b, p] : out)
      for (auto& [w, c] : basis[b].terms) add_word(back, w, p.scaled(c));
    for (auto& [w, p] : x) add_word(back, w, -p);
    if (!back.empty())
      throw StrictnessError("coalgebra: element leaves the subcoalgebra at " + word_str(alg->A, back.begin()->first));
  }
  return out;
}

std::string CurvedCoalgebra::label(int b) const {
  const auto& v = basis[b];
  std::string s = word_str(alg->A, v.pivot);
  if (v.terms.size() > 1) s += "+" + std::to_string(v.terms.size() - 1);
  return s;
}

std::vector<long> CurvedCoalgebra::series() const {
  std::vector<long> out(hdeg_bound + 1, 0);
  for (auto& b : basis) out[b.hdeg]++;
  return out;
}

std::vector<int> CurvedCoalgebra::in_hdeg(int i) const {
  std::vector<int> out;
  for (size_t b = 0; b < basis.size(); ++b)
    if (basis[b].hdeg == i) out.push_back(static_cast<int>(b));
  return out;
}

WordVec bar_differential(const AinfStructure& s, const WordVec& x) {
  const ChainComplex& A = s.A;
  WordVec out;
  for (auto& [w, coef] : x) {
    size_t n = w.size();
    int prefix = 0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 1; i + k <= n; ++k) {
        Tuple t(w.begin() + i, w.begin() + i + k);
        Element m = s.m(t);
        if (s.unit >= 0) m.erase(s.unit);
        if (m.empty()) continue;
        int inner = 0;
        for (size_t l = 0; l < k; ++l) inner += static_cast<int>(k - 1 - l) * (A.gen(t[l]).hdeg + 1);
        int parity = static_cast<int>(k * (k + 1) / 2) + prefix + inner;
        for (auto& [g, p] : m) {
          Word v(w.begin(), w.begin() + i);
          v.push_back(g);
          v.insert(v.end(), w.begin() + i + k, w.end());
          add_word(out, v, signed_poly(coef * p, parity));
        }
      }
      prefix += A.gen(w[i]).hdeg + 1;
    }
  }
  return out;
}

Polynomial bar_curvature(const AinfStructure& s, const Word& w) {
  if (w.size() != 1 || s.unit < 0) return Polynomial(s.A.ring());
  auto it = s.A.d(w[0]).find(s.unit);
  return it == s.A.d(w[0]).end() ? Polynomial(s.A.ring()) : it->second;
}

CurvedCoalgebra bar_construction(const AinfStructure& s, int hdeg_bound, int ideg_bound) {
  check_arity(s, hdeg_bound);
  CurvedCoalgebra c;
  c.alg = std::make_shared<const AinfStructure>(s);
  c.hdeg_bound = hdeg_bound;
  c.ideg_bound = ideg_bound;
  c.is_bar = true;
  for (auto& [key, ws] : enumerate_words(s.A, s.bar_basis(), hdeg_bound, ideg_bound))
    for (auto& w : ws) {
      CoBasisVector b;
      b.weight = std::get<0>(key);
      b.hdeg = std::get<1>(key);
      b.ideg = std::get<2>(key);
      b.terms = {{w, Scalar(1)}};
      b.pivot = w;
      c.basis.push_back(std::move(b));
    }
  finish(c);
  return c;
}

CoalgebraReport verify_curved_coalgebra(const CurvedCoalgebra& c) {
  CoalgebraReport rep;
  const AinfStructure& s = *c.alg;
  const RingPtr& R = s.A.ring();
  for (size_t b = 0; b < c.basis.size(); ++b) {
    ++rep.checked;
    WordVec x = c.word_vector(static_cast<int>(b));
    WordVec dx = bar_differential(s, x);
    WordVec lhs = bar_differential(s, dx);
    for (auto& [w, p] : x) {
      if (w.empty()) continue;
      add_word(lhs, Word(w.begin() + 1, w.end()), -(p * bar_curvature(s, Word{w.front()})));
      add_word(lhs, Word(w.begin(), w.end() - 1), p * bar_curvature(s, Word{w.back()}));
    }
    if (!lhs.empty()) {
      rep.ok = false;
      rep.violation = "d^2 != (h(x)1 - 1(x)h)Delta on " + c.label(static_cast<int>(b)) + " at " +
                      word_str(s.A, lhs.begin()->first);
      return rep;
    }
    Polynomial hd(R);
    for (auto& [w, p] : dx) hd += p * bar_curvature(s, w);
    if (!hd.is_zero()) {
      rep.ok = false;
      rep.violation = "h d != 0 on " + c.label(static_cast<int>(b)) + ": " + hd.str();
      return rep;
    }
  }
  return rep;
}

bool coalgebra_is_minimal(const CurvedCoalgebra& c) {
  for (auto& row : c.coderivation)
    for (auto& [b, p] : row)
      if (!p.constant_term().is_zero()) return false;
  return true;
}

CurvedCoalgebra priddy_coalgebra(const AinfStructure& s, const QuadraticPresentation& p, int hdeg_bound,
                                 int ideg_bound) {
  check_arity(s, hdeg_bound);
  auto rep = check_strict_presentation(s, p, hdeg_bound);
  if (!rep.ok) throw StrictnessError("priddy coalgebra: presentation is not strict: " + rep.violation);
  CurvedCoalgebra c;
  c.alg = std::make_shared<const AinfStructure>(s);
  c.hdeg_bound = hdeg_bound;
  c.ideg_bound = ideg_bound;
  c.is_bar = false;
  auto perp = annihilator(s.A, p.V, shifted(s.A, p.W));
  for (auto& [key, ws] : enumerate_words(s.A, p.V, hdeg_bound, ideg_bound))
    for (auto& b : intersection_basis(s.A, ws, perp)) c.basis.push_back(std::move(b));
  finish(c);
  return c;
}

StrictReport check_strict_presentation(const AinfStructure& s, const QuadraticPresentation& p, int hdeg_bound) {
  StrictReport rep;
  const ChainComplex& A = s.A;
  std::set<int> inV(p.V.begin(), p.V.end());
  auto fail = [&](const std::string& what) {
    rep.ok = false;
    rep.violation = what;
    return rep;
  };
  for (int v : p.V) {
    if (v == s.unit) return fail("V contains the unit");
    for (auto& [g, q] : A.d(v))
      if (g != s.unit && !inV.count(g)) return fail("m1(" + A.gen(v).label + ") leaves V");
  }
  for (auto& w : p.W)
    for (auto& [ab, c] : w)
      if (!inV.count(ab.first) || !inV.count(ab.second)) return fail("W is not inside V (x) V");

  // m-bar_n(C^n) in V.
  auto perp = annihilator(A, p.V, shifted(A, p.W));
  for (auto& [key, ws] : enumerate_words(A, p.V, hdeg_bound, -1)) {
    int n = std::get<0>(key);
    if (n < 2 || n > s.arity) continue;
    for (auto& b : intersection_basis(A, ws, perp)) {
      Element out;
      for (auto& [w, c] : b.terms) {
        int inner = 0;
        for (int l = 0; l < n; ++l) inner += (n - 1 - l) * (A.gen(w[l]).hdeg + 1);
        add_scaled(out, s.m(Tuple(w.begin(), w.end())), Polynomial::constant(A.ring(), inner % 2 ? -c : c));
      }
      for (auto& [g, q] : out)
        if (g != s.unit && !q.is_zero() && !inV.count(g))
          return fail("m" + std::to_string(n) + " of " + word_str(A, b.pivot) + "+... leaves V through " + A.gen(g).label);
    }
  }

  // m_n (x) k = 0 for n >= 3.
  for (auto& [t, x] : s.ops)
    if (t.size() >= 3)
      for (auto& [g, q] : x)
        if (!q.constant_term().is_zero()) return fail("m" + std::to_string(t.size()) + " (x) k nonzero on " + s.tuple_str(t));

  // A (x) k = T(V (x) k)/(W (x) k) with the product from m_2 (x) k.
  Field f = A.field();
  auto product = [&](const SparseVec& x, int b) {
    SparseVec out;
    for (auto& [a, c] : x) {
      SparseVec y;
      for (auto& [g, q] : s.m(Tuple{a, b})) {
        Scalar k0 = q.constant_term();
        if (!k0.is_zero()) y.emplace_back(g, k0);
      }
      std::sort(y.begin(), y.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
      out = sparse_axpy(out, c, y);
    }
    return out;
  };
  auto relations = group_by_deg(A, p.W);
  for (auto& w : p.W) {
    SparseVec acc;
    for (auto& [ab, c] : w) acc = sparse_axpy(acc, c, product({{ab.first, Scalar(1)}}, ab.second));
    if (!sparse_is_zero(acc)) return fail("m2 (x) k does not vanish on a W tensor");
  }
  // Unshifted bidegree -> images of all weights.
  std::map<std::pair<int, int>, std::vector<SparseVec>> images;
  std::map<std::pair<int, int>, size_t> rank_sum;
  int max_h = std::min(A.max_hdeg(), hdeg_bound / 2);
  for (auto& [key, ws] : enumerate_words(A, p.V, 2 * max_h, -1)) {
    int n = std::get<0>(key);
    if (n == 0) continue;
    int h = std::get<1>(key) - n, j = std::get<2>(key);
    if (h > max_h) continue;
    std::vector<SparseVec> cols;
    for (auto& w : ws) {
      SparseVec x{{w[0], Scalar(1)}};
      for (size_t l = 1; l < w.size(); ++l) x = product(x, w[l]);
      cols.push_back(x);
    }
    Echelon e(A.size(), f, false);
    for (auto& c : cols) e.push(c);
    size_t dim_ideal = n >= 2 ? ideal_dim(A, ws, relations) : 0;
    if (ws.size() - e.rank() != dim_ideal)
      return fail("T(V)/(W) and A (x) k differ in weight " + std::to_string(n) + ", bidegree (" + std::to_string(h) +
                  "," + std::to_string(j) + ")");
    rank_sum[{h, j}] += e.rank();
    auto& im = images[{h, j}];
    im.insert(im.end(), cols.begin(), cols.end());
  }
  for (auto& [hj, cols] : images) {
    Echelon e(A.size(), f, false);
    for (auto& c : cols) e.push(c);
    size_t expected = 0;
    for (int g : A.in_degree(hj.first))
      if (A.gen(g).ideg == hj.second && g != s.unit) ++expected;
    if (e.rank() != rank_sum[hj] || e.rank() != expected)
      return fail("products of V do not give a basis of A (x) k in bidegree (" + std::to_string(hj.first) + "," +
                  std::to_string(hj.second) + ")");
  }
  for (int i = 1; i <= max_h; ++i)
    for (int g : A.in_degree(i))
      if (!images.count({i, A.gen(g).ideg})) return fail(A.gen(g).label + " is not a product of elements of V");
  return rep;
}

QuadraticDual quadratic_dual(const AinfStructure& s, const QuadraticPresentation& p, int hdeg_bound) {
  QuadraticDual q;
  q.generators = p.V;
  auto perp = annihilator(s.A, p.V, shifted(s.A, p.W));
  for (auto& [d, fs] : perp) q.relations.insert(q.relations.end(), fs.begin(), fs.end());
  q.series.assign(hdeg_bound + 1, 0);
  for (auto& [key, ws] : enumerate_words(s.A, p.V, hdeg_bound, -1)) {
    size_t dim = ws.size();
    if (std::get<0>(key) >= 2) dim -= ideal_dim(s.A, ws, perp);
    q.series[std::get<1>(key)] += static_cast<long>(dim);
  }
  return q;
}

namespace {

std::vector<int> gens_between(const ChainComplex& A, int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi && i <= A.max_hdeg(); ++i)
    for (int g : A.in_degree(i)) out.push_back(g);
  return out;
}

std::optional<QuadraticPresentation> ci_recipe(const AinfStructure& s, std::string& why) {
  const ChainComplex& A = s.A;
  std::vector<int> V = A.max_hdeg() >= 1 ? A.in_degree(1) : std::vector<int>{};
  int c = static_cast<int>(V.size());
  // Graded Betti numbers of the Koszul complex on the generators.
  std::map<std::pair<int, int>, int> expect;
  for (unsigned mask = 0; mask < (1u << c); ++mask) {
    int h = 0, j = 0;
    for (int i = 0; i < c; ++i)
      if (mask >> i & 1u) {
        ++h;
        j += A.gen(V[i]).ideg;
      }
    expect[{h, j}]++;
  }
  std::map<std::pair<int, int>, int> have;
  for (auto& g : A.gens()) have[{g.hdeg, g.ideg}]++;
  if (have != expect) {
    why += "CI: graded Betti numbers differ from the Koszul complex on the generators\n";
    return std::nullopt;
  }
  QuadraticPresentation p{"CI", V, {}};
  for (int i = 0; i < c; ++i) {
    p.W.push_back({{{V[i], V[i]}, Scalar(1)}});
    for (int j = i + 1; j < c; ++j) p.W.push_back({{{V[i], V[j]}, Scalar(1)}, {{V[j], V[i]}, Scalar(1)}});
  }
  return p;
}

std::optional<QuadraticPresentation> golod_recipe(const AinfStructure& s, const RingSpec* spec, int hdeg_bound,
                                                  std::string& why) {
  const ChainComplex& A = s.A;
  // m_2 (x) k is the product on Tor, zero for Golod rings; if every m_n (x) k vanishes the ring is Golod.
  bool m2_nonzero = false;
  bool all_vanish = s.arity >= (s.pd() + 2) / 2;
  for (auto& [t, v] : s.ops)
    for (auto& [g, p] : v)
      if (!p.constant_term().is_zero()) {
        all_vanish = false;
        if (t.size() == 2) m2_nonzero = true;
      }
  if (m2_nonzero) {
    why += "Golod: m_2 (x) k is nonzero\n";
    return std::nullopt;
  }
  if (spec && !all_vanish) {
    int D = spec->default_ideg_bound(hdeg_bound);
    auto k = resolve_over_quotient(*spec, hdeg_bound, D);
    auto serre = serre_bound(A, hdeg_bound);
    for (int i = 0; i <= hdeg_bound; ++i)
      if ((i <= k.max_hdeg() ? k.rank(i) : 0) != serre[i]) {
        why += "Golod: Poincare series differs from the Serre bound at t^" + std::to_string(i) + "\n";
        return std::nullopt;
      }
  }
  QuadraticPresentation p{"Golod", s.bar_basis(), {}};
  for (int a : p.V)
    for (int b : p.V) p.W.push_back({{{a, b}, Scalar(1)}});
  return p;
}

std::optional<QuadraticPresentation> gorenstein_recipe(const AinfStructure& s, bool pd3, std::string& why) {
  const ChainComplex& A = s.A;
  int d = A.max_hdeg();
  std::string tag = pd3 ? "Gorenstein pd 3" : "almost Golod Gorenstein";
  if (pd3 && d != 3) {
    why += tag + ": projective dimension is " + std::to_string(d) + "\n";
    return std::nullopt;
  }
  if (d < 2 || A.rank(d) != 1) {
    why += tag + ": top Betti number is not 1\n";
    return std::nullopt;
  }
  int omega = A.in_degree(d)[0];
  auto pairing = [&](int a, int b) {
    auto x = s.m(Tuple{a, b});
    auto it = x.find(omega);
    return it == x.end() ? Polynomial(A.ring()) : it->second;
  };
  for (int i = 1; i < d; ++i) {
    const auto& as = A.in_degree(i);
    const auto& bs = A.in_degree(d - i);
    if (as.size() != bs.size()) {
      why += tag + ": Betti numbers are not symmetric\n";
      return std::nullopt;
    }
    Echelon e(as.size(), A.field(), false);
    for (int b : bs) {
      SparseVec col;
      for (size_t r = 0; r < as.size(); ++r) {
        Scalar c = pairing(as[r], b).constant_term();
        if (!c.is_zero()) col.emplace_back(static_cast<int>(r), c);
      }
      e.push(col);
    }
    if (e.rank() != as.size()) {
      why += tag + ": pairing A_" + std::to_string(i) + " x A_" + std::to_string(d - i) + " is not perfect\n";
      return std::nullopt;
    }
  }
  QuadraticPresentation p{pd3 ? "GorensteinPD3" : "AlmostGolodGorenstein", gens_between(A, 1, d - 1), {}};
  std::map<PairDeg, std::vector<std::pair<int, int>>> pairs;
  for (int a : p.V)
    for (int b : p.V) pairs[pair_deg(A, a, b)].emplace_back(a, b);
  for (auto& [deg, ps] : pairs) {
    std::vector<Scalar> phi;
    bool any = false;
    for (auto& [a, b] : ps) {
      Polynomial q = pairing(a, b);
      if (!q.is_zero() && !q.is_constant()) {
        why += tag + ": pairing has non-constant entries in this basis\n";
        return std::nullopt;
      }
      phi.push_back(q.constant_term());
      any = any || !phi.back().is_zero();
    }
    if (!any) {
      for (auto& ab : ps) p.W.push_back({{ab, Scalar(1)}});
      continue;
    }
    Echelon e(1, A.field());
    for (auto& c : phi) e.push(c.is_zero() ? SparseVec{} : SparseVec{{0, c}});
    for (auto& k : e.kernel()) {
      Tensor2 t;
      for (auto& [i, c] : k) t[ps[i]] = c;
      p.W.push_back(t);
    }
  }
  return p;
}

}  // namespace

DetectResult detect_presentation(const AinfStructure& s, PresentationClass hint, const RingSpec* spec,
                                 int hdeg_bound) {
  DetectResult res;
  std::vector<PresentationClass> order;
  if (hint == PresentationClass::Auto)
    order = {PresentationClass::CI, PresentationClass::Golod, PresentationClass::GorensteinPD3,
             PresentationClass::AlmostGolodGorenstein};
  else
    order = {hint};
  for (auto cls : order) {
    std::optional<QuadraticPresentation> p;
    switch (cls) {
      case PresentationClass::CI:
        p = ci_recipe(s, res.report);
        break;
      case PresentationClass::Golod:
        p = golod_recipe(s, spec, hdeg_bound, res.report);
        break;
      case PresentationClass::GorensteinPD3:
        p = gorenstein_recipe(s, true, res.report);
        break;
      case PresentationClass::AlmostGolodGorenstein:
        p = gorenstein_recipe(s, false, res.report);
        break;
      case PresentationClass::Auto:
        break;
    }
    if (!p) continue;
    auto rep = check_strict_presentation(s, *p, hdeg_bound);
    if (rep.ok) {
      res.report += p->recipe + ": strict presentation certified\n";
      res.presentation = std::move(p);
      return res;
    }
    res.report += p->recipe + ": not strict: " + rep.violation + "\n";
  }
  return res;
}

std::string dump_coalgebra(const CurvedCoalgebra& c) {
  std::ostringstream os;
  os << "weight,label,hdeg,ideg,coderivation,curvature\n";
  for (size_t b = 0; b < c.basis.size(); ++b) {
    os << c.basis[b].weight << ',' << c.label(static_cast<int>(b)) << ',' << c.basis[b].hdeg << ','
       << c.basis[b].ideg << ',';
    bool first = true;
    for (auto& [t, p] : c.coderivation[b]) {
      os << (first ? "" : " + ") << '(' << p.str() << ")*" << c.label(t);
      first = false;
    }
    if (first) os << '0';
    os << ',' << (c.curvature[b].is_zero() ? "0" : c.curvature[b].str()) << '\n';
  }
  return os.str();
}

}  // namespace sk
