#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sk/twisted.hpp"

namespace sk {

enum class TorKind { CI, TE, B, G, H, Unclassified };

struct TorClass {
  TorKind kind = TorKind::Unclassified;
  int p = 0, q = 0, r = 0;  // parameters of G(r) and H(p, q)
  int l = 0, m = 0, n = 0;  // ranks of T_1, T_2, T_3
  std::string evidence;
  std::string name() const;
  bool operator==(const TorClass& o) const { return kind == o.kind && p == o.p && q == o.q && r == o.r; }
};

// Pairing ranks: p = rank T_1 T_1, q = rank T_1 T_2, r = rank of T_2 -> Hom(T_1, T_3).
// p = 3, q = 0 is TE when no single class multiplies T_1 onto a 3-dimensional space, H(3, 0) otherwise.
TorClass classify_codepth3(const TorAlgebra& T);

// Same algebra in random homogeneous bases (unit fixed).
TorAlgebra change_basis(const TorAlgebra& T, uint64_t seed);

struct GolodVerdict {
  bool golod = false;
  int through = 0;        // last homological degree compared
  int first_failure = -1; // first degree where totals differ
  bool bound_violated = false;
  std::vector<long> actual, bound;
  std::string str() const;
};

GolodVerdict golod_test(const RingSpec& spec, int N);

// A nonzero product of two positive-degree classes of T rules out Golod; returns it, if any.
std::optional<std::string> golod_product_obstruction(const TorAlgebra& T);

struct DominantVerdict {
  bool dominant = false;
  std::vector<std::pair<int, int>> witness;  // (variable, exponent) per generator
  int failing = -1;                         // first generator without a private pure power
  std::string str(const PolyRing& r, const std::vector<Monomial>& ms) const;
};

DominantVerdict dominant_test(const RingPtr& r, const std::vector<Monomial>& ms);

struct AlmostGolodVerdict {
  bool tor_short_gorenstein = false;
  bool formal = false;
  bool tor_route = false;
  std::optional<bool> socle_route;  // empty when the socle quotient could not be resolved
  GolodVerdict socle_quotient;
  std::string evidence;
  bool verdict() const { return socle_route ? *socle_route : tor_route; }
  bool routes_agree() const { return !socle_route || *socle_route == tor_route; }
};

// Throws UnsupportedInput unless the Betti table is symmetric with rank one in top degree.
AlmostGolodVerdict almost_golod_gorenstein_test(const RingSpec& spec, int N);

// Degreewise basis of the socle of an artinian Q/I; empty if R is not artinian below `max_degree`.
std::vector<Polynomial> socle(const RingSpec& spec, int max_degree);
bool is_gorenstein(const ChainComplex& A);

// Weight grading of T from the powers of T_+: rank of [T_+^w / T_+^{w+1}]_i.
struct WeightedTor {
  TorAlgebra gr;            // associated graded algebra in an adapted basis
  std::vector<int> weight;  // per basis element of gr
  std::map<std::pair<int, int>, int> ranks;  // (i, w) -> rank
};

WeightedTor weight_filtration(const TorAlgebra& T);

struct KoszulEvidence {
  bool linear = true;
  int weight_bound = 0;  // weights checked
  int first_hdeg = -1, first_weight = -1;
  std::vector<std::vector<int>> ext;  // ext[i][w]
  std::string str() const;
};

// Minimal resolution of k over a weight-graded algebra through the given weight; stops early when the
// free modules exceed `max_columns` and records the weight actually reached.
KoszulEvidence koszul_algebra_test(const WeightedTor& T, int weight_bound, size_t max_columns = 4000);

enum class CKVerdict { Certified, Refuted, Inconclusive };
const char* ck_name(CKVerdict v);

struct CohenKoszulReport {
  CKVerdict verdict = CKVerdict::Inconclusive;
  std::string route;
  std::optional<TorClass> tor_class;
  std::optional<DominantVerdict> dominance;
  bool formal = false;
  std::string presentation;
  std::optional<KoszulEvidence> koszul;
  bool almost_linear = false;
  std::string text() const;
};

CohenKoszulReport cohen_koszul_report(const RingSpec& spec, int N);

using RatSeries = std::vector<mpq_class>;

RatSeries series_mul(const RatSeries& a, const RatSeries& b, int N);
RatSeries series_div(const RatSeries& a, const RatSeries& b, int N);
std::string series_str(const RatSeries& s);

enum class Compare { Equal, Below, Violated, Skipped };
const char* compare_name(Compare c);

struct SeriesComparison {
  std::string name;
  std::string form;  // rational-function form of the formula side
  RatSeries formula, truth;
  int bound = 0;
  Compare verdict = Compare::Skipped;
  std::string reason;
};

Compare compare_series(const RatSeries& truth, const RatSeries& formula, int N);

struct PoincareBundle {
  RatSeries truth;  // P^R_k from the minimal resolution of k
  std::vector<SeriesComparison> items;
  std::vector<long> denominator;  // sum (-1)^w rank T_{i,(w)} t^{i+w}
  const SeriesComparison* find(const std::string& name) const;
  std::string text() const;
};

// Cohen Koszul formula, Serre bound, Gorenstein bound and the inertness identity against ground truth.
PoincareBundle poincare_formulas(const RingSpec& spec, int N);

}  // namespace sk
