#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sk/ainfinity.hpp"

namespace sk {

// Bar word [a_1|...|a_n] over non-unit generators of A; degrees are those of (Sigma A-bar)^{(x)n}.
using Word = std::vector<int>;
using WordVec = std::map<Word, Polynomial>;
// Tensor in V (x) V with scalar coefficients, unshifted.
using Tensor2 = std::map<std::pair<int, int>, Scalar>;

int word_hdeg(const ChainComplex& A, const Word& w);
int word_ideg(const ChainComplex& A, const Word& w);
std::string word_str(const ChainComplex& A, const Word& w);

// V spanned by a subset of generators of A-bar; W spanned by the listed tensors.
struct QuadraticPresentation {
  std::string recipe;
  std::vector<int> V;
  std::vector<Tensor2> W;
};

struct CoBasisVector {
  int weight = 0;
  int hdeg = 0;
  int ideg = 0;
  std::vector<std::pair<Word, Scalar>> terms;  // increasing words; 1 at `pivot`
  Word pivot;                                  // no other basis vector involves this word
};

// Connected curved coalgebra inside B(A), with structure maps in basis coordinates.
struct CurvedCoalgebra {
  std::shared_ptr<const AinfStructure> alg;
  int hdeg_bound = 0;
  int ideg_bound = -1;
  bool is_bar = true;
  std::vector<CoBasisVector> basis;  // weight, hdeg, ideg, pivot order; basis[0] is the empty word
  std::vector<std::map<int, Polynomial>> coderivation;
  std::vector<Polynomial> curvature;
  std::map<Word, int> pivot_index;

  WordVec word_vector(int b) const;
  // Coordinates of x in the basis; throws when x has a component outside C.
  std::map<int, Polynomial> coordinates(const WordVec& x) const;
  std::string label(int b) const;
  std::vector<long> series() const;  // rank per homological degree
  std::vector<int> in_hdeg(int i) const;
};

// Coderivation of B(A) on word combinations: sum of (-1)^{k(k+1)/2} id^i (x) Sigma m-bar_k Sigma^{-k} (x) id^j.
WordVec bar_differential(const AinfStructure& s, const WordVec& x);
// Curvature on a word: the A_0-component of d on weight-one words of degree two, zero otherwise.
Polynomial bar_curvature(const AinfStructure& s, const Word& w);

CurvedCoalgebra bar_construction(const AinfStructure& s, int hdeg_bound, int ideg_bound = -1);

struct CoalgebraReport {
  bool ok = true;
  std::string violation;
  long checked = 0;
};

// d^2 = (h (x) id - id (x) h) Delta and h d = 0 on every basis vector.
CoalgebraReport verify_curved_coalgebra(const CurvedCoalgebra& c);
// Reduced coderivation vanishes: every coefficient lies in the maximal ideal.
bool coalgebra_is_minimal(const CurvedCoalgebra& c);

struct StrictReport {
  bool ok = true;
  std::string violation;
};

// m-bar_1(V) in V, m-bar_n(C^n) in V, and A (x) k = T(V (x) k)/(W (x) k) with m_2 (x) k the induced product
// and m_n (x) k = 0 on V for n >= 3.
StrictReport check_strict_presentation(const AinfStructure& s, const QuadraticPresentation& p, int hdeg_bound);

struct StrictnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CurvedCoalgebra priddy_coalgebra(const AinfStructure& s, const QuadraticPresentation& p, int hdeg_bound,
                                 int ideg_bound = -1);

// T(Sigma^{-1} V^dual)/(Sigma^{-2} W^perp); series indexed by the homological degree of the dual words.
struct QuadraticDual {
  std::vector<int> generators;
  std::vector<Tensor2> relations;  // basis of W^perp in word coordinates
  std::vector<long> series;
};

QuadraticDual quadratic_dual(const AinfStructure& s, const QuadraticPresentation& p, int hdeg_bound);

enum class PresentationClass { CI, Golod, GorensteinPD3, AlmostGolodGorenstein, Auto };

struct DetectResult {
  std::optional<QuadraticPresentation> presentation;
  std::string report;
};

// Applies the recipe of the hinted class (or each in turn); hypotheses that need the ring use `spec`.
DetectResult detect_presentation(const AinfStructure& s, PresentationClass hint, const RingSpec* spec = nullptr,
                                 int hdeg_bound = 6);

// One line per basis vector: weight, label, coderivation image, curvature value.
std::string dump_coalgebra(const CurvedCoalgebra& c);

}  // namespace sk
