#pragma once

#include <map>
#include <string>
#include <vector>

#include "sk/koszul.hpp"

namespace sk {

// R (x)_tau C (x)_tau G over R = Q/I; generator k is (coalgebra basis index, G generator) = index[k].
struct TwistedComplex {
  ChainComplex complex;
  std::vector<std::pair<int, int>> index;
  std::map<std::pair<int, int>, int> lookup;
  // The curvature term h(a_1)[a_2|...] (x) g reduced to zero modulo I everywhere.
  bool left_twist_vanished = true;
};

TwistedComplex twisted_tensor_product(const RingSpec& spec, const CurvedCoalgebra& C, const AinfModuleStructure& G,
                                      int hdeg_bound);

struct PriddyResult {
  TwistedComplex twisted;
  CurvedCoalgebra coalgebra;
  QuadraticPresentation presentation;
  bool minimal = false;
  bool acyclic = false;
  std::string report;
  std::vector<int> totals() const { return twisted.complex.ranks(); }
};

// Resolution over R = Q/I of the cyclic module Q/J (J contains I): minimal Q-resolution of Q/J, module
// transfer, Priddy coalgebra of the detected presentation, twisted tensor product, then acyclicity checks.
// `module` = nullptr resolves the residue field.
PriddyResult priddy_resolution(const RingSpec& spec, const RingSpec* module, int hdeg_bound);

// sigma^{(alpha)} on the generators of G, alpha in N^c with |alpha| <= bound.
struct HigherHomotopySystem {
  std::vector<int> letters;  // degree-one generators e_i of the Koszul complex, d(e_i) = f_i
  std::vector<Polynomial> f;
  ChainComplex G;
  int bound = 0;
  std::map<std::vector<int>, std::vector<Element>> sigma;

  const std::vector<Element>& at(const std::vector<int>& alpha) const { return sigma.at(alpha); }
};

struct HomotopyReport {
  bool ok = true;
  std::string violation;
  long checked = 0;
};

// Requires the module to sit over the Koszul complex on a regular sequence (letters = its degree-one generators).
HigherHomotopySystem higher_homotopies(const AinfModuleStructure& m, int bound);
HomotopyReport verify_higher_homotopies(const HigherHomotopySystem& h);

struct ShamashComplex {
  ChainComplex complex;
  std::vector<std::pair<std::vector<int>, int>> index;  // (alpha, G generator)
};

ShamashComplex shamash_complex(const HigherHomotopySystem& h, const RingSpec& spec, int hdeg_bound);

struct ComparisonReport {
  bool ok = true;
  std::string mismatch;
  long entries = 0;
};

// Matches y^{(alpha)} (x) g with chi^alpha (x) g and compares differentials entry by entry.
ComparisonReport compare_with_priddy(const ShamashComplex& sh, const HigherHomotopySystem& h, const TwistedComplex& tw,
                                     const CurvedCoalgebra& C);

struct ShamashPipeline {
  AinfStructure algebra;  // transferred from the Koszul product
  AinfModuleStructure module;
  CurvedCoalgebra coalgebra;
  TwistedComplex twisted;
  HigherHomotopySystem homotopies;
  ShamashComplex shamash;
  HomotopyReport identities;
  ComparisonReport comparison;
};

// Complete intersection pipeline: Koszul complex on the generators (acyclicity checked through the default
// internal bound, UnsupportedInput otherwise), residue field over the Koszul complex on the variables.
ShamashPipeline shamash_pipeline(const RingSpec& spec, int hdeg_bound, int homotopy_bound);

// Totals only, or the full dump of the resolution format.
std::string dump_twisted(const TwistedComplex& t, bool betti_only);

}  // namespace sk
