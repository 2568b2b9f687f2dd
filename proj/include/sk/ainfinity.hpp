#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sk/complex.hpp"
#include "sk/resolution.hpp"

namespace sk {

using Tuple = std::vector<int>;

// Split-unital A-infinity structure on a resolution A of Q/I with A_0 = Q * unit.
// ops holds m_n (n >= 2) on tuples of non-unit generators; m_2(1, a) = m_2(a, 1) = a and
// m_n vanishes on tuples containing the unit for n >= 3.
struct AinfStructure {
  ChainComplex A;
  int unit = -1;
  int arity = 2;
  int ideg_bound = -1;  // -1: unbounded
  std::map<Tuple, Element> ops;

  std::vector<int> bar_basis() const;  // non-unit generators
  int pd() const { return A.max_hdeg(); }
  int tuple_hdeg(const Tuple& t) const;
  int tuple_ideg(const Tuple& t) const;
  // m_n on generators; n = 1 is the differential.
  Element m(const Tuple& t) const;
  // Multilinear extension to elements.
  Element m(const std::vector<Element>& xs) const;
  std::string tuple_str(const Tuple& t) const;
};

// Strictly unital A-infinity module over an AinfStructure on a free complex G.
// ops key: (a_1, ..., a_{n-1}, g) with a_i non-unit generators of A and g a generator of G.
struct AinfModuleStructure {
  std::shared_ptr<const AinfStructure> alg;
  ChainComplex G;
  int arity = 2;
  int ideg_bound = -1;
  std::map<Tuple, Element> ops;

  Element m(const Tuple& as, int g) const;
  Element m(const std::vector<Element>& as, const Element& g) const;
};

struct StasheffReport {
  bool ok = true;
  int arity = 0;
  Tuple tuple;
  std::string violation;
  long checked = 0;  // number of identities evaluated
};

struct TransferError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sum over r+s+t = n of (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) on generators; the r = t = 0 term
// (d m_n) is omitted when skip_top is set.
Element stasheff_terms(const AinfStructure& s, const Tuple& a, bool skip_top);
Element module_stasheff_terms(const AinfModuleStructure& s, const Tuple& as, int g, bool skip_top);

// Transfers the product of R onto the minimal resolution A by obstruction lifting; when `seed`
// is given it is used as m_2 (it must be a unital chain map lift, e.g. the Koszul or Gemeda product).
AinfStructure transfer_ainf_algebra(const ChainComplex& A, int arity, int ideg_bound,
                                    const DgProduct* seed = nullptr);

// Module structure on G, a free resolution over Q of an R-module augmented in degree 0.
AinfModuleStructure transfer_ainf_module(const AinfStructure& s, const ChainComplex& G, int arity,
                                         int ideg_bound = -1);

StasheffReport verify_stasheff(const AinfStructure& s, int arity = -1);
StasheffReport verify_stasheff(const AinfModuleStructure& s, int arity = -1);

// Operations with all variables set to zero.
AinfStructure reduce_mod_maximal(const AinfStructure& s);

struct FormalityCertificate {
  bool certified = false;
  int first_nonzero_arity = -1;  // when not certified
  TorAlgebra tor;
};

FormalityCertificate formality_certificate(const AinfStructure& s);

struct CyclicPairing {
  int d = 0;
  int omega = -1;
  std::map<std::pair<int, int>, Polynomial> values;  // (a, b) -> <a, b>, zero entries omitted
  Polynomial pair(int a, int b) const;
};

struct CyclicResult {
  AinfStructure structure;
  CyclicPairing pairing;
};

struct UnsupportedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Cyclic A-infinity structure of degree d = pd on the minimal resolution of a Gorenstein quotient;
// requires d odd and characteristic zero.
CyclicResult cyclic_transfer(const ChainComplex& A, int arity, int ideg_bound);

// <m_n(a_1..a_n), a_{n+1}> = (-1)^{n + |a_1|(|a_2|+...+|a_{n+1}|)} <m_n(a_2..a_{n+1}), a_1>.
StasheffReport verify_cyclic(const AinfStructure& s, const CyclicPairing& p, int arity = -1);

// Enumerates tuples of the given alphabet with length n, total hdeg <= max_hdeg and total ideg <= max_ideg.
std::vector<Tuple> enumerate_tuples(const ChainComplex& c, const std::vector<int>& alphabet, int n, int max_hdeg,
                                    int max_ideg);

std::string serialize_ainf(const AinfStructure& s);
AinfStructure parse_ainf(const std::string& text);

}  // namespace sk
