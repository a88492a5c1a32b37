#pragma once

// Weingarten coefficients of random and centered random permutation matrices.
//
//   Wg_k(s,t,N)  = sum_{p <= s^t} mu(p,s) mu(p,t) / (N)_{#p}
//   cWg_k(s,t,N) = sum_{i=0}^{d} C(d,i) (-1)^i sum_{p <= s^t} mu(p,s) mu(p,t) N^-i / (N)_{#p-i}
//                = sum_{j} c_j sum_{i=0}^{j-d} C(j-d,i) N^-i a_{j-i}
//
// with d = |D(s v t)| and c_j the block-count profile below. The second form
// of cWg is sign-definite and is the one used for moment evaluation.
//
// Numeric evaluation requires N >= k for every formula.

#include <string>
#include <vector>

#include "wgcalc/dimension.hpp"
#include "wgcalc/exact.hpp"
#include "wgcalc/partitions.hpp"

namespace wgcalc {

enum class WgFormula { Closed, SignedCentered, ReformulatedCentered };

std::string to_string(WgFormula f);
WgFormula parse_wg_formula(const std::string& text);  // closed | signed | reform

struct WgEntry {
  int k = 0;
  SetPartition sigma;
  SetPartition tau;
  Value value;
  bool centered = false;
  WgFormula formula = WgFormula::Closed;
  Dimension dimension = Dimension::symbolic();
};

WgEntry wg(const SetPartition& sigma, const SetPartition& tau, Dimension n);
WgEntry wg_centered_signed(const SetPartition& sigma, const SetPartition& tau, Dimension n);
WgEntry wg_centered_reformulated(const SetPartition& sigma, const SetPartition& tau, Dimension n);
// Dispatch on formula tag.
WgEntry weingarten_entry(const SetPartition& sigma, const SetPartition& tau, Dimension n, WgFormula formula);

Rational wg_value(const SetPartition& sigma, const SetPartition& tau, NumericN n);
RationalFunction wg_value(const SetPartition& sigma, const SetPartition& tau, SymbolicN n);
Rational centered_signed_value(const SetPartition& sigma, const SetPartition& tau, NumericN n);
RationalFunction centered_signed_value(const SetPartition& sigma, const SetPartition& tau, SymbolicN n);
Rational centered_value(const SetPartition& sigma, const SetPartition& tau, NumericN n);
RationalFunction centered_value(const SetPartition& sigma, const SetPartition& tau, SymbolicN n);

// c[j] = sum over {p <= s^t : #p = j} of mu(p,s) mu(p,t), for j = 0..k.
// Memoized per unordered pair; safe for concurrent callers.
std::vector<BigInt> block_count_profile(const SetPartition& sigma, const SetPartition& tau);

// ------------------------------------------------------------------ a_k(N)

enum class AkRoute { ExplicitSum, Recursion, Kummer };

std::string to_string(AkRoute r);

struct AkValue {
  int k = 0;
  Value value;
  AkRoute route = AkRoute::ExplicitSum;
};

// a_k(N) = sum_l C(k,l) (-N)^-(k-l) / (N)_l
AkValue a_k_explicit(int k, Dimension n);
// Forward recursion from a_0 = 1, a_1 = 0; throws Error{RecursionPole} when N <= k-1.
AkValue a_k_recursive(int k, Dimension n);
// a_0..a_kmax by recursion. The last entry is checked against the explicit sum.
std::vector<Value> a_k_table(int kmax, Dimension n);
// (-1/N)^k M(-k, -N, -N) with the terminating Kummer series.
AkValue a_k_kummer(int k, long n);

Rational a_explicit(int k, NumericN n);
RationalFunction a_explicit(int k, SymbolicN n);
std::vector<Rational> a_recursive_prefix(int kmax, NumericN n);
std::vector<RationalFunction> a_recursive_prefix(int kmax, SymbolicN n);

// Alternating binomial identity: sum_j (-1)^j C(k-l,j) C(k-j,k-m) = C(l,l-m) [l >= m].
struct BinomialIdentity {
  BigInt lhs;
  BigInt rhs;
  bool holds() const { return lhs == rhs; }
};

BinomialIdentity binomial_identity(int k, int l, int m);
bool binomial_identity_check(int k, int l, int m);

// Throws Error{DimensionTooSmall} unless N >= k.
void require_dimension(int k, long n);

}  // namespace wgcalc
