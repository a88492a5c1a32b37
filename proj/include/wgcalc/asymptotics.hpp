#pragma once

// Leading-order behaviour of Weingarten coefficients as N grows, the
// uniform bound on a_k(N), and the (1_k, 1_k) diagnostic where no uniform
// bound holds.

#include <optional>
#include <string>
#include <vector>

#include "wgcalc/exact.hpp"
#include "wgcalc/partitions.hpp"

namespace wgcalc {

// (2k'-1)!! N^-3k' for k = 2k'; (4k'/3)(2k'+1)!! N^(-3k'-2) for k = 2k'+1. Needs k >= 2.
LeadingTerm tilde_a_k(int k);

struct EpsilonReport {
  int k = 0;
  long n = 0;
  Rational a_k;
  Rational tilde_a_k;  // zero for k = 1, where epsilon is 0 by convention
  Rational epsilon;    // a_k / tilde_a_k - 1
  Rational bound;      // 2k^3 / N
  bool within_bound = false;
};

// Requires N > 2k^3 and k >= 1.
EpsilonReport epsilon_check(int k, long n);

// mu(s^t, s) mu(s^t, t) N^-#(s^t)
LeadingTerm wg_leading(const SetPartition& sigma, const SetPartition& tau);

enum class CenteredCase {
  AllSingletons = 1,  // d = k, sigma = tau = 0_k
  EvenSingletons = 2,
  OddSingletons = 3,
};

struct CenteredLeading {
  CenteredCase which = CenteredCase::AllSingletons;
  int singletons = 0;      // d = |D(s v t)|
  int meet_blocks = 0;     // #(s ^ t)
  LeadingTerm term;
  // Odd case with #(s^t) = (d+2)/3: the predicted coefficient vanishes and
  // the exact symbolic expansion has to be consulted instead.
  bool degenerate = false;
};

CenteredLeading centered_wg_leading(const SetPartition& sigma, const SetPartition& tau);

// ceil(|D(s v t)| / 2): extra decay of the centered coefficient over the plain one.
int singleton_gap(const SetPartition& sigma, const SetPartition& tau);

struct FailureReport {
  int k = 0;
  long n = 0;
  Rational value;           // cWg_k(1_k, 1_k, N)
  Rational lower_bound;     // 1/N + (2^(k-1) - 1)/N^2
  Rational ratio;           // value / (1/N)
  BigInt two_block_count;   // #{p <= 1_k : #p = 2}, by enumeration
  bool bound_holds = false;
};

// Requires 2 <= k and N >= k.
FailureReport failure_diagnostic(int k, long n);

// value / (coeff * N^exponent)
Rational leading_ratio(const Rational& value, const LeadingTerm& term, long n);

}  // namespace wgcalc
