#pragma once

// Exact moments  int prod_l g_{i_l j_l} dg  and  int prod_l [g_{i_l j_l}] dg
// over the uniform measure on S_N, where [g]_{ij} = g_{ij} - 1/N.
//
// Four independent evaluation paths:
//   direct       delta(Pi_i, Pi_j) / (N)_{#Pi_i}        (plain factors only)
//   weingarten   sum over s <= Pi_i, t <= Pi_j of Wg or cWg
//   reduce       collapse repeated centered entries via [g]^l = alpha_l [g] + beta_l
//   oracle       brute-force average over all N! permutations

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgcalc/dimension.hpp"
#include "wgcalc/exact.hpp"
#include "wgcalc/partitions.hpp"
#include "wgcalc/weingarten.hpp"

namespace wgcalc {

inline constexpr int kDefaultOracleCap = 8;
inline constexpr int kDefaultSymbolicCap = 5;

struct Factor {
  long row = 1;
  long col = 1;
  bool centered = false;

  friend bool operator==(const Factor&, const Factor&) = default;
};

class MomentSpec {
 public:
  MomentSpec(long n, std::vector<Factor> factors);

  // {"N": int, "factors": [{"i": int, "j": int, "centered": bool}, ...]}
  static MomentSpec from_json(const std::string& text);
  // "c:1,1 c:1,2 1,3" -- the c: prefix marks a centered factor.
  static MomentSpec parse_inline(const std::string& text, long n);

  long dimension() const { return n_; }
  int size() const { return static_cast<int>(factors_.size()); }
  const std::vector<Factor>& factors() const { return factors_; }
  bool all_centered() const;
  bool all_plain() const;
  long max_index() const;

  std::string to_json() const;
  std::string to_inline() const;

 private:
  long n_;
  std::vector<Factor> factors_;
};

// Bookkeeping for one zeta-zeta sum: how many coefficients were read, and
// how many of them had a non-trivial meet s ^ t.
struct ZetaSumStats {
  std::size_t entries = 0;
  std::size_t nontrivial_meet = 0;
};

Rational plain_moment_direct(const MomentSpec& spec);

// Centered factors in a mixed spec are expanded via [g] = g - 1/N first.
Rational moment_via_weingarten(const MomentSpec& spec, ZetaSumStats* stats = nullptr,
                               WgFormula centered_formula = WgFormula::ReformulatedCentered);
// As a function of N; valid for N >= max(k, largest index).
RationalFunction moment_via_weingarten_symbolic(const MomentSpec& spec, ZetaSumStats* stats = nullptr);

// [g]^l = alpha_l [g] + beta_l
std::pair<Rational, Rational> alpha_beta(int l, NumericN n);
std::pair<RationalFunction, RationalFunction> alpha_beta(int l, SymbolicN n);

struct ReducedBlock {
  Factor pair;                 // representative (i, j)
  int multiplicity = 0;        // #B_s
  std::vector<int> positions;  // 1-based positions of the original factors
  Rational alpha;
  Rational beta;
};

struct ReducedSpec {
  std::vector<ReducedBlock> blocks;  // #B_1 >= ... >= #B_r, ties by least position
  MomentSpec residual;               // one centered factor per block; trivial level meet
};

// Requires an all-centered spec with N >= k.
ReducedSpec reduce(const MomentSpec& spec);

struct ReductionTerm {
  std::vector<int> subset;  // 1-based block indices kept as [g]
  Rational weight;          // prod alpha over subset * prod beta over the rest
  Rational integral;        // centered moment of the kept residual factors
};

std::vector<ReductionTerm> reduction_terms(const ReducedSpec& reduced, ZetaSumStats* stats = nullptr);
Rational evaluate_reduced(const ReducedSpec& reduced, ZetaSumStats* stats = nullptr);
RationalFunction evaluate_reduced_symbolic(const ReducedSpec& reduced, ZetaSumStats* stats = nullptr);

// int prod_{m=1}^k [g_mm]^p dg = sum_l C(k,l) alpha_p^l beta_p^(k-l) a_l(N)
Rational centered_power_moment(int k, int p, long n);
RationalFunction centered_power_moment_symbolic(int k, int p);

// Throws Error{OracleTooLarge} when N exceeds the cap.
Rational oracle_moment(const MomentSpec& spec, int cap = kDefaultOracleCap);

enum class MomentMethod { Auto, Direct, Weingarten, Reduce, Oracle };

std::string to_string(MomentMethod m);
MomentMethod parse_moment_method(const std::string& text);

struct MomentOptions {
  MomentMethod method = MomentMethod::Auto;
  int symbolic_k_cap = kDefaultSymbolicCap;
  int oracle_cap = kDefaultOracleCap;
  bool symbolic = true;
};

struct MomentResult {
  Rational value;
  std::optional<RationalFunction> symbolic;
  MomentMethod method = MomentMethod::Auto;  // the method actually used
  std::optional<LeadingTerm> leading;
};

MomentResult evaluate_moment(const MomentSpec& spec, const MomentOptions& options = {});

}  // namespace wgcalc
