#include "wgcalc/asymptotics.hpp"

#include "wgcalc/weingarten.hpp"

namespace wgcalc {

LeadingTerm tilde_a_k(int k) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "tilde a_k is undefined for k < 2 (got k=" + std::to_string(k) + ")");
  const int half = k / 2;
  if (k % 2 == 0) return {Rational(double_factorial_odd(2 * half - 1)), -3 * half};
  return {Rational(4 * half, 3) * Rational(double_factorial_odd(2 * half + 1)), -3 * half - 2};
}

EpsilonReport epsilon_check(int k, long n) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "epsilon check needs k >= 1");
  const long cube = 2L * k * k * k;
  if (n <= cube) {
    throw Error(ErrorKind::InvalidArgument, "epsilon check needs N > 2k^3 = " + std::to_string(cube) +
                                                ", got N=" + std::to_string(n));
  }
  EpsilonReport r;
  r.k = k;
  r.n = n;
  r.a_k = a_explicit(k, NumericN{n});
  r.bound = Rational(cube, n);
  if (k == 1) {
    // a_1 = 0 and tilde a_1 is not defined; epsilon_1 is 0 by convention.
    r.tilde_a_k = Rational(0);
    r.epsilon = Rational(0);
  } else {
    const LeadingTerm t = tilde_a_k(k);
    r.tilde_a_k = t.coeff * Rational(n).pow(t.exponent);
    r.epsilon = r.a_k / r.tilde_a_k - Rational(1);
  }
  r.within_bound = r.epsilon.abs() < r.bound;
  return r;
}

LeadingTerm wg_leading(const SetPartition& sigma, const SetPartition& tau) {
  const SetPartition m = meet(sigma, tau);
  return {mobius(m, sigma) * mobius(m, tau), -m.block_count()};
}

CenteredLeading centered_wg_leading(const SetPartition& sigma, const SetPartition& tau) {
  const SetPartition m = meet(sigma, tau);
  const int k = sigma.size();
  CenteredLeading out;
  out.singletons = static_cast<int>(singleton_set(join(sigma, tau)).size());
  out.meet_blocks = m.block_count();
  const int d = out.singletons;
  const Rational mm = mobius(m, sigma) * mobius(m, tau);
  if (d == k) {
    out.which = CenteredCase::AllSingletons;
    out.term = tilde_a_k(k);
  } else if (d % 2 == 0) {
    out.which = CenteredCase::EvenSingletons;
    out.term = {mm * Rational(double_factorial_odd(d - 1)), -(out.meet_blocks + d / 2)};
  } else {
    out.which = CenteredCase::OddSingletons;
    const Rational factor = Rational(out.meet_blocks) - Rational(d, 3) - Rational(2, 3);
    out.term = {mm * factor * Rational(double_factorial_odd(d)), -(out.meet_blocks + (d + 1) / 2)};
    out.degenerate = out.term.coeff.is_zero();
  }
  return out;
}

int singleton_gap(const SetPartition& sigma, const SetPartition& tau) {
  const int d = static_cast<int>(singleton_set(join(sigma, tau)).size());
  return (d + 1) / 2;
}

FailureReport failure_diagnostic(int k, long n) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "failure diagnostic needs k >= 2");
  require_dimension(k, n);
  const SetPartition top = SetPartition::coarsest(k);
  FailureReport r;
  r.k = k;
  r.n = n;
  r.value = centered_value(top, top, NumericN{n});
  const BigInt predicted_pairs = (BigInt(1) << (k - 1)) - 1;
  r.lower_bound = Rational(1, n) + Rational(predicted_pairs) / Rational(n).pow(2);
  r.ratio = r.value * Rational(n);
  long count = 0;
  for_each_below(top, [&](const SetPartition& p) {
    if (p.block_count() == 2) ++count;
  });
  r.two_block_count = count;
  r.bound_holds = r.value >= r.lower_bound;
  return r;
}

Rational leading_ratio(const Rational& value, const LeadingTerm& term, long n) {
  return value / (term.coeff * Rational(n).pow(term.exponent));
}

}  // namespace wgcalc
