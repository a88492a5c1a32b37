#include "verify.hpp"

#include <algorithm>
#include <functional>

#include "wgcalc/asymptotics.hpp"
#include "wgcalc/error.hpp"
#include "wgcalc/moments.hpp"
#include "wgcalc/weingarten.hpp"

namespace wgcalc::cli {

namespace {

constexpr std::size_t kMaxCounterexamples = 10;

void fail(CheckResult& r, const std::string& invocation) {
  ++r.failures;
  if (r.counterexamples.size() < kMaxCounterexamples) r.counterexamples.push_back(invocation);
}

std::string quoted(const SetPartition& p) { return "\"" + p.to_string() + "\""; }

std::string wg_call(const SetPartition& s, const SetPartition& t, const std::string& formula, const std::string& dim) {
  std::string out = "wgcalc wg --k " + std::to_string(s.size()) + " --sigma " + quoted(s) + " --tau " + quoted(t);
  if (formula != "closed") out += " --centered --formula " + formula;
  return out + " " + dim;
}

std::string moment_call(const MomentSpec& spec, const std::string& method) {
  return "wgcalc moment --inline \"" + spec.to_inline() + "\" --N " + std::to_string(spec.dimension()) +
         " --method " + method;
}

// All specs of length k over the given index set, each factor plain or centered as requested.
void for_each_spec(int k, long max_index, long n, bool centered, const std::function<void(const MomentSpec&)>& f) {
  std::vector<long> digits(static_cast<std::size_t>(2 * k), 1);
  while (true) {
    std::vector<Factor> fs;
    for (int l = 0; l < k; ++l) {
      fs.push_back({digits[static_cast<std::size_t>(2 * l)], digits[static_cast<std::size_t>(2 * l + 1)], centered});
    }
    f(MomentSpec(n, std::move(fs)));
    std::size_t pos = 0;
    while (pos < digits.size() && digits[pos] == max_index) digits[pos++] = 1;
    if (pos == digits.size()) return;
    ++digits[pos];
  }
}

std::vector<CheckResult> suite_mobius(const Config& cfg) {
  const int kmax = std::min(7, cfg.bell_cap);
  CheckResult inversion{"mobius", "mu*zeta = zeta*mu = delta, k <= " + std::to_string(kmax)};
  CheckResult columns{"mobius", "sum_{p<=s} mu(p,s) = [s = 0_k], k <= " + std::to_string(kmax)};
  for (int k = 1; k <= kmax; ++k) {
    const auto mu = IncidenceFunction::mobius(k, cfg.bell_cap);
    const auto ze = IncidenceFunction::zeta(k, cfg.bell_cap);
    const auto de = IncidenceFunction::delta(k, cfg.bell_cap);
    ++inversion.cases;
    if (!(convolve(mu, ze) == de && convolve(ze, mu) == de)) {
      fail(inversion, "wgcalc verify --suite mobius  # fails at k=" + std::to_string(k));
    }
    for (const auto& s : enumerate_partitions(k, cfg.bell_cap)) {
      Rational sum(0);
      for_each_below(s, [&](const SetPartition& p) { sum += mobius(p, s); });
      ++columns.cases;
      const Rational expected(s == SetPartition::finest(k) ? 1 : 0);
      if (sum != expected) fail(columns, "wgcalc verify --suite mobius  # column sum at s=" + quoted(s));
    }
  }
  return {inversion, columns};
}

std::vector<CheckResult> suite_equivalence(const Config& cfg) {
  const int ksym = std::min(4, cfg.symbolic_k_cap);
  CheckResult sym{"equivalence", "signed == reformulated centered Wg, symbolic, k <= " + std::to_string(ksym)};
  CheckResult num{"equivalence", "signed == reformulated centered Wg, k = 5, N = 5..10"};
  for (int k = 1; k <= ksym; ++k) {
    const auto parts = enumerate_partitions(k, cfg.bell_cap);
    for (const auto& s : parts) {
      for (const auto& t : parts) {
        ++sym.cases;
        if (centered_signed_value(s, t, SymbolicN{}) != centered_value(s, t, SymbolicN{})) {
          fail(sym, wg_call(s, t, "signed", "--symbolic"));
        }
      }
    }
  }
  const auto parts = enumerate_partitions(5, cfg.bell_cap);
  for (long n = 5; n <= 10; ++n) {
    for (const auto& s : parts) {
      for (const auto& t : parts) {
        ++num.cases;
        if (centered_signed_value(s, t, NumericN{n}) != centered_value(s, t, NumericN{n})) {
          fail(num, wg_call(s, t, "signed", "--N " + std::to_string(n)));
        }
      }
    }
  }
  return {sym, num};
}

std::vector<CheckResult> suite_sign(const Config& cfg) {
  CheckResult r{"sign", "(-1)^(#s+#t) cWg(s,t,N) >= 0, k <= 5, N = k..k+5"};
  for (int k = 1; k <= 5; ++k) {
    const auto parts = enumerate_partitions(k, cfg.bell_cap);
    for (long n = k; n <= k + 5; ++n) {
      for (const auto& s : parts) {
        for (const auto& t : parts) {
          ++r.cases;
          Rational v = centered_value(s, t, NumericN{n});
          if ((s.block_count() + t.block_count()) % 2 == 1) v = -v;
          const std::string call = wg_call(s, t, "reform", "--N " + std::to_string(n));
          if (v.sign() < 0) fail(r, call);
          if (v.is_zero()) r.notes.push_back("exact zero: " + call);
        }
      }
    }
  }
  return {r};
}

std::vector<CheckResult> suite_oracle(const Config& cfg) {
  CheckResult plain{"oracle", "direct == zeta-zeta Wg == S_N oracle, plain, k <= 4, indices 1..3, N = 4..6"};
  CheckResult centered{"oracle", "reduce == zeta-zeta cWg == S_N oracle, centered, k <= 5, indices 1..2, N = 5..7"};
  for (long n = 4; n <= 6; ++n) {
    if (n > cfg.oracle_cap) {
      plain.notes.push_back("skipped N=" + std::to_string(n) + " (oracle_cap " + std::to_string(cfg.oracle_cap) + ")");
      continue;
    }
    for (int k = 1; k <= 4; ++k) {
      for_each_spec(k, 3, n, false, [&](const MomentSpec& spec) {
        ++plain.cases;
        const Rational o = oracle_moment(spec, cfg.oracle_cap);
        if (plain_moment_direct(spec) != o || moment_via_weingarten(spec) != o) fail(plain, moment_call(spec, "oracle"));
      });
    }
  }
  for (long n = 5; n <= 7; ++n) {
    if (n > cfg.oracle_cap) {
      centered.notes.push_back("skipped N=" + std::to_string(n) + " (oracle_cap " + std::to_string(cfg.oracle_cap) +
                               ")");
      continue;
    }
    for (int k = 1; k <= 5; ++k) {
      for_each_spec(k, 2, n, true, [&](const MomentSpec& spec) {
        ++centered.cases;
        const Rational o = oracle_moment(spec, cfg.oracle_cap);
        if (moment_via_weingarten(spec) != o || evaluate_reduced(reduce(spec)) != o) {
          fail(centered, moment_call(spec, "oracle"));
        }
      });
    }
  }
  return {plain, centered};
}

std::vector<CheckResult> suite_epsilon(const Config&) {
  CheckResult bound{"epsilon", "|a_k/tilde_a_k - 1| < 2k^3/N, k <= 10, N in {2k^3+1, 4k^3, 10k^3}"};
  CheckResult two{"epsilon", "epsilon_2 = 1/(N-1)"};
  for (int k = 1; k <= 10; ++k) {
    const long c = static_cast<long>(k) * k * k;
    for (long n : {2 * c + 1, 4 * c, 10 * c}) {
      const EpsilonReport rep = epsilon_check(k, n);
      const std::string call = "wgcalc ak --kmax " + std::to_string(k) + " --N " + std::to_string(n);
      ++bound.cases;
      if (!rep.within_bound) fail(bound, call);
      if (k == 2) {
        ++two.cases;
        if (rep.epsilon != Rational(1, n - 1)) fail(two, call);
      }
    }
  }
  return {bound, two};
}

std::vector<CheckResult> suite_binomial(const Config&) {
  CheckResult r{"binomial", "sum_j (-1)^j C(k-l,j) C(k-j,k-m) = C(l,l-m), 0 <= l,m <= k <= 20"};
  for (int k = 0; k <= 20; ++k) {
    for (int l = 0; l <= k; ++l) {
      for (int m = 0; m <= k; ++m) {
        ++r.cases;
        if (!binomial_identity_check(k, l, m)) {
          fail(r, "wgcalc verify --suite binomial  # k=" + std::to_string(k) + " l=" + std::to_string(l) +
                      " m=" + std::to_string(m));
        }
      }
    }
  }
  return {r};
}

using SuiteFn = std::vector<CheckResult> (*)(const Config&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"mobius", suite_mobius}, {"equivalence", suite_equivalence}, {"sign", suite_sign},
      {"oracle", suite_oracle}, {"epsilon", suite_epsilon},         {"binomial", suite_binomial},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const Config& cfg) {
  std::vector<CheckResult> out;
  for (const auto& [suite, fn] : registry()) {
    if (name != "all" && name != suite) continue;
    auto part = fn(cfg);
    out.insert(out.end(), part.begin(), part.end());
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
  return out;
}

}  // namespace wgcalc::cli
