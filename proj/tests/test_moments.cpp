#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wgcalc/error.hpp"
#include "wgcalc/moments.hpp"

using namespace testutil;

namespace {

std::vector<oracle::Entry> entries(const MomentSpec& spec) {
  std::vector<oracle::Entry> out;
  for (const auto& f : spec.factors()) out.push_back({f.row, f.col, f.centered});
  return out;
}

// Every spec of length k over indices 1..m.
template <class F>
void for_each_spec(int k, long m, long n, bool centered, F&& f) {
  std::vector<long> d(static_cast<std::size_t>(2 * k), 1);
  while (true) {
    std::vector<Factor> fs;
    for (int l = 0; l < k; ++l) fs.push_back({d[2 * l], d[2 * l + 1], centered});
    f(MomentSpec(n, fs));
    std::size_t pos = 0;
    while (pos < d.size() && d[pos] == m) d[pos++] = 1;
    if (pos == d.size()) return;
    ++d[pos];
  }
}

MomentSpec golden(long n) { return MomentSpec::parse_inline("c:1,1 c:1,1 c:1,2 c:1,2 c:1,3 c:1,4", n); }

}  // namespace

TEST_CASE("spec parsing") {
  const MomentSpec a = MomentSpec::from_json(
      R"({"N": 5, "factors": [{"i": 1, "j": 2, "centered": true}, {"i": 3, "j": 3}]})");
  CHECK(a.dimension() == 5);
  CHECK(a.size() == 2);
  CHECK(a.factors()[0] == Factor{1, 2, true});
  CHECK(a.factors()[1] == Factor{3, 3, false});
  CHECK(a.to_inline() == "c:1,2 3,3");
  CHECK(MomentSpec::parse_inline(a.to_inline(), 5).factors() == a.factors());
  CHECK(MomentSpec::from_json(a.to_json()).factors() == a.factors());
  CHECK_FALSE(a.all_centered());
  CHECK_FALSE(a.all_plain());
  CHECK(a.max_index() == 3);
  for (const char* bad : {"{", R"({"N": 3})", R"({"N": 3, "factors": [{"i": 4, "j": 1}]})",
                          R"({"N": 0, "factors": [{"i": 1, "j": 1}]})", R"({"N": 3, "factors": []})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(MomentSpec::from_json(bad), Error);
  }
  CHECK_THROWS_AS(MomentSpec::parse_inline("1;2", 3), Error);
  CHECK_THROWS_AS(MomentSpec::parse_inline("c:1,x", 3), Error);
  CHECK_THROWS_AS(MomentSpec::parse_inline("", 3), Error);
}

TEST_CASE("golden centered moment: 2/N^5 - 5/N^6") {
  const RationalFunction expected = rf({-5, 2}, {0, 0, 0, 0, 0, 0, 1});
  const ReducedSpec r = reduce(golden(8));
  CHECK(evaluate_reduced_symbolic(r) == expected);
  CHECK(moment_via_weingarten_symbolic(golden(8)) == expected);
  CHECK(evaluate_moment(golden(6)).symbolic == expected);
  for (long n : {6L, 7L, 8L}) {
    const Rational exact = expected.evaluate(n);
    CHECK(evaluate_moment(golden(n)).value == exact);
    CHECK(moment_via_weingarten(golden(n)) == exact);
    CHECK(oracle_moment(golden(n)) == exact);
    if (n <= 7) CHECK(oracle::sn_average(n, entries(golden(n))) == exact);
  }
  CHECK(expected.evaluate(7) == Rational(9, 117649));
}

TEST_CASE("frozen small moments") {
  CHECK(evaluate_moment(MomentSpec::parse_inline("c:1,1 c:1,1 c:2,2 c:2,2", 6)).value == Rational(47, 2160));
  CHECK(plain_moment_direct(MomentSpec::parse_inline("1,1 2,2", 3)) == Rational(1, 6));
  CHECK(plain_moment_direct(MomentSpec::parse_inline("1,1 1,2", 3)) == Rational(0));
  CHECK(plain_moment_direct(MomentSpec::parse_inline("1,1 1,1 1,1", 3)) == Rational(1, 3));
  CHECK(evaluate_moment(MomentSpec::parse_inline("c:1,1", 4)).value == Rational(0));
}

TEST_CASE("engine oracle agrees with the plain rational S_N average") {
  for (long n = 3; n <= 5; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for_each_spec(k, 2, n, true, [&](const MomentSpec& s) {
        REQUIRE(oracle_moment(s) == oracle::sn_average(n, entries(s)));
      });
    }
  }
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> idx(1, 4);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Factor> fs;
    for (int l = 0; l < 4; ++l) fs.push_back({idx(rng), idx(rng), coin(rng)});
    const MomentSpec s(5, fs);
    REQUIRE(oracle_moment(s) == oracle::sn_average(5, entries(s)));
  }
}

TEST_CASE("triple agreement on plain specs: k <= 4, indices 1..3, N = 4..6") {
  long count = 0;
  for (long n = 4; n <= 6; ++n) {
    for (int k = 1; k <= 4; ++k) {
      for_each_spec(k, 3, n, false, [&](const MomentSpec& s) {
        const Rational o = oracle_moment(s);
        REQUIRE(plain_moment_direct(s) == o);
        REQUIRE(moment_via_weingarten(s) == o);
        ++count;
      });
    }
  }
  CHECK(count == 3 * (9 + 81 + 729 + 6561));
}

TEST_CASE("centered agreement: k <= 5, indices 1..2, N = 5..7") {
  for (long n = 5; n <= 7; ++n) {
    for (int k = 1; k <= 5; ++k) {
      for_each_spec(k, 2, n, true, [&](const MomentSpec& s) {
        CAPTURE(s.to_inline());
        const Rational o = oracle_moment(s);
        REQUIRE(moment_via_weingarten(s) == o);
        if (k <= 3) REQUIRE(moment_via_weingarten(s, nullptr, WgFormula::SignedCentered) == o);
      });
    }
  }
}

TEST_CASE("mixed plain and centered factors") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> idx(1, 3);
  std::uniform_int_distribution<int> len(1, 5);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Factor> fs;
    const int k = len(rng);
    for (int l = 0; l < k; ++l) fs.push_back({idx(rng), idx(rng), coin(rng)});
    const MomentSpec s(6, fs);
    CAPTURE(s.to_inline());
    REQUIRE(moment_via_weingarten(s) == oracle_moment(s));
    if (k <= 3) REQUIRE(moment_via_weingarten_symbolic(s).evaluate(6) == oracle_moment(s));
  }
}

TEST_CASE("reduction soundness on 500 random specs with repeats") {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<int> len(2, 6);
  std::uniform_int_distribution<long> idx(1, 3);
  std::uniform_int_distribution<long> dim(6, 8);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = len(rng);
    std::vector<Factor> fs;
    for (int l = 0; l < k; ++l) {
      if (l > 0 && rng() % 2 == 0) {
        fs.push_back(fs[rng() % fs.size()]);  // forced repeat
      } else {
        fs.push_back({idx(rng), idx(rng), true});
      }
    }
    const MomentSpec s(dim(rng), fs);
    CAPTURE(s.to_inline());
    CAPTURE(s.dimension());
    const ReducedSpec r = reduce(s);
    ZetaSumStats stats;
    const Rational reduced = evaluate_reduced(r, &stats);
    REQUIRE(stats.nontrivial_meet == 0);
    REQUIRE(reduced == moment_via_weingarten(s));
    REQUIRE(reduced == oracle_moment(s));
    Rational traced(0);
    for (const auto& term : reduction_terms(r)) traced += term.weight * term.integral;
    REQUIRE(traced == reduced);
  }
}

TEST_CASE("reduction structure") {
  const MomentSpec s = MomentSpec::parse_inline("c:1,2 c:1,1 c:1,1 c:1,3 c:1,2 c:1,4", 6);
  const ReducedSpec r = reduce(s);
  REQUIRE(r.blocks.size() == 4);
  CHECK(r.blocks[0].pair == Factor{1, 2, true});
  CHECK(r.blocks[0].positions == std::vector<int>{1, 5});
  CHECK(r.blocks[1].pair == Factor{1, 1, true});
  CHECK(r.blocks[1].positions == std::vector<int>{2, 3});
  CHECK(r.blocks[2].multiplicity == 1);
  CHECK(r.blocks[3].positions == std::vector<int>{6});
  CHECK(r.residual.to_inline() == "c:1,2 c:1,1 c:1,3 c:1,4");
  CHECK(r.blocks[2].alpha == Rational(1));
  CHECK(r.blocks[2].beta == Rational(0));
  CHECK(reduction_terms(r).size() == 16);
  CHECK_THROWS_AS(reduce(MomentSpec::parse_inline("c:1,1 1,2", 4)), Error);
  try {
    (void)reduce(golden(5));
    FAIL("expected dimension error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionTooSmall);
  }
}

TEST_CASE("alpha and beta reproduce powers of a centered entry") {
  for (long n = 2; n <= 9; ++n) {
    for (int l = 1; l <= 7; ++l) {
      const auto [alpha, beta] = alpha_beta(l, NumericN{n});
      for (long g : {0L, 1L}) {
        const Rational c = Rational(g) - Rational(1, n);
        REQUIRE(c.pow(l) == alpha * c + beta);
      }
      const auto [sa, sb] = alpha_beta(l, SymbolicN{});
      REQUIRE(sa.evaluate(n) == alpha);
      REQUIRE(sb.evaluate(n) == beta);
    }
  }
  CHECK_THROWS_AS(alpha_beta(0, NumericN{4}), Error);
}

TEST_CASE("row-sum identity: sum_j of moments with a final [g_kj] vanishes") {
  for (int k = 1; k <= 5; ++k) {
    for (long n = std::max(k, 2); n <= 7; ++n) {
      Rational total(0);
      Rational total_symbolic_at_n(0);
      for (long j = 1; j <= n; ++j) {
        std::vector<Factor> fs;
        for (int m = 1; m < k; ++m) fs.push_back({m, m, true});
        fs.push_back({k, j, true});
        const MomentSpec s(n, fs);
        total += moment_via_weingarten(s);
        if (k <= 4) total_symbolic_at_n += moment_via_weingarten_symbolic(s).evaluate(n);
      }
      CAPTURE(k);
      CAPTURE(n);
      REQUIRE(total == Rational(0));
      REQUIRE(total_symbolic_at_n == Rational(0));
    }
  }
}

TEST_CASE("centered power moments") {
  for (int k = 1; k <= 4; ++k) {
    for (int p = 1; p <= 3; ++p) {
      for (long n = k; n <= 6; ++n) {
        std::vector<Factor> fs;
        for (int m = 1; m <= k; ++m) {
          for (int i = 0; i < p; ++i) fs.push_back({m, m, true});
        }
        const MomentSpec s(n, fs);
        const Rational v = centered_power_moment(k, p, n);
        REQUIRE(v == oracle_moment(s));
        REQUIRE(centered_power_moment_symbolic(k, p).evaluate(n) == v);
      }
    }
  }
  CHECK(centered_power_moment(3, 1, 10) == Rational(1, 18000));
  CHECK_THROWS_AS(centered_power_moment(3, 0, 10), Error);
}

TEST_CASE("evaluate_moment dispatch and caps") {
  const MomentResult plain = evaluate_moment(MomentSpec::parse_inline("1,1 2,2", 4));
  CHECK(plain.method == MomentMethod::Direct);
  CHECK(plain.symbolic == falling(2).inverse());
  CHECK(plain.leading == LeadingTerm{Rational(1), -2});

  const MomentResult mixed = evaluate_moment(MomentSpec::parse_inline("c:1,1 2,2", 4));
  CHECK(mixed.method == MomentMethod::Weingarten);
  CHECK(mixed.symbolic.has_value());

  MomentOptions capped;
  capped.symbolic_k_cap = 1;
  CHECK_FALSE(evaluate_moment(MomentSpec::parse_inline("c:1,1 2,2", 4), capped).symbolic.has_value());
  capped.symbolic = false;
  CHECK_FALSE(evaluate_moment(golden(7), capped).leading.has_value());

  MomentOptions oracle_opts;
  oracle_opts.method = MomentMethod::Oracle;
  CHECK(evaluate_moment(golden(7), oracle_opts).value == Rational(9, 117649));
  oracle_opts.oracle_cap = 6;
  try {
    (void)evaluate_moment(golden(7), oracle_opts);
    FAIL("expected the oracle cap to trip");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OracleTooLarge);
  }

  MomentOptions direct;
  direct.method = MomentMethod::Direct;
  CHECK_THROWS_AS(evaluate_moment(golden(7), direct), Error);
  CHECK(parse_moment_method("reduce") == MomentMethod::Reduce);
  CHECK_THROWS_AS(parse_moment_method("fast"), Error);
}
