#include <doctest.h>

#include <thread>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wgcalc/error.hpp"
#include "wgcalc/weingarten.hpp"

using namespace testutil;

namespace {

RationalFunction sym(const Value& v) { return std::get<RationalFunction>(v); }
Rational num(const Value& v) { return std::get<Rational>(v); }

// sum over M with [k] \ M inside D(s v t) of (-1/N)^(k-|M|) Wg_|M|(s|M, t|M).
Rational centered_by_subsets(const SetPartition& s, const SetPartition& t, long n) {
  const int k = s.size();
  const auto d = singleton_set(join(s, t));
  Rational out(0);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> kept;
    bool ok = true;
    for (int x = 1; x <= k; ++x) {
      if (mask & (1u << (x - 1))) {
        kept.push_back(x);
      } else if (std::find(d.begin(), d.end(), x) == d.end()) {
        ok = false;
      }
    }
    if (!ok) continue;
    const Rational weight = Rational(-1, n).pow(k - static_cast<int>(kept.size()));
    out += kept.empty() ? weight : weight * wg_value(restrict(s, kept), restrict(t, kept), NumericN{n});
  }
  return out;
}

}  // namespace

TEST_CASE("closed-form coefficients, frozen values") {
  CHECK(sym(wg(P("1", 1), P("1", 1), Dimension::symbolic()).value) == N().inverse());
  CHECK(sym(wg(P("1_2", 2), P("1_2", 2), Dimension::symbolic()).value) == rf({1}, {-1, 1}));
  CHECK(sym(wg(P("0_2", 2), P("0_2", 2), Dimension::symbolic()).value) == falling(2).inverse());
  CHECK(sym(wg(P("1,2", 2), P("1|2", 2), Dimension::symbolic()).value) == -falling(2).inverse());
  CHECK(sym(wg(P("1,2|3", 3), P("1,3|2", 3), Dimension::symbolic()).value) == falling(3).inverse());
  CHECK(num(wg(P("1_2", 2), P("1_2", 2), Dimension::numeric(5)).value) == Rational(1, 4));
}

TEST_CASE("centered coefficients, frozen values") {
  const auto both = [](const char* s, const char* t, int k) {
    const RationalFunction a = sym(wg_centered_signed(P(s, k), P(t, k), Dimension::symbolic()).value);
    const RationalFunction b = sym(wg_centered_reformulated(P(s, k), P(t, k), Dimension::symbolic()).value);
    CHECK(a == b);
    return b;
  };
  CHECK(both("1", "1", 1) == RationalFunction(0));
  CHECK(both("0_2", "0_2", 2) == rf({1}, {0, 0, -1, 1}));
  CHECK(both("1,2|3", "1,2|3", 3) == falling(3).inverse());
  CHECK(both("1,2|3|4", "1,2|3|4", 4) == falling(4).inverse());
  CHECK(both("1_3", "1_3", 3) == N() / ((N() - RationalFunction(1)) * (N() - RationalFunction(2))));
  CHECK(both("1,2|3", "1,3|2", 3) == falling(3).inverse());
}

TEST_CASE("closed form against Mobius inversion of S_N moments") {
  for (int k = 1; k <= 4; ++k) {
    for (long n = std::max(k, 2); n <= 5; ++n) {
      const oracle::InversionOracle ref(k, n, false);
      for (const auto& s : enumerate_partitions(k)) {
        for (const auto& t : enumerate_partitions(k)) {
          CAPTURE(s);
          CAPTURE(t);
          CAPTURE(n);
          REQUIRE(wg_value(s, t, NumericN{n}) == ref(s, t));
        }
      }
    }
  }
}

TEST_CASE("both centered formulas against Mobius inversion of centered S_N moments") {
  for (int k = 1; k <= 4; ++k) {
    for (long n = std::max(k, 2); n <= 5; ++n) {
      const oracle::InversionOracle ref(k, n, true);
      for (const auto& s : enumerate_partitions(k)) {
        for (const auto& t : enumerate_partitions(k)) {
          CAPTURE(s);
          CAPTURE(t);
          CAPTURE(n);
          const Rational expected = ref(s, t);
          REQUIRE(centered_value(s, t, NumericN{n}) == expected);
          REQUIRE(centered_signed_value(s, t, NumericN{n}) == expected);
        }
      }
    }
  }
}

TEST_CASE("centered coefficients against the subset expansion, k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    for (long n : {static_cast<long>(k), 9L}) {
      for (const auto& s : enumerate_partitions(k)) {
        for (const auto& t : enumerate_partitions(k)) {
          REQUIRE(centered_value(s, t, NumericN{n}) == centered_by_subsets(s, t, n));
        }
      }
    }
  }
}

TEST_CASE("formula equivalence: symbolic k <= 4, numeric k = 5 at N = 5..10") {
  for (int k = 1; k <= 4; ++k) {
    for (const auto& s : enumerate_partitions(k)) {
      for (const auto& t : enumerate_partitions(k)) {
        REQUIRE(centered_signed_value(s, t, SymbolicN{}) == centered_value(s, t, SymbolicN{}));
      }
    }
  }
  const auto parts = enumerate_partitions(5);
  for (long n = 5; n <= 10; ++n) {
    for (const auto& s : parts) {
      for (const auto& t : parts) {
        REQUIRE(centered_signed_value(s, t, NumericN{n}) == centered_value(s, t, NumericN{n}));
      }
    }
  }
}

TEST_CASE("symbolic values agree with numeric evaluation") {
  for (int k = 1; k <= 4; ++k) {
    for (const auto& s : enumerate_partitions(k)) {
      for (const auto& t : enumerate_partitions(k)) {
        const RationalFunction w = wg_value(s, t, SymbolicN{});
        const RationalFunction c = centered_value(s, t, SymbolicN{});
        for (long n = k; n <= k + 3; ++n) {
          REQUIRE(w.evaluate(n) == wg_value(s, t, NumericN{n}));
          REQUIRE(c.evaluate(n) == centered_value(s, t, NumericN{n}));
        }
      }
    }
  }
}

TEST_CASE("denominator divides (N)_k, all pairs k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    const RationalFunction ff = falling(k);
    for (const auto& s : enumerate_partitions(k)) {
      for (const auto& t : enumerate_partitions(k)) {
        REQUIRE((wg_value(s, t, SymbolicN{}) * ff).is_polynomial());
      }
    }
  }
}

TEST_CASE("sign law: (-1)^(#s+#t) cWg >= 0, k <= 5, N = k..k+5") {
  int zeros = 0;
  for (int k = 1; k <= 5; ++k) {
    for (long n = k; n <= k + 5; ++n) {
      for (const auto& s : enumerate_partitions(k)) {
        for (const auto& t : enumerate_partitions(k)) {
          Rational v = centered_value(s, t, NumericN{n});
          if ((s.block_count() + t.block_count()) % 2 == 1) v = -v;
          REQUIRE(v.sign() >= 0);
          if (v.is_zero()) {
            ++zeros;
            CHECK(k == 1);  // only a_1 = 0
          }
        }
      }
    }
  }
  CHECK(zeros == 6);
}

TEST_CASE("block-count profile") {
  const auto c = block_count_profile(P("1_3", 3), P("1_3", 3));
  REQUIRE(c.size() == 4);
  CHECK(c[0] == 0);
  CHECK(c[1] == 1);
  CHECK(c[2] == 3);
  CHECK(c[3] == 4);
  for (int k = 1; k <= 4; ++k) {
    for (const auto& s : enumerate_partitions(k)) {
      for (const auto& t : enumerate_partitions(k)) {
        const auto prof = block_count_profile(s, t);
        CHECK(prof == block_count_profile(t, s));
        RationalFunction total(0);
        for (int j = 1; j <= k; ++j) total += RationalFunction(Rational(prof[static_cast<std::size_t>(j)])) / falling(j);
        REQUIRE(total == wg_value(s, t, SymbolicN{}));
      }
    }
  }
}

TEST_CASE("a_k frozen values") {
  const RationalFunction n = N();
  const RationalFunction one(1);
  CHECK(sym(a_k_explicit(0, Dimension::symbolic()).value) == one);
  CHECK(sym(a_k_explicit(1, Dimension::symbolic()).value) == RationalFunction(0));
  CHECK(sym(a_k_explicit(2, Dimension::symbolic()).value) == (n * n * (n - one)).inverse());
  CHECK(sym(a_k_explicit(3, Dimension::symbolic()).value) ==
        RationalFunction(4) / (n * n * n * (n - one) * (n - RationalFunction(2))));
  CHECK(sym(a_k_explicit(4, Dimension::symbolic()).value) ==
        RationalFunction(3) * (n + RationalFunction(6)) / (n * n * n * falling(4)));
  CHECK(sym(a_k_explicit(5, Dimension::symbolic()).value) ==
        RationalFunction(8) * (RationalFunction(5) * n + RationalFunction(12)) / (n * n * n * n * falling(5)));
  CHECK(num(a_k_explicit(3, Dimension::numeric(10)).value) == Rational(1, 18000));
  CHECK(num(a_k_explicit(4, Dimension::numeric(10)).value) == Rational(1, 105000));
  CHECK(num(a_k_explicit(3, Dimension::numeric(6)).value) == Rational(1, 1080));
  CHECK(num(a_k_explicit(4, Dimension::numeric(7)).value) == Rational(13, 96040));
}

TEST_CASE("a_k against the S_N oracle") {
  for (long n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::vector<oracle::Entry> diag;
      for (int m = 1; m <= k; ++m) diag.push_back({m, m, true});
      REQUIRE(num(a_k_explicit(k, Dimension::numeric(n)).value) == oracle::sn_average(n, diag));
    }
  }
}

TEST_CASE("a_k route agreement and positivity") {
  for (long n : {31L, 50L, 100L}) {
    const auto table = a_recursive_prefix(30, NumericN{n});
    for (int k = 0; k <= 30; ++k) {
      const Value ex = a_k_explicit(k, Dimension::numeric(n)).value;
      REQUIRE(ex == Value(table[static_cast<std::size_t>(k)]));
      REQUIRE(ex == a_k_recursive(k, Dimension::numeric(n)).value);
      REQUIRE(ex == a_k_kummer(k, n).value);
    }
  }
  for (int k = 2; k <= 30; ++k) {
    for (long n : {static_cast<long>(k) + 1, static_cast<long>(k) + 5, 2L * k, 100L}) {
      REQUIRE(num(a_k_explicit(k, Dimension::numeric(n)).value).sign() > 0);
    }
  }
  const auto table = a_k_table(10, Dimension::symbolic());
  for (int k = 0; k <= 10; ++k) REQUIRE(table[static_cast<std::size_t>(k)] == a_k_explicit(k, Dimension::symbolic()).value);
  CHECK(a_k_recursive(4, Dimension::numeric(4)).route == AkRoute::Recursion);
}

TEST_CASE("a_k route preconditions") {
  try {
    (void)a_k_recursive(5, Dimension::numeric(3));
    FAIL("expected a recursion pole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RecursionPole);
  }
  CHECK_THROWS_AS(a_k_kummer(5, 4), Error);
  CHECK_THROWS_AS(a_k_explicit(-1, Dimension::symbolic()), Error);
}

TEST_CASE("centered diagonal coefficient equals a_k, k <= 6") {
  for (int k = 1; k <= 6; ++k) {
    const SetPartition z = SetPartition::finest(k);
    CHECK(centered_value(z, z, SymbolicN{}) == a_explicit(k, SymbolicN{}));
    CHECK(centered_signed_value(z, z, SymbolicN{}) == a_explicit(k, SymbolicN{}));
  }
}

TEST_CASE("a_k shift identity for 0 <= d <= p <= 8 at N = 10") {
  const NumericN n{10};
  for (int p = 0; p <= 8; ++p) {
    for (int d = 0; d <= p; ++d) {
      Rational lhs(0);
      for (int i = 0; i <= p - d; ++i) {
        lhs += Rational(binomial(p - d, i)) * Rational(10).pow(-i) * a_explicit(p - i, n);
      }
      Rational rhs(0);
      for (int i = 0; i <= d; ++i) {
        rhs += Rational(binomial(d, i)) * Rational(factorial(10 - p + i)) / Rational(factorial(10)) *
               Rational(-10).pow(-i);
      }
      CAPTURE(p);
      CAPTURE(d);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("binomial lemma against Pascal's triangle") {
  std::vector<std::vector<long long>> pascal(21, std::vector<long long>(21, 0));
  for (int n = 0; n <= 20; ++n) {
    pascal[n][0] = 1;
    for (int r = 1; r <= n; ++r) pascal[n][r] = pascal[n - 1][r - 1] + pascal[n - 1][r];
  }
  const auto c = [&](int n, int r) -> long long { return (r < 0 || r > n || n < 0) ? 0 : pascal[n][r]; };
  for (int k = 0; k <= 20; ++k) {
    for (int l = 0; l <= k; ++l) {
      for (int m = 0; m <= k; ++m) {
        long long lhs = 0;
        for (int j = 0; j <= k - l; ++j) lhs += (j % 2 ? -1 : 1) * c(k - l, j) * c(k - j, k - m);
        const auto id = binomial_identity(k, l, m);
        REQUIRE(id.lhs == BigInt(static_cast<long>(lhs)));
        REQUIRE(id.rhs == BigInt(static_cast<long>(l >= m ? c(l, l - m) : 0)));
        REQUIRE(id.holds());
      }
    }
  }
  CHECK_THROWS_AS(binomial_identity(3, 4, 0), Error);
}

TEST_CASE("numeric evaluation needs N >= k") {
  try {
    (void)wg(P("1_3", 3), P("1_3", 3), Dimension::numeric(2));
    FAIL("expected dimension error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionTooSmall);
  }
  CHECK_THROWS_AS(wg_centered_reformulated(P("1_2", 2), P("1_3", 3), Dimension::numeric(5)), Error);
}

TEST_CASE("entry metadata and formula names") {
  const WgEntry e = weingarten_entry(P("1,2", 2), P("1|2", 2), Dimension::numeric(4), WgFormula::SignedCentered);
  CHECK(e.k == 2);
  CHECK(e.centered);
  CHECK(e.formula == WgFormula::SignedCentered);
  CHECK(e.sigma == P("1,2", 2));
  CHECK(e.dimension == Dimension::numeric(4));
  CHECK(parse_wg_formula("reform") == WgFormula::ReformulatedCentered);
  CHECK(parse_wg_formula("signed") == WgFormula::SignedCentered);
  CHECK(parse_wg_formula("closed") == WgFormula::Closed);
  CHECK_THROWS_AS(parse_wg_formula("other"), Error);
}

TEST_CASE("memoized evaluation is consistent across threads") {
  const auto parts = enumerate_partitions(5);
  std::vector<Rational> serial;
  for (const auto& s : parts) serial.push_back(centered_value(s, parts.back(), NumericN{11}));
  std::vector<std::vector<Rational>> results(4);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < results.size(); ++w) {
    workers.emplace_back([&, w] {
      for (const auto& s : parts) results[w].push_back(centered_value(s, parts.back(), NumericN{11 + static_cast<long>(w % 2) * 2}));
    });
  }
  for (auto& t : workers) t.join();
  CHECK(results[0] == serial);
  CHECK(results[2] == serial);
  CHECK(results[1] == results[3]);
}
