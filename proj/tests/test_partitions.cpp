#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wgcalc/error.hpp"

using namespace testutil;

TEST_CASE("parse and format") {
  const SetPartition p = P("1,3|2|4", 0);
  CHECK(p.size() == 4);
  CHECK(p.block_count() == 3);
  CHECK(p.to_string() == "1,3|2|4");
  CHECK(P("2|4|3,1", 4) == p);  // non-canonical input is canonicalized
  CHECK(P(" 1 , 3 | 2 | 4 ", 4) == p);
  CHECK(P("0_3", 0) == SetPartition::finest(3));
  CHECK(P("1_k", 5) == SetPartition::coarsest(5));
  CHECK(P("0_k", 2).to_string() == "1|2");
  CHECK(SetPartition::coarsest(3).to_string() == "1,2,3");
  CHECK(SetPartition::from_blocks(3, {{2, 3}, {1}}).to_string() == "1|2,3");
}

TEST_CASE("malformed partitions are rejected") {
  for (const char* bad : {"1,2|2", "1|3", "", "1,,2", "a|b", "0_k", "1,2|3,x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(SetPartition::parse(bad, 0), Error);
  }
  CHECK_THROWS_AS(SetPartition::parse("1,2", 3), Error);  // k hint disagrees
  CHECK_THROWS_AS(SetPartition::finest(0), Error);
  CHECK_THROWS_AS(SetPartition::finest(SetPartition::kMaxGround + 1), Error);
}

TEST_CASE("round trip over all of P(k), k <= 7") {
  for (int k = 1; k <= 7; ++k) {
    for (const auto& p : enumerate_partitions(k)) {
      REQUIRE(SetPartition::parse(p.to_string(), k) == p);
      REQUIRE(SetPartition::parse(p.to_string(), 0) == p);
    }
  }
}

TEST_CASE("Bell numbers and enumeration against the insertion oracle") {
  const long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147};
  for (int k = 1; k <= 9; ++k) {
    CHECK(bell_number(k) == bell[k]);
    const auto parts = enumerate_partitions(k);
    CHECK(static_cast<long>(parts.size()) == bell[k]);
    CHECK(std::is_sorted(parts.begin(), parts.end()));
    CHECK(std::adjacent_find(parts.begin(), parts.end()) == parts.end());
    if (k <= 7) CHECK(parts == oracle::all_partitions(k));
  }
  CHECK(bell_number(15).get_str() == "1382958545");
}

TEST_CASE("enumeration is capped") {
  CHECK_NOTHROW(enumerate_partitions(3, 3));
  try {
    (void)enumerate_partitions(13);
    FAIL("expected the default cap to trip");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EnumerationTooLarge);
  }
}

TEST_CASE("order matches block containment") {
  for (int k = 1; k <= 5; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts) {
      for (const auto& b : parts) REQUIRE(leq(a, b) == oracle::refines(a, b));
    }
  }
}

TEST_CASE("lattice laws, exhaustive k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts) {
      REQUIRE(meet(a, a) == a);
      REQUIRE(join(a, a) == a);
      for (const auto& b : parts) {
        REQUIRE(meet(a, b) == meet(b, a));
        REQUIRE(join(a, b) == join(b, a));
        REQUIRE(meet(a, join(a, b)) == a);
        REQUIRE(join(a, meet(a, b)) == a);
      }
    }
    if (k <= 4) {
      for (const auto& a : parts) {
        for (const auto& b : parts) {
          for (const auto& c : parts) {
            REQUIRE(meet(meet(a, b), c) == meet(a, meet(b, c)));
            REQUIRE(join(join(a, b), c) == join(a, join(b, c)));
          }
        }
      }
    }
  }
}

TEST_CASE("meet and join are the extreme bounds, against brute force over leq") {
  for (int k = 1; k <= 5; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        std::vector<SetPartition> lower;
        std::vector<SetPartition> upper;
        for (const auto& c : parts) {
          if (oracle::refines(c, a) && oracle::refines(c, b)) lower.push_back(c);
          if (oracle::refines(a, c) && oracle::refines(b, c)) upper.push_back(c);
        }
        std::vector<SetPartition> maximal;
        for (const auto& c : lower) {
          bool top = true;
          for (const auto& d : lower) top = top && (d == c || !oracle::refines(c, d));
          if (top) maximal.push_back(c);
        }
        std::vector<SetPartition> minimal;
        for (const auto& c : upper) {
          bool bottom = true;
          for (const auto& d : upper) bottom = bottom && (d == c || !oracle::refines(d, c));
          if (bottom) minimal.push_back(c);
        }
        REQUIRE(maximal.size() == 1);
        REQUIRE(minimal.size() == 1);
        REQUIRE(meet(a, b) == maximal.front());
        REQUIRE(join(a, b) == minimal.front());
      }
    }
  }
}

TEST_CASE("ground set mismatch") {
  try {
    (void)meet(P("1,2", 2), P("1|2|3", 3));
    FAIL("expected mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GroundSetMismatch);
  }
  CHECK_THROWS_AS(leq(P("1", 1), P("1,2", 2)), Error);
  CHECK_THROWS_AS(convolve(IncidenceFunction::zeta(2), IncidenceFunction::zeta(3)), Error);
}

TEST_CASE("Mobius function against the defining recursion, k <= 5") {
  for (int k = 1; k <= 5; ++k) {
    const oracle::MobiusTable mu(k);
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        REQUIRE(mobius(a, b) == mu(a, b));
        if (leq(a, b)) REQUIRE(Rational(to_bigint(mobius_below(a, b))) == mu(a, b));
      }
    }
  }
  CHECK(mobius(SetPartition::finest(4), SetPartition::coarsest(4)) == Rational(-6));
  CHECK(mobius(P("1,2|3", 3), P("1|2|3", 3)) == Rational(0));
  CHECK(zeta(P("1|2|3", 3), P("1,2|3", 3)) == Rational(1));
  CHECK(zeta(P("1,2|3", 3), P("1|2,3", 3)) == Rational(0));
}

TEST_CASE("Mobius inversion in the incidence algebra, k <= 7") {
  for (int k = 1; k <= 7; ++k) {
    const auto mu = IncidenceFunction::mobius(k);
    const auto ze = IncidenceFunction::zeta(k);
    const auto de = IncidenceFunction::delta(k);
    CHECK(convolve(mu, ze) == de);
    CHECK(convolve(ze, mu) == de);
  }
}

TEST_CASE("column sums of Mobius, k <= 7") {
  for (int k = 1; k <= 7; ++k) {
    for (const auto& s : enumerate_partitions(k)) {
      Rational sum(0);
      for_each_below(s, [&](const SetPartition& p) { sum += mobius(p, s); });
      REQUIRE(sum == Rational(s == SetPartition::finest(k) ? 1 : 0));
    }
  }
}

TEST_CASE("interval enumeration") {
  for (int k = 1; k <= 6; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& upper : parts) {
      std::vector<SetPartition> expected;
      for (const auto& p : parts) {
        if (oracle::refines(p, upper)) expected.push_back(p);
      }
      REQUIRE(interval_below(upper) == expected);
    }
  }
  // The interval below 1_k is all of P(k).
  CHECK(interval_below(SetPartition::coarsest(8)).size() == 4140);
}

TEST_CASE("incidence functions store comparable pairs only") {
  IncidenceFunction f(3);
  CHECK_THROWS_AS(f.set(P("1,2|3", 3), P("1|2,3", 3), Rational(1)), Error);
  CHECK_NOTHROW(f.set(P("1,2|3", 3), P("1|2,3", 3), Rational(0)));
  f.set(P("1|2|3", 3), P("1_3", 3), Rational(5));
  CHECK(f.at(P("1|2|3", 3), P("1_3", 3)) == Rational(5));
  f.set(P("1|2|3", 3), P("1_3", 3), Rational(0));
  CHECK(f.values().empty());
}

TEST_CASE("singletons of the join are singletons of both, k <= 6") {
  for (int k = 1; k <= 6; ++k) {
    const auto parts = enumerate_partitions(k);
    for (const auto& a : parts) {
      const auto da = singleton_set(a);
      const std::set<int> sa(da.begin(), da.end());
      for (const auto& b : parts) {
        const auto dj = singleton_set(join(a, b));
        REQUIRE(dj.size() <= da.size());
        REQUIRE(dj.size() <= singleton_set(b).size());
        for (int x : dj) REQUIRE(sa.count(x) == 1);
      }
    }
  }
}

TEST_CASE("restriction and level partitions") {
  CHECK(restrict(P("1,3|2,4", 4), {1, 2, 3}) == P("1,3|2", 3));
  CHECK(restrict(P("1,2,3,4", 4), {2, 4}) == P("1,2", 2));
  CHECK_THROWS_AS(restrict(P("1,2", 2), {}), Error);
  CHECK_THROWS_AS(restrict(P("1,2", 2), {3}), Error);
  const std::vector<long> idx = {5, 2, 5, 7};
  CHECK(level_partition(idx) == P("1,3|2|4", 4));
  CHECK(level_partition(MultiIndex({1, 1, 2}, 2)) == P("1,2|3", 3));
  CHECK_THROWS_AS(MultiIndex({1, 3}, 2), Error);
  CHECK_THROWS_AS(MultiIndex({0}, 2), Error);
}
