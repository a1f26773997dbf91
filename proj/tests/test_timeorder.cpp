#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "totime/error.hpp"
#include "totime/timeorder.hpp"

using namespace totime;
using oracle::q;
using oracle::tp;

namespace {
const TimeDomain unit = TimeDomain::dense(0, 1);
}

TEST_CASE("domain minimum") {
  CHECK(domain_min(TimeDomain::chain(3)) == TimePoint(0));
  CHECK(domain_min(unit) == TimePoint(0));
  CHECK(domain_min(TimeDomain::dense(q(1, 3), 2)) == tp(1, 3));
}

TEST_CASE("infimum of representable sets") {
  CHECK(inf_set(unit, IntervalSet::from(unit, {Interval::open_closed(tp(1, 2), 1)})) == tp(1, 2));
  TimeDomain c4 = TimeDomain::chain(4);
  CHECK(inf_set(c4, IntervalSet::from(c4, {Interval::closed(2, 3)})) == TimePoint(2));
  std::vector<Interval> harmonic;
  for (int n = 1; n <= 3; ++n) harmonic.push_back(Interval::open_closed(tp(1, n + 1), tp(1, n)));
  CHECK(inf_set(unit, IntervalSet::from(unit, harmonic)) == tp(1, 4));
  CHECK_THROWS_AS(inf_set(unit, IntervalSet{}), Error);
}

TEST_CASE("supremum of representable sets") {
  CHECK(sup_set(unit, IntervalSet::from(unit, {Interval::closed_open(0, tp(1, 2))})) == tp(1, 2));
  TimeDomain c4 = TimeDomain::chain(4);
  CHECK(sup_set(c4, IntervalSet::from(c4, {Interval::closed(0, 1)})) == TimePoint(1));
  CHECK(sup_set(unit, IntervalSet::from(unit, {Interval::closed_open(0, tp(1, 3)), Interval::closed_open(tp(1, 2), tp(3, 4))})) ==
        tp(3, 4));
  try {
    sup_set(unit, IntervalSet{});
    FAIL("expected EmptySet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySet);
  }
}

TEST_CASE("successor") {
  TimeDomain c3 = TimeDomain::chain(3);
  CHECK(successor(c3, 1) == TimePoint(2));
  CHECK_FALSE(successor(c3, 2).has_value());
  CHECK_FALSE(successor(unit, tp(1, 2)).has_value());
  try {
    successor(c3, 5);
    FAIL("expected PointNotInDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointNotInDomain);
  }
}

TEST_CASE("chain intervals normalize to closed integer endpoints") {
  TimeDomain c5 = TimeDomain::chain(5);
  auto n = normalize(c5, Interval::open(tp(1, 2), 3));
  REQUIRE(n);
  CHECK(*n == Interval::closed(1, 2));
  CHECK_FALSE(normalize(c5, Interval::open(1, 2)).has_value());
  CHECK_FALSE(normalize(unit, Interval::open(tp(1, 2), tp(1, 2))).has_value());
  CHECK(*normalize(unit, Interval::closed(-1, 2)) == Interval::closed(0, 1));
}

TEST_CASE("touching and precedence") {
  CHECK(touches(unit, Interval::closed_open(0, tp(1, 2)), Interval::closed(tp(1, 2), 1)));
  CHECK_FALSE(touches(unit, Interval::closed(0, tp(1, 2)), Interval::closed(tp(1, 2), 1)));
  CHECK_FALSE(touches(unit, Interval::closed_open(0, tp(1, 2)), Interval::open_closed(tp(1, 2), 1)));
  TimeDomain c5 = TimeDomain::chain(5);
  CHECK(touches(c5, Interval::closed(0, 1), Interval::closed(2, 4)));
  CHECK_FALSE(touches(c5, Interval::closed(0, 1), Interval::closed(3, 4)));
  CHECK(precedes(Interval::closed_open(0, tp(1, 2)), Interval::closed(tp(1, 2), 1)));
  CHECK_FALSE(precedes(Interval::closed(0, tp(1, 2)), Interval::closed(tp(1, 2), 1)));
}

TEST_CASE("canonical interval sets merge touching pieces and are idempotent") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    std::vector<Interval> pieces;
    int m = static_cast<int>(rng() % 5);
    for (int k = 0; k < m; ++k) {
      std::int64_t a = static_cast<std::int64_t>(rng() % 9), b = static_cast<std::int64_t>(rng() % 9);
      if (a > b) std::swap(a, b);
      pieces.push_back({tp(a, 8), tp(b, 8), rng() % 2 == 0, rng() % 2 == 0});
    }
    IntervalSet s = IntervalSet::from(unit, pieces);
    CHECK(IntervalSet::from(unit, s.pieces()) == s);
    for (std::size_t k = 1; k < s.pieces().size(); ++k) {
      CHECK(precedes(s.pieces()[k - 1], s.pieces()[k]));
      CHECK_FALSE(touches(unit, s.pieces()[k - 1], s.pieces()[k]));
    }
    // Membership agrees with the raw union on a fine grid.
    for (const auto& t : oracle::grid_points(0, 1, 64)) {
      bool raw = std::any_of(pieces.begin(), pieces.end(), [&](const Interval& i) { return i.contains(t); });
      CHECK(s.contains(t) == raw);
    }
    if (!s.empty()) {
      TimePoint lo = inf_set(unit, s), hi = sup_set(unit, s);
      for (const auto& t : oracle::grid_points(0, 1, 64)) {
        if (s.contains(t)) {
          CHECK(lo <= t);
          CHECK(t <= hi);
        }
      }
      // Tight: points of s come arbitrarily close to the infimum.
      const Interval& first = s.pieces().front();
      TimePoint near = first.lo_closed ? first.lo
                                       : TimePoint(first.lo.value() + (first.hi.value() - first.lo.value()) / 1000000);
      CHECK(s.contains(near));
    }
  }
}

TEST_CASE("successor has nothing strictly between") {
  TimeDomain c6 = TimeDomain::chain(6);
  for (std::int64_t t = 0; t < 5; ++t) {
    auto s = successor(c6, t);
    REQUIRE(s);
    CHECK(*s > TimePoint(t));
    CHECK(chain_points(c6, Interval::open(t, *s)).empty());
  }
}

TEST_CASE("rays split the domain at t") {
  CHECK(ray_from(unit, tp(1, 3)) == Interval::closed(tp(1, 3), 1));
  CHECK(*ray_before(unit, tp(1, 3)) == Interval::closed_open(0, tp(1, 3)));
  CHECK_FALSE(ray_before(unit, 0).has_value());
  TimeDomain c3 = TimeDomain::chain(3);
  CHECK(*ray_before(c3, 2) == Interval::closed(0, 1));
  CHECK(chain_points(c3, ray_from(c3, 1)).size() == 2);
}

TEST_CASE("domain construction errors") {
  CHECK_THROWS_AS(TimeDomain::chain(0), Error);
  CHECK_THROWS_AS(TimeDomain::dense(1, 1), Error);
  CHECK_THROWS_AS(unit.require(2), Error);
}
