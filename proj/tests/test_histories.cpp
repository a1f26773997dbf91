#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "totime/error.hpp"
#include "totime/histories.hpp"

using namespace totime;
using oracle::tp;

namespace {

const TimeDomain unit = TimeDomain::dense(0, 1);
constexpr ActionIndex C = 0, D = 1;

PiecewiseHistory switch_at_half() {
  return PiecewiseHistory(unit, {{{Interval::closed_open(0, tp(1, 2)), C}, {Interval::closed(tp(1, 2), 1), D}}});
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("eval picks the piece containing t") {
  CHECK(eval(PiecewiseHistory::constant(unit, {C}), tp(1, 2)) == std::vector<ActionIndex>{C});
  CHECK(eval(switch_at_half(), tp(1, 2)) == std::vector<ActionIndex>{D});
  TimeDomain c3 = TimeDomain::chain(3);
  auto h = chain_history(c3, {{0}, {1}, {0}});
  CHECK(eval(h, 1) == std::vector<ActionIndex>{1});
  CHECK(code_of([&] { eval(h, 3); }) == ErrorCode::PointNotInDomain);
}

TEST_CASE("prefix keeps exactly the times before the cut") {
  CHECK(prefix(PiecewiseHistory::constant(unit, {C}), 0).empty());
  auto h = switch_at_half();
  HistoryPrefix p = prefix(h, tp(1, 2));
  CHECK(p.track(0) == Track{{Interval::closed_open(0, tp(1, 2)), C}});
  HistoryPrefix p3 = prefix(h, tp(3, 4));
  CHECK(p3.track(0) == Track{{Interval::closed_open(0, tp(1, 2)), C}, {Interval::closed_open(tp(1, 2), tp(3, 4)), D}});
  CHECK(code_of([&] { prefix(h, 2); }) == ErrorCode::PointNotInDomain);
}

TEST_CASE("prefix equality") {
  CHECK(prefix_equal(HistoryPrefix::initial(unit, 1), HistoryPrefix::initial(unit, 1)));
  HistoryPrefix a(unit, tp(1, 2), {{{Interval::closed_open(0, tp(1, 2)), C}}});
  HistoryPrefix b(unit, tp(1, 2), {{{Interval::closed_open(0, tp(1, 2)), C}}});
  HistoryPrefix c(unit, tp(1, 2), {{{Interval::closed_open(0, tp(1, 4)), C}, {Interval::closed_open(tp(1, 4), tp(1, 2)), D}}});
  CHECK(prefix_equal(a, b));
  CHECK_FALSE(prefix_equal(a, c));
  CHECK(code_of([&] { prefix_equal(a, HistoryPrefix::initial(unit, 1)); }) == ErrorCode::CutMismatch);
}

TEST_CASE("splice appends a tail to a prefix") {
  auto h = splice(HistoryPrefix::initial(unit, 1), {{{Interval::closed(0, 1), C}}});
  CHECK(h == PiecewiseHistory::constant(unit, {C}));
  HistoryPrefix a(unit, tp(1, 2), {{{Interval::closed_open(0, tp(1, 2)), C}}});
  CHECK(splice(a, {{{Interval::closed(tp(1, 2), 1), D}}}) == switch_at_half());
  TimeDomain c3 = TimeDomain::chain(3);
  HistoryPrefix pa = chain_prefix(c3, 1, {{0}});
  auto abb = splice(pa, {{{Interval::point(1), 1}, {Interval::point(2), 1}}});
  CHECK(chain_tuples(abb) == std::vector<std::vector<ActionIndex>>{{0}, {1}, {1}});
  CHECK(code_of([&] { splice(a, {{{Interval::open_closed(tp(1, 2), 1), D}}}); }) == ErrorCode::CoverageGap);
  CHECK(code_of([&] { splice(a, {{{Interval::closed(tp(1, 4), 1), D}}}); }) == ErrorCode::CoverageOverlap);
}

TEST_CASE("histories must cover the domain exactly once") {
  CHECK(code_of([&] { PiecewiseHistory(unit, {{{Interval::closed_open(0, tp(1, 2)), C}}}); }) == ErrorCode::CoverageGap);
  CHECK(code_of([&] {
          PiecewiseHistory(unit, {{{Interval::closed(0, tp(1, 2)), C}, {Interval::closed(tp(1, 2), 1), D}}});
        }) == ErrorCode::CoverageOverlap);
}

TEST_CASE("canonical tracks merge touching equal pieces, keep singletons") {
  PiecewiseHistory h(unit, {{{Interval::closed_open(0, tp(1, 4)), C},
                             {Interval::closed_open(tp(1, 4), tp(1, 2)), C},
                             {Interval::point(tp(1, 2)), D},
                             {Interval::open_closed(tp(1, 2), 1), C}}});
  REQUIRE(h.track(0).size() == 3);
  CHECK(h.track(0)[0].span == Interval::closed_open(0, tp(1, 2)));
  CHECK(h.track(0)[1].span.is_singleton());
}

TEST_CASE("splice then prefix returns the prefix; prefix then splice returns the history") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::size_t> radix{2, 3};
    auto h = oracle::random_dense_history(unit, radix, rng);
    for (const auto& t : oracle::grid_points(0, 1, 16)) {
      HistoryPrefix p = prefix(h, t);
      std::vector<Track> tail;
      for (PlayerId i = 0; i < h.players(); ++i) tail.push_back(restrict_track(unit, h.track(i), ray_from(unit, t)));
      PiecewiseHistory back = splice(p, tail);
      CHECK(back == h);
      CHECK(prefix(back, t) == p);
      // Equal prefixes agree at every sampled point below the cut.
      auto g = oracle::random_dense_history(unit, radix, rng);
      PiecewiseHistory mixed = splice(p, [&] {
        std::vector<Track> other;
        for (PlayerId i = 0; i < g.players(); ++i) other.push_back(restrict_track(unit, g.track(i), ray_from(unit, t)));
        return other;
      }());
      REQUIRE(prefix_equal(prefix(mixed, t), p));
      for (const auto& s : oracle::grid_points(0, t, 8)) {
        if (s < t) CHECK(eval(mixed, s) == eval(h, s));
      }
    }
  }
}

TEST_CASE("eval is constant on every canonical piece") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 200; ++round) {
    auto h = oracle::random_dense_history(unit, {3}, rng);
    for (const auto& p : h.track(0)) {
      for (const auto& s : oracle::grid_points(p.span.lo, p.span.hi, 8)) {
        if (p.span.contains(s)) CHECK(eval_player(h, 0, s) == p.action);
      }
    }
    for (std::size_t k = 1; k < h.track(0).size(); ++k) CHECK(h.track(0)[k - 1].action != h.track(0)[k].action);
  }
}

TEST_CASE("chain histories round-trip through tuples") {
  TimeDomain c4 = TimeDomain::chain(4);
  std::vector<std::vector<ActionIndex>> rows{{0, 1}, {0, 0}, {1, 1}, {1, 0}};
  CHECK(chain_tuples(chain_history(c4, rows)) == rows);
  HistoryPrefix p = chain_prefix(c4, 2, {{0, 1}, {0, 0}});
  CHECK(p.cut() == TimePoint(2));
  CHECK(p.at(1, 0) == 1);
  CHECK(code_of([&] { p.at(0, 2); }) == ErrorCode::PointNotInDomain);
}

TEST_CASE("prefix queries used by strategies") {
  HistoryPrefix p(unit, tp(3, 4),
                  {{{Interval::closed_open(0, tp(1, 2)), C}, {Interval::point(tp(1, 2)), D}, {Interval::open(tp(1, 2), tp(3, 4)), C}}});
  std::vector<ActionIndex> d{D};
  CHECK(p.played_any(0, d, tp(3, 4)));
  CHECK_FALSE(p.played_any(0, d, tp(1, 2)));
  CHECK(p.last_action(0) == C);
  CHECK_FALSE(HistoryPrefix::initial(unit, 1).last_action(0).has_value());
}

TEST_CASE("extending a prefix step by step equals building it at once") {
  HistoryPrefix p = HistoryPrefix::initial(unit, 1);
  p.extend({{{Interval::closed_open(0, tp(1, 4)), C}}}, tp(1, 4));
  p.extend({{{Interval::point(tp(1, 4)), D}, {Interval::open(tp(1, 4), tp(1, 2)), C}}}, tp(1, 2));
  HistoryPrefix whole(unit, tp(1, 2),
                      {{{Interval::closed_open(0, tp(1, 4)), C}, {Interval::point(tp(1, 4)), D}, {Interval::open(tp(1, 4), tp(1, 2)), C}}});
  CHECK(p == whole);
  CHECK(code_of([&] { p.extend({{{Interval::open(tp(1, 2), 1), C}}}, 1); }) == ErrorCode::CoverageGap);
}
