#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "totime/axioms.hpp"
#include "totime/error.hpp"

using namespace totime;
using fixture::Rows;
using oracle::tp;

namespace {

const TimeDomain unit = TimeDomain::dense(0, 1);
const GameFrame solo{unit, {2}};
const GameFrame duel{unit, {2, 2}};
constexpr ActionIndex C = 0, D = 1;

IntervalSet from(const TimeDomain& d, const TimePoint& t) { return IntervalSet::from(d, {ray_from(d, t)}); }

StrategyPtr first_one(const GameFrame& f) {
  return fixture::table_from(f, 0, [](std::size_t, const Rows& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r[0] == 0; }) ? 1u : 0u;
  });
}

// 0 on [0,1/2], 1 on (1/2,1]
PiecewiseHistory late_switch() {
  return PiecewiseHistory(unit, {{{Interval::closed(0, tp(1, 2)), 0}, {Interval::open_closed(tp(1, 2), 1), 1}}});
}

// Re-checks a failing initial-uniqueness witness: the two histories disagree for
// player i somewhere in every window (t, t + 2^-k).
bool disagree_near(const AxiomReport& r, PlayerId i) {
  const auto& w = *r.witness;
  const TimePoint& t = w.times.front();
  for (int k = 1; k <= 30; ++k) {
    Rational width(1, Integer(1) << k);
    bool found = false;
    for (int j = 1; j < 8 && !found; ++j) {
      TimePoint s(t.value() + width * Rational(j, 8));
      found = eval_player(w.histories[0], i, s) != eval_player(w.histories[1], i, s);
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("consistency examples") {
  Profile k{make_constant(duel, 0, C), make_constant(duel, 1, D)};
  auto h = PiecewiseHistory::constant(unit, {C, D});
  auto r = is_consistent(h, k, 0, from(unit, 0));
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.method == Method::WitnessBased);

  TimeDomain c3 = TimeDomain::chain(3);
  Profile p{first_one(GameFrame{c3, {2}})};
  CHECK(is_consistent(chain_history(c3, {{1}, {0}, {0}}), p, 0, from(c3, 0)).verdict == Verdict::Pass);
  auto zeros = chain_history(c3, {{0}, {0}, {0}});
  // Over the whole chain the rule already asks for 1 at time 0.
  auto all = is_consistent(zeros, p, 0, from(c3, 0));
  CHECK(all.verdict == Verdict::Fail);
  CHECK(all.first_violation == TimePoint(0));
  // From time 1 the all-zero prefix asks for 1 at time 1.
  auto later = is_consistent(zeros, p, 1, from(c3, 1));
  CHECK(later.verdict == Verdict::Fail);
  CHECK(later.first_violation == TimePoint(1));
  CHECK(later.expected == 1);
  CHECK(later.actual == 0);
  CHECK(eval_player(zeros, 0, 1) != p[0]->respond(1, prefix(zeros, 1)).action);
}

TEST_CASE("consistency failures on dense histories point at the violation") {
  Profile g{make_grim_trigger(duel, 0, C, D, Trigger{1, {D}}, oracle::q(1, 4)), make_frictional(duel, 1, C, {{tp(1, 2), D}})};
  // Player 1 punishes too late.
  PiecewiseHistory h(unit, {{{Interval::closed_open(0, tp(7, 8)), C}, {Interval::closed(tp(7, 8), 1), D}},
                            {{Interval::closed_open(0, tp(1, 2)), C}, {Interval::point(tp(1, 2)), D}, {Interval::open_closed(tp(1, 2), 1), C}}});
  auto r = is_consistent(h, g, 0, from(unit, 0));
  REQUIRE(r.verdict == Verdict::Fail);
  REQUIRE(r.first_violation.has_value());
  CHECK(*r.first_violation == tp(3, 4));
  CHECK(r.player == PlayerId{0});
  CHECK(eval_player(h, 0, *r.first_violation) != g[0]->respond(*r.first_violation, prefix(h, *r.first_violation)).action);
}

TEST_CASE("sets outside the subgame are rejected") {
  Profile k{make_constant(solo, 0, 0)};
  auto h = PiecewiseHistory::constant(unit, {0});
  try {
    is_consistent(h, k, tp(1, 2), IntervalSet::from(unit, {Interval::closed(tp(1, 4), 1)}));
    FAIL("expected SetOutsideSubgame");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SetOutsideSubgame);
  }
}

TEST_CASE("traceability") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 40; ++round) {
    auto game = fixture::random_chain_game(rng);
    const auto& d = game.frame.domain;
    auto h = chain_history(d, fixture::random_rows(d.size(), game.frame, rng));
    for (std::size_t t = 0; t < d.size(); ++t) {
      auto r = check_traceability(*game.profile.back(), static_cast<std::int64_t>(t), h);
      CHECK(r.verdict == Verdict::Pass);
      CHECK(r.method == Method::Exhaustive);
    }
  }
  auto no_trace = make_gallery(solo, "no_trace");
  auto nt = check_traceability(*no_trace, 0, PiecewiseHistory::constant(unit, {0}));
  CHECK(nt.verdict == Verdict::Fail);
  REQUIRE(nt.witness.has_value());

  auto k = make_constant(solo, 0, 1);
  auto kr = check_traceability(*k, tp(1, 3), PiecewiseHistory::constant(unit, {0}));
  CHECK(kr.verdict == Verdict::Pass);
  REQUIRE(kr.witness.has_value());
  PiecewiseHistory expect(unit, {{{Interval::closed_open(0, tp(1, 3)), 0}, {Interval::closed(tp(1, 3), 1), 1}}});
  CHECK(kr.witness->histories.front() == expect);
}

TEST_CASE("well-orderedness") {
  auto k = make_constant(solo, 0, 0);
  std::vector<PiecewiseHistory> hs{PiecewiseHistory::constant(unit, {0}), late_switch()};
  CHECK(check_well_orderedness(*k, 0, hs).verdict == Verdict::Pass);
  auto bad = check_well_orderedness(RuleFamily::harmonic_descending());
  CHECK(bad.verdict == Verdict::Fail);
  CHECK(bad.method == Method::Analytic);
  REQUIRE(bad.witness.has_value());
  const auto& chain = bad.witness->blocks;
  REQUIRE(chain.size() >= 2);
  for (std::size_t j = 1; j < chain.size(); ++j) CHECK_FALSE(block_leq(chain[j - 1], chain[j]));
  CHECK(check_well_orderedness(RuleFamily::harmonic_ascending()).verdict == Verdict::Pass);

  // Every nonempty set of blocks of a chain partition has a least element.
  std::mt19937_64 rng(32);
  for (int round = 0; round < 50; ++round) {
    TimeDomain c4 = TimeDomain::chain(4);
    auto rows = oracle::random_rows(4, {2}, rng);
    auto blocks = change_partition(chain_history(c4, rows), 0, 0).blocks();
    for (std::uint32_t mask = 1; mask < (1u << blocks.size()); ++mask) {
      std::vector<Block> sub;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if (mask >> b & 1u) sub.push_back(blocks[b]);
      CHECK(std::any_of(sub.begin(), sub.end(), [&](const Block& m) {
        return std::all_of(sub.begin(), sub.end(), [&](const Block& x) { return block_leq(m, x); });
      }));
    }
  }
}

TEST_CASE("initial uniqueness") {
  auto multi = make_gallery(solo, "multi");
  auto zero = PiecewiseHistory::constant(unit, {0});
  auto late = late_switch();
  Profile p{multi};
  CHECK(is_consistent(zero, p, 0, from(unit, 0), {}).verdict != Verdict::Fail);
  CHECK(is_consistent(late, p, 0, from(unit, 0), {}).verdict != Verdict::Fail);
  CHECK(check_initial_uniqueness(*multi, 0, zero, late).verdict == Verdict::Pass);
  auto r = check_initial_uniqueness(*multi, tp(1, 2), zero, late);
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.witness.has_value());
  CHECK(disagree_near(r, 0));

  auto k = make_constant(solo, 0, 1);
  auto one = PiecewiseHistory::constant(unit, {1});
  CHECK(check_initial_uniqueness(*k, tp(1, 3), one, one).verdict == Verdict::Pass);
  TimeDomain c3 = TimeDomain::chain(3);
  auto t3 = first_one(GameFrame{c3, {2}});
  auto h = chain_history(c3, {{1}, {0}, {0}});
  for (std::int64_t t = 0; t < 3; ++t) CHECK(check_initial_uniqueness(*t3, t, h, h).verdict == Verdict::Pass);
  try {
    check_initial_uniqueness(*multi, tp(3, 4), zero, late);
    FAIL("expected PrefixMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrefixMismatch);
  }
}

TEST_CASE("inertiality") {
  auto k = make_constant(solo, 0, 1);
  auto kr = check_inertiality(*k, tp(1, 4), PiecewiseHistory::constant(unit, {0}));
  CHECK(kr.verdict == Verdict::Pass);
  REQUIRE(kr.witness.has_value());
  CHECK(kr.witness->times.back() == TimePoint(1));

  TimeDomain c3 = TimeDomain::chain(3);
  auto chain_multi = make_gallery(GameFrame{c3, {2}}, "multi");
  for (std::int64_t t = 0; t < 3; ++t) {
    for (std::uint32_t bits = 0; bits < 8; ++bits) {
      auto h = chain_history(c3, {{bits & 1u}, {bits >> 1 & 1u}, {bits >> 2 & 1u}});
      CHECK(check_inertiality(*chain_multi, t, h).verdict == Verdict::Pass);
    }
  }

  auto multi = make_gallery(solo, "multi");
  auto r = check_inertiality(*multi, 0, PiecewiseHistory::constant(unit, {0}));
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.witness.has_value());
  const auto& w = *r.witness;
  REQUIRE(w.histories.size() == 2);
  // Re-query both extensions at the quoted times.
  ActionIndex a0 = multi->respond(w.times[0], prefix(w.histories[0], w.times[0])).action;
  ActionIndex a1 = multi->respond(w.times[1], prefix(w.histories[1], w.times[1])).action;
  CHECK(a0 == w.actions[0]);
  CHECK(a1 == w.actions[1]);
  CHECK(a0 != a1);

  auto grim = make_grim_trigger(duel, 0, C, D, Trigger{1, {D}}, oracle::q(1, 4));
  auto gr = check_inertiality(*grim, tp(1, 3), PiecewiseHistory::constant(unit, {C, C}));
  CHECK(gr.verdict == Verdict::Pass);
  CHECK(gr.method == Method::WitnessBased);
}

TEST_CASE("frictionality") {
  auto f = make_frictional(solo, 0, C, {{tp(1, 2), D}});
  PiecewiseHistory blip(unit, {{{Interval::closed_open(0, tp(1, 2)), C}, {Interval::point(tp(1, 2)), D}, {Interval::open_closed(tp(1, 2), 1), C}}});
  auto r = check_frictionality(*f, C, 0, blip, 1);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.cases == 1);
  PiecewiseHistory tail(unit, {{{Interval::closed_open(0, tp(1, 2)), C}, {Interval::closed(tp(1, 2), 1), D}}});
  auto bad = check_frictionality(*f, C, 0, tail, 1);
  CHECK(bad.verdict == Verdict::Fail);
  REQUIRE(bad.witness.has_value());
  REQUIRE(bad.witness->blocks.size() == 1);
  const Block& b = bad.witness->blocks.front();
  CHECK(b == Interval::closed(tp(1, 2), 1));
  CHECK_FALSE(b.is_singleton());
  CHECK(eval_player(tail, 0, b.lo) != C);
  TimeDomain c3 = TimeDomain::chain(3);
  auto cf = make_constant(GameFrame{c3, {2}}, 0, 0);
  CHECK(check_frictionality(*cf, 0, 0, chain_history(c3, {{1}, {1}, {1}}), 2).verdict == Verdict::Pass);
}

TEST_CASE("chain games pass the first three axioms exhaustively") {
  std::mt19937_64 rng(33);
  for (int round = 0; round < 100; ++round) {
    auto game = fixture::random_chain_game(rng);
    for (PlayerId i = 0; i < game.profile.size(); ++i) {
      for (int a = 1; a <= 3; ++a) {
        auto r = check_axiom(game.profile, i, a);
        CHECK(r.verdict == Verdict::Pass);
        CHECK(r.method == Method::Exhaustive);
      }
    }
  }
}

TEST_CASE("inertial chain strategies pass the first three axioms") {
  std::mt19937_64 rng(34);
  std::size_t inertial = 0;
  for (int round = 0; round < 60; ++round) {
    auto game = fixture::random_chain_game(rng);
    for (PlayerId i = 0; i < game.profile.size(); ++i) {
      if (check_axiom(game.profile, i, 4).verdict != Verdict::Pass) continue;
      ++inertial;
      for (int a = 1; a <= 3; ++a) CHECK(check_axiom(game.profile, i, a).verdict == Verdict::Pass);
    }
  }
  CHECK(inertial > 0);
}

TEST_CASE("dense structured profiles") {
  Profile grim{make_grim_trigger(duel, 0, C, D, Trigger{1, {D}}, oracle::q(1, 4)), make_frictional(duel, 1, C, {{tp(1, 2), D}})};
  CheckOptions o;
  o.interior_samples = 8;
  o.extension_samples = 8;
  for (PlayerId i = 0; i < 2; ++i)
    for (int a = 1; a <= 3; ++a) CHECK(check_axiom(grim, i, a, o).verdict == Verdict::Pass);
  CHECK(check_axiom(grim, 0, 4, o).verdict == Verdict::Pass);
  CHECK(check_axiom(grim, 1, 5, o).verdict == Verdict::Pass);
  CHECK(check_axiom(grim, 0, 5, o).verdict == Verdict::Fail);
  Profile multi{make_gallery(solo, "multi")};
  CHECK(check_axiom(multi, 0, 3, o).verdict == Verdict::Fail);
  CHECK(check_axiom(multi, 0, 4, o).verdict == Verdict::Fail);
  CHECK_THROWS_AS(check_axiom(grim, 0, 6, o), Error);
}
