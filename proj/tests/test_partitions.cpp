#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "totime/error.hpp"
#include "totime/partitions.hpp"

using namespace totime;
using oracle::tp;

namespace {

const TimeDomain unit = TimeDomain::dense(0, 1);

TimePoint inside(const Block& b) {
  return b.is_singleton() ? b.lo : TimePoint((b.lo.value() + b.hi.value()) / 2);
}

OrderedPartition cut_at(const TimePoint& c) {
  return OrderedPartition(unit, 0, {Interval::closed_open(0, c), Interval::closed(c, 1)});
}

OrderedPartition random_partition(const TimeDomain& d, const TimePoint& start, std::mt19937_64& rng) {
  // Change partition of a random one-player history restricted to T^start.
  std::vector<std::size_t> radix{3};
  if (d.is_chain()) {
    auto rows = oracle::random_rows(d.size(), radix, rng);
    return change_partition(chain_history(d, rows), 0, start);
  }
  return change_partition(oracle::random_dense_history(d, radix, rng, 4, 16), 0, start);
}

}  // namespace

TEST_CASE("block order") {
  CHECK(block_leq(Interval::closed_open(0, tp(1, 3)), Interval::closed(tp(1, 3), 1)));
  Block s = Interval::closed(tp(1, 4), tp(1, 2));
  CHECK(block_leq(s, s));
  CHECK_FALSE(block_leq(Interval::closed(0, tp(1, 2)), Interval::closed(tp(1, 2), 1)));
}

TEST_CASE("change partition examples") {
  auto constant = PiecewiseHistory::constant(unit, {0});
  CHECK(change_partition(constant, 0, 0).blocks() == std::vector<Block>{Interval::closed(0, 1)});
  PiecewiseHistory h(unit, {{{Interval::closed_open(0, tp(1, 2)), 0}, {Interval::closed(tp(1, 2), 1), 1}}});
  CHECK(change_partition(h, 0, 0).blocks() ==
        std::vector<Block>{Interval::closed_open(0, tp(1, 2)), Interval::closed(tp(1, 2), 1)});
  TimeDomain c3 = TimeDomain::chain(3);
  std::vector<std::vector<ActionIndex>> rows{{0}, {1}, {0}};
  auto p = change_partition(chain_history(c3, rows), 0, 0);
  std::vector<Block> expect;
  for (auto [a, b] : oracle::chain_runs(rows, 0, 0))
    expect.push_back(Interval::closed(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)));
  CHECK(p.blocks() == expect);
  CHECK(p.size() == 3);
  // Starting later cuts the first block.
  CHECK(change_partition(h, 0, tp(3, 4)).blocks() == std::vector<Block>{Interval::closed(tp(3, 4), 1)});
}

TEST_CASE("partitions must cover the subgame exactly") {
  CHECK_THROWS_AS(OrderedPartition(unit, 0, {Interval::closed_open(0, tp(1, 2))}), Error);
  CHECK_THROWS_AS(OrderedPartition(unit, 0, {Interval::closed(0, tp(1, 2)), Interval::closed(tp(1, 2), 1)}), Error);
}

TEST_CASE("meet examples") {
  OrderedPartition whole(unit, 0, {Interval::closed(0, 1)});
  CHECK(meet2(whole, whole) == whole);
  auto m = meet2(cut_at(tp(1, 2)), cut_at(tp(1, 3)));
  CHECK(m.blocks() == std::vector<Block>{Interval::closed_open(0, tp(1, 3)), Interval::closed_open(tp(1, 3), tp(1, 2)),
                                         Interval::closed(tp(1, 2), 1)});
  CHECK(m.blocks() == oracle::choice_meet({cut_at(tp(1, 2)), cut_at(tp(1, 3))}));
  TimeDomain c3 = TimeDomain::chain(3);
  OrderedPartition a(c3, 0, {Interval::closed(0, 0), Interval::closed(1, 2)});
  OrderedPartition b(c3, 0, {Interval::closed(0, 1), Interval::closed(2, 2)});
  CHECK(meet2(a, b).size() == 3);
  std::vector<OrderedPartition> three{cut_at(tp(1, 4)), cut_at(tp(1, 2)), cut_at(tp(3, 4))};
  auto m3 = meetN(three);
  CHECK(m3.blocks() == std::vector<Block>{Interval::closed_open(0, tp(1, 4)), Interval::closed_open(tp(1, 4), tp(1, 2)),
                                          Interval::closed_open(tp(1, 2), tp(3, 4)), Interval::closed(tp(3, 4), 1)});
  CHECK(m3.blocks() == oracle::choice_meet(three));
  std::vector<OrderedPartition> one{cut_at(tp(1, 4))};
  CHECK(meetN(one) == one.front());
  std::vector<OrderedPartition> two{cut_at(tp(1, 4)), cut_at(tp(1, 2))};
  CHECK(meetN(two) == meet2(two[0], two[1]));
}

TEST_CASE("meet errors") {
  std::vector<OrderedPartition> none;
  try {
    meetN(none);
    FAIL("expected EmptyFamily");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyFamily);
  }
  OrderedPartition late(unit, tp(1, 2), {Interval::closed(tp(1, 2), 1)});
  try {
    meet2(cut_at(tp(1, 4)), late);
    FAIL("expected StartMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StartMismatch);
  }
}

TEST_CASE("meet is commutative, associative, idempotent and refines both sides") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 200; ++round) {
    TimeDomain d = round % 2 ? unit : TimeDomain::chain(6);
    TimePoint start = d.is_chain() ? TimePoint(static_cast<std::int64_t>(rng() % 3)) : tp(static_cast<std::int64_t>(rng() % 4), 8);
    auto p = random_partition(d, start, rng), q = random_partition(d, start, rng), r = random_partition(d, start, rng);
    CHECK(meet2(p, q) == meet2(q, p));
    CHECK(meet2(meet2(p, q), r) == meet2(p, meet2(q, r)));
    CHECK(meet2(p, p) == p);
    std::vector<OrderedPartition> list{p, q, r}, shuffled{r, p, q};
    CHECK(meetN(list) == meetN(shuffled));
    CHECK(meetN(list).blocks() == oracle::choice_meet(list));
    auto m = meet2(p, q);
    CHECK(is_well_ordered(m).well_ordered);
    for (const auto& b : m.blocks()) {
      for (const auto* side : {&p, &q}) {
        auto holders = std::count_if(side->blocks().begin(), side->blocks().end(), [&](const Block& s) { return subset(b, s); });
        CHECK(holders == 1);
      }
    }
  }
}

TEST_CASE("change partitions are ordered disjoint covers of maximal constant runs") {
  std::mt19937_64 rng(22);
  for (int round = 0; round < 300; ++round) {
    auto h = oracle::random_dense_history(unit, {2}, rng);
    TimePoint t = tp(static_cast<std::int64_t>(rng() % 8), 8);
    auto p = change_partition(h, 0, t);
    const auto& blocks = p.blocks();
    REQUIRE_FALSE(blocks.empty());
    CHECK(blocks.front().lo == t);
    CHECK(blocks.front().lo_closed);
    CHECK(blocks.back().hi == TimePoint(1));
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      ActionIndex a = eval_player(h, 0, inside(blocks[k]));
      for (const auto& s : oracle::grid_points(blocks[k].lo, blocks[k].hi, 8))
        if (blocks[k].contains(s)) CHECK(eval_player(h, 0, s) == a);
      if (k + 1 < blocks.size()) {
        CHECK(touches(unit, blocks[k], blocks[k + 1]));
        CHECK(block_leq(blocks[k], blocks[k + 1]));
        CHECK_FALSE(block_leq(blocks[k + 1], blocks[k]));
        // Maximality: the action changes across every boundary.
        ActionIndex next = eval_player(h, 0, inside(blocks[k + 1]));
        CHECK(next != a);
      }
    }
  }
}

TEST_CASE("harmonic families") {
  auto desc = RuleFamily::harmonic_descending();
  auto v = is_well_ordered(desc);
  CHECK_FALSE(v.well_ordered);
  REQUIRE(v.witness.size() >= 2);
  for (std::size_t k = 1; k < v.witness.size(); ++k) {
    CHECK(block_leq(v.witness[k], v.witness[k - 1]));
    CHECK_FALSE(block_leq(v.witness[k - 1], v.witness[k]));
  }
  CHECK(desc.member(1) == Interval::open_closed(tp(1, 2), 1));
  CHECK(desc.limit_block() == Interval::point(0));
  auto asc = RuleFamily::harmonic_ascending();
  CHECK(is_well_ordered(asc).well_ordered);
  CHECK(asc.member(1) == Interval::closed_open(0, tp(1, 2)));
  CHECK(is_well_ordered(RuleFamily::finite({Interval::closed(0, 1)})).well_ordered);
}
