#pragma once

#include <span>
#include <string>
#include <vector>

#include "totime/histories.hpp"

namespace totime {

/// A nonempty connected subset of T^t.
using Block = Interval;

/// S <= R iff S = R or every point of S lies before every point of R.
bool block_leq(const Block& s, const Block& r);

/// A partition of T^start into connected blocks listed in block order.
class OrderedPartition {
 public:
  /// Normalizes and sorts the blocks; throws CoverageGap/CoverageOverlap unless
  /// they partition T^start.
  OrderedPartition(TimeDomain domain, TimePoint start, std::vector<Block> blocks);

  const TimeDomain& domain() const noexcept { return domain_; }
  const TimePoint& start() const noexcept { return start_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;

 private:
  TimeDomain domain_;
  TimePoint start_;
  std::vector<Block> blocks_;
};

/// Maximal connected blocks of T^t on which player i's action is constant.
OrderedPartition change_partition(const PiecewiseHistory& h, PlayerId i, const TimePoint& t);

/// Infinite block families used to exercise the well-order checker. Members are
/// indexed by n = 1, 2, ... with an optional extra limit block.
class RuleFamily {
 public:
  enum class Kind { FiniteList, HarmonicDescending, HarmonicAscending };

  static RuleFamily finite(std::vector<Block> blocks);
  /// {0} and (1/(n+1), 1/n] on [0,1].
  static RuleFamily harmonic_descending();
  /// [1-1/n, 1-1/(n+1)) and {1} on [0,1].
  static RuleFamily harmonic_ascending();

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::FiniteList; }
  const std::vector<Block>& finite_blocks() const noexcept { return blocks_; }
  /// n-th indexed member, n >= 1 (infinite kinds only).
  Block member(std::size_t n) const;
  std::optional<Block> limit_block() const;
  std::string name() const;

 private:
  explicit RuleFamily(Kind kind, std::vector<Block> blocks = {}) : kind_(kind), blocks_(std::move(blocks)) {}

  Kind kind_;
  std::vector<Block> blocks_;
};

struct WellOrderVerdict {
  bool well_ordered = true;
  std::string reason;
  /// When not well-ordered: leading members of a subfamily with no least element,
  /// each strictly after the next.
  std::vector<Block> witness;
};

/// Finite block lists are always well-ordered.
WellOrderVerdict is_well_ordered(const OrderedPartition& p);
/// Decides the order type of an indexed family from the direction of its index
/// order, confirmed on the first `probe` members.
WellOrderVerdict is_well_ordered(const RuleFamily& family, std::size_t probe = 100);

OrderedPartition meet2(const OrderedPartition& p, const OrderedPartition& q);
OrderedPartition meetN(std::span<const OrderedPartition> ps);

}  // namespace totime
