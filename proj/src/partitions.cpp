#include "totime/partitions.hpp"

#include <algorithm>

#include "totime/error.hpp"

namespace totime {

bool block_leq(const Block& s, const Block& r) { return s == r || precedes(s, r); }

OrderedPartition::OrderedPartition(TimeDomain domain, TimePoint start, std::vector<Block> blocks)
    : domain_(std::move(domain)), start_(std::move(start)) {
  domain_.require(start_);
  Track as_track;
  as_track.reserve(blocks.size());
  // Distinct labels keep adjacent blocks from merging during canonicalization.
  for (std::size_t k = 0; k < blocks.size(); ++k) as_track.push_back({blocks[k], k});
  as_track = canonical_track(domain_, std::move(as_track));
  require_cover(domain_, as_track, ray_from(domain_, start_));
  blocks_.reserve(as_track.size());
  for (auto& p : as_track) blocks_.push_back(std::move(p.span));
}

OrderedPartition change_partition(const PiecewiseHistory& h, PlayerId i, const TimePoint& t) {
  const TimeDomain& d = h.domain();
  Track tail = restrict_track(d, h.track(i), ray_from(d, t));
  std::vector<Block> blocks;
  blocks.reserve(tail.size());
  // Canonical tracks never hold two touching pieces with one action, so each
  // restricted piece is already a maximal constant run.
  for (auto& p : tail) blocks.push_back(std::move(p.span));
  return OrderedPartition(d, t, std::move(blocks));
}

RuleFamily RuleFamily::finite(std::vector<Block> blocks) { return RuleFamily(Kind::FiniteList, std::move(blocks)); }
RuleFamily RuleFamily::harmonic_descending() { return RuleFamily(Kind::HarmonicDescending); }
RuleFamily RuleFamily::harmonic_ascending() { return RuleFamily(Kind::HarmonicAscending); }

Block RuleFamily::member(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::BadParameters, "rule family members are indexed from 1");
  Rational k(static_cast<std::int64_t>(n));
  switch (kind_) {
    case Kind::HarmonicDescending:
      return Interval::open_closed(TimePoint(Rational(1) / (k + 1)), TimePoint(Rational(1) / k));
    case Kind::HarmonicAscending:
      return Interval::closed_open(TimePoint(1 - Rational(1) / k), TimePoint(1 - Rational(1) / (k + 1)));
    case Kind::FiniteList:
      if (n > blocks_.size()) throw Error(ErrorCode::BadParameters, "member index past end of finite family");
      return blocks_[n - 1];
  }
  return blocks_.at(0);
}

std::optional<Block> RuleFamily::limit_block() const {
  switch (kind_) {
    case Kind::HarmonicDescending: return Interval::point(TimePoint(0));
    case Kind::HarmonicAscending: return Interval::point(TimePoint(1));
    case Kind::FiniteList: return std::nullopt;
  }
  return std::nullopt;
}

std::string RuleFamily::name() const {
  switch (kind_) {
    case Kind::FiniteList: return "FiniteList";
    case Kind::HarmonicDescending: return "HarmonicDescending";
    case Kind::HarmonicAscending: return "HarmonicAscending";
  }
  return "?";
}

WellOrderVerdict is_well_ordered(const OrderedPartition& p) {
  return {true, "finite chain of " + std::to_string(p.size()) + " blocks", {}};
}

WellOrderVerdict is_well_ordered(const RuleFamily& family, std::size_t probe) {
  if (family.is_finite()) {
    return {true, "finite chain of " + std::to_string(family.finite_blocks().size()) + " blocks", {}};
  }
  probe = std::max<std::size_t>(probe, 2);
  bool ascending = true;
  bool descending = true;
  for (std::size_t n = 1; n < probe; ++n) {
    Block a = family.member(n);
    Block b = family.member(n + 1);
    ascending = ascending && precedes(a, b);
    descending = descending && precedes(b, a);
  }
  auto limit = family.limit_block();
  if (ascending) {
    bool limit_last = true;
    if (limit) {
      for (std::size_t n = 1; n <= probe; ++n) limit_last = limit_last && precedes(family.member(n), *limit);
    }
    if (limit_last) {
      return {true, "members increase with their index (order type omega" + std::string(limit ? "+1" : "") + ")", {}};
    }
  }
  if (descending) {
    WellOrderVerdict v{false, "member n+1 precedes member n for every n: the indexed subfamily has no least block", {}};
    for (std::size_t n = 1; n <= probe; ++n) v.witness.push_back(family.member(n));
    return v;
  }
  throw Error(ErrorCode::BadParameters, "family " + family.name() + " is not monotone in its index");
}

OrderedPartition meet2(const OrderedPartition& p, const OrderedPartition& q) {
  if (!(p.domain() == q.domain()) || p.start() != q.start())
    throw Error(ErrorCode::StartMismatch, "partitions start at " + p.start().str() + " and " + q.start().str());
  const TimeDomain& d = p.domain();
  std::vector<Block> out;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& a = p.blocks();
  const auto& b = q.blocks();
  while (i < a.size() && j < b.size()) {
    if (auto s = intersect(d, a[i], b[j])) out.push_back(*s);
    // Advance whichever block ends first; both advance when they end together.
    const Interval& x = a[i];
    const Interval& y = b[j];
    bool x_first = x.hi < y.hi || (x.hi == y.hi && !x.hi_closed && y.hi_closed);
    bool y_first = y.hi < x.hi || (x.hi == y.hi && !y.hi_closed && x.hi_closed);
    if (x_first) {
      ++i;
    } else if (y_first) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return OrderedPartition(d, p.start(), std::move(out));
}

OrderedPartition meetN(std::span<const OrderedPartition> ps) {
  if (ps.empty()) throw Error(ErrorCode::EmptyFamily, "meet of no partitions");
  OrderedPartition acc = ps.front();
  for (std::size_t k = 1; k < ps.size(); ++k) acc = meet2(acc, ps[k]);
  return acc;
}

}  // namespace totime
