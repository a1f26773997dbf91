#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "totime/rational.hpp"

namespace totime {

/// A point of a time domain. Chain domains use the integer coordinates 0..n-1.
class TimePoint {
 public:
  TimePoint() = default;
  explicit TimePoint(Rational value) : value_(std::move(value)) {}
  TimePoint(std::int64_t index) : value_(index) {}  // NOLINT: chain indices read naturally as integers

  const Rational& value() const noexcept { return value_; }
  std::string str() const { return format_rational(value_); }

  friend bool operator==(const TimePoint& a, const TimePoint& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const TimePoint& a, const TimePoint& b) {
    int c = a.value_.compare(b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const TimePoint& t);

class TimeDomain {
 public:
  enum class Kind { FiniteChain, DenseInterval };

  static TimeDomain chain(std::size_t size);
  static TimeDomain dense(Rational lo, Rational hi);

  Kind kind() const noexcept { return kind_; }
  bool is_chain() const noexcept { return kind_ == Kind::FiniteChain; }
  bool is_dense() const noexcept { return kind_ == Kind::DenseInterval; }

  /// Number of points of a chain domain.
  std::size_t size() const noexcept { return size_; }
  TimePoint min() const { return TimePoint(lo_); }
  TimePoint max() const { return TimePoint(hi_); }

  bool contains(const TimePoint& t) const;
  void require(const TimePoint& t) const;

  std::string describe() const;

  friend bool operator==(const TimeDomain& a, const TimeDomain& b) {
    return a.kind_ == b.kind_ && a.size_ == b.size_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  TimeDomain(Kind kind, std::size_t size, Rational lo, Rational hi)
      : kind_(kind), size_(size), lo_(std::move(lo)), hi_(std::move(hi)) {}

  Kind kind_;
  std::size_t size_;
  Rational lo_;
  Rational hi_;
};

/// Order-convex subset with explicit endpoint closedness. On chain domains the
/// normalized form is always closed on both ends.
struct Interval {
  TimePoint lo;
  TimePoint hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(TimePoint a, TimePoint b) { return {std::move(a), std::move(b), true, true}; }
  static Interval closed_open(TimePoint a, TimePoint b) { return {std::move(a), std::move(b), true, false}; }
  static Interval open_closed(TimePoint a, TimePoint b) { return {std::move(a), std::move(b), false, true}; }
  static Interval open(TimePoint a, TimePoint b) { return {std::move(a), std::move(b), false, false}; }
  static Interval point(const TimePoint& a) { return {a, a, true, true}; }

  /// Empty as a subset of a dense order.
  bool is_empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool is_singleton() const { return lo == hi && lo_closed && hi_closed; }
  bool contains(const TimePoint& t) const {
    bool above = lo_closed ? lo <= t : lo < t;
    bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
  }

  std::string str() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

std::ostream& operator<<(std::ostream& os, const Interval& i);

/// Clips to the domain and brings chain intervals to closed integer endpoints.
/// Returns nullopt when nothing of the domain is left.
std::optional<Interval> normalize(const TimeDomain& d, const Interval& i);

/// Intersection of two normalized intervals, normalized; nullopt if empty.
std::optional<Interval> intersect(const TimeDomain& d, const Interval& a, const Interval& b);

/// Every point of `a` lies strictly before every point of `b` (both nonempty).
bool precedes(const Interval& a, const Interval& b);

/// `a` precedes `b` and a ∪ b is connected in `d` (no domain point between them).
bool touches(const TimeDomain& d, const Interval& a, const Interval& b);

/// a ⊆ b for normalized intervals.
bool subset(const Interval& a, const Interval& b);

/// Lower/upper end of the interval [t, max] / [min, t) in d.
Interval ray_from(const TimeDomain& d, const TimePoint& t);
std::optional<Interval> ray_before(const TimeDomain& d, const TimePoint& t);

/// Finite union of intervals in canonical form: sorted, pairwise disjoint,
/// no two pieces mergeable into one interval.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet from(const TimeDomain& d, std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }
  bool contains(const TimePoint& t) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

TimePoint domain_min(const TimeDomain& d);
TimePoint inf_set(const TimeDomain& d, const IntervalSet& s);
TimePoint sup_set(const TimeDomain& d, const IntervalSet& s);
std::optional<TimePoint> successor(const TimeDomain& d, const TimePoint& t);

/// All points of a chain domain lying in `s`, ascending.
std::vector<TimePoint> chain_points(const TimeDomain& d, const Interval& s);

}  // namespace totime
