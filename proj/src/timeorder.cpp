#include "totime/timeorder.hpp"

#include <algorithm>
#include <sstream>

#include "totime/error.hpp"

namespace totime {

namespace {

// Lower bounds order by value, a closed bound before an open one at equal value.
bool lower_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

// Upper bounds order by value, an open bound before a closed one at equal value.
bool upper_before(const Interval& a, const Interval& b) {
  if (a.hi != b.hi) return a.hi < b.hi;
  return !a.hi_closed && b.hi_closed;
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const TimePoint& t) { return os << t.str(); }

TimeDomain TimeDomain::chain(std::size_t size) {
  if (size == 0) throw Error(ErrorCode::BadParameters, "chain domain needs at least one point");
  return TimeDomain(Kind::FiniteChain, size, 0, Rational(static_cast<std::int64_t>(size) - 1));
}

TimeDomain TimeDomain::dense(Rational lo, Rational hi) {
  if (!(lo < hi)) throw Error(ErrorCode::BadParameters, "dense domain needs lo < hi");
  return TimeDomain(Kind::DenseInterval, 0, std::move(lo), std::move(hi));
}

bool TimeDomain::contains(const TimePoint& t) const {
  if (t.value() < lo_ || t.value() > hi_) return false;
  return kind_ == Kind::DenseInterval || is_integer(t.value());
}

void TimeDomain::require(const TimePoint& t) const {
  if (!contains(t)) throw Error(ErrorCode::PointNotInDomain, t.str() + " not in " + describe());
}

std::string TimeDomain::describe() const {
  if (is_chain()) return "chain(" + std::to_string(size_) + ")";
  return "[" + format_rational(lo_) + "," + format_rational(hi_) + "]";
}

std::string Interval::str() const {
  std::ostringstream os;
  if (is_singleton()) {
    os << "{" << lo << "}";
  } else {
    os << (lo_closed ? '[' : '(') << lo << "," << hi << (hi_closed ? ']' : ')');
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Interval& i) { return os << i.str(); }

std::optional<Interval> normalize(const TimeDomain& d, const Interval& i) {
  Interval out = i;
  if (d.is_chain()) {
    Rational lo = i.lo_closed ? Rational(ceil(i.lo.value())) : Rational(floor(i.lo.value()) + 1);
    Rational hi = i.hi_closed ? Rational(floor(i.hi.value())) : Rational(ceil(i.hi.value()) - 1);
    lo = std::max(lo, d.min().value());
    hi = std::min(hi, d.max().value());
    if (lo > hi) return std::nullopt;
    return Interval::closed(TimePoint(lo), TimePoint(hi));
  }
  if (out.lo < d.min()) {
    out.lo = d.min();
    out.lo_closed = true;
  }
  if (out.hi > d.max()) {
    out.hi = d.max();
    out.hi_closed = true;
  }
  if (out.is_empty()) return std::nullopt;
  return out;
}

std::optional<Interval> intersect(const TimeDomain& d, const Interval& a, const Interval& b) {
  Interval out;
  if (lower_before(a, b)) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed;
  }
  if (upper_before(a, b)) {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed;
  } else {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  }
  if (out.is_empty()) return std::nullopt;
  return normalize(d, out);
}

bool precedes(const Interval& a, const Interval& b) {
  if (a.hi < b.lo) return true;
  return a.hi == b.lo && !(a.hi_closed && b.lo_closed);
}

bool touches(const TimeDomain& d, const Interval& a, const Interval& b) {
  if (d.is_chain()) return a.hi.value() + 1 == b.lo.value();
  return a.hi == b.lo && a.hi_closed != b.lo_closed;
}

bool subset(const Interval& a, const Interval& b) {
  bool lower_ok = !lower_before(a, b);
  bool upper_ok = !upper_before(b, a);
  return lower_ok && upper_ok;
}

Interval ray_from(const TimeDomain& d, const TimePoint& t) {
  d.require(t);
  return *normalize(d, Interval::closed(t, d.max()));
}

std::optional<Interval> ray_before(const TimeDomain& d, const TimePoint& t) {
  d.require(t);
  return normalize(d, Interval::closed_open(d.min(), t));
}

IntervalSet IntervalSet::from(const TimeDomain& d, std::vector<Interval> pieces) {
  std::vector<Interval> normalized;
  normalized.reserve(pieces.size());
  for (const auto& p : pieces) {
    if (auto n = normalize(d, p)) normalized.push_back(*n);
  }
  std::sort(normalized.begin(), normalized.end(), lower_before);
  IntervalSet out;
  for (auto& p : normalized) {
    if (!out.pieces_.empty()) {
      Interval& cur = out.pieces_.back();
      bool overlap = !precedes(cur, p);
      if (overlap || touches(d, cur, p)) {
        if (upper_before(cur, p)) {
          cur.hi = p.hi;
          cur.hi_closed = p.hi_closed;
        }
        continue;
      }
    }
    out.pieces_.push_back(std::move(p));
  }
  return out;
}

bool IntervalSet::contains(const TimePoint& t) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& p) { return p.contains(t); });
}

TimePoint domain_min(const TimeDomain& d) { return d.min(); }

TimePoint inf_set(const TimeDomain&, const IntervalSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "infimum of empty set");
  return s.pieces().front().lo;
}

TimePoint sup_set(const TimeDomain&, const IntervalSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "supremum of empty set");
  return s.pieces().back().hi;
}

std::optional<TimePoint> successor(const TimeDomain& d, const TimePoint& t) {
  d.require(t);
  if (d.is_dense() || t == d.max()) return std::nullopt;
  return TimePoint(t.value() + 1);
}

std::vector<TimePoint> chain_points(const TimeDomain& d, const Interval& s) {
  std::vector<TimePoint> out;
  auto n = normalize(d, s);
  if (!n) return out;
  for (Rational v = n->lo.value(); v <= n->hi.value(); v += 1) out.emplace_back(v);
  return out;
}

}  // namespace totime
