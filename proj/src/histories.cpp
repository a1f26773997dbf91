#include "totime/histories.hpp"

#include <algorithm>

#include "totime/error.hpp"

namespace totime {

void GameFrame::require_action(const ActionId& a) const {
  if (a.player >= alphabet_sizes.size())
    throw Error(ErrorCode::ActionNotInAlphabet, "no player " + std::to_string(a.player));
  if (a.action >= alphabet_sizes[a.player])
    throw Error(ErrorCode::ActionNotInAlphabet,
                "action " + std::to_string(a.action) + " not in alphabet of player " + std::to_string(a.player));
}

Track canonical_track(const TimeDomain& d, Track pieces) {
  Track normalized;
  normalized.reserve(pieces.size());
  for (auto& p : pieces) {
    if (auto n = normalize(d, p.span)) normalized.push_back({*n, p.action});
  }
  std::sort(normalized.begin(), normalized.end(), [](const Piece& a, const Piece& b) {
    if (a.span.lo != b.span.lo) return a.span.lo < b.span.lo;
    return a.span.lo_closed && !b.span.lo_closed;
  });
  Track out;
  out.reserve(normalized.size());
  for (auto& p : normalized) {
    if (!out.empty()) {
      Piece& cur = out.back();
      if (!precedes(cur.span, p.span))
        throw Error(ErrorCode::CoverageOverlap, cur.span.str() + " overlaps " + p.span.str());
      if (cur.action == p.action && touches(d, cur.span, p.span)) {
        cur.span.hi = p.span.hi;
        cur.span.hi_closed = p.span.hi_closed;
        continue;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

void require_cover(const TimeDomain& d, const Track& track, const std::optional<Interval>& target) {
  if (!target) {
    if (!track.empty()) throw Error(ErrorCode::CoverageOverlap, "pieces given for an empty window");
    return;
  }
  if (track.empty()) throw Error(ErrorCode::CoverageGap, "no pieces cover " + target->str());
  const Interval& first = track.front().span;
  if (first.lo != target->lo || first.lo_closed != target->lo_closed) {
    bool starts_early = first.lo < target->lo || (first.lo == target->lo && first.lo_closed);
    throw Error(starts_early ? ErrorCode::CoverageOverlap : ErrorCode::CoverageGap,
                "pieces start at " + first.str() + ", window is " + target->str());
  }
  for (std::size_t k = 1; k < track.size(); ++k) {
    if (!touches(d, track[k - 1].span, track[k].span))
      throw Error(ErrorCode::CoverageGap, "gap between " + track[k - 1].span.str() + " and " + track[k].span.str());
  }
  const Interval& last = track.back().span;
  if (last.hi != target->hi || last.hi_closed != target->hi_closed) {
    bool ends_late = last.hi > target->hi || (last.hi == target->hi && last.hi_closed);
    throw Error(ends_late ? ErrorCode::CoverageOverlap : ErrorCode::CoverageGap,
                "pieces end at " + last.str() + ", window is " + target->str());
  }
}

Track restrict_track(const TimeDomain& d, const Track& track, const Interval& window) {
  Track out;
  for (const auto& p : track) {
    if (auto i = intersect(d, p.span, window)) out.push_back({*i, p.action});
  }
  return out;
}

std::optional<ActionIndex> track_at(const Track& track, const TimePoint& t) {
  auto it = std::partition_point(track.begin(), track.end(), [&](const Piece& p) {
    return p.span.hi < t || (p.span.hi == t && !p.span.hi_closed);
  });
  if (it != track.end() && it->span.contains(t)) return it->action;
  return std::nullopt;
}

PiecewiseHistory::PiecewiseHistory(TimeDomain domain, std::vector<Track> tracks)
    : domain_(std::move(domain)), tracks_(std::move(tracks)) {
  if (tracks_.empty()) throw Error(ErrorCode::BadParameters, "a history needs at least one player");
  Interval whole = Interval::closed(domain_.min(), domain_.max());
  for (auto& t : tracks_) {
    t = canonical_track(domain_, std::move(t));
    require_cover(domain_, t, whole);
  }
}

PiecewiseHistory PiecewiseHistory::constant(const TimeDomain& domain, const std::vector<ActionIndex>& actions) {
  std::vector<Track> tracks;
  for (ActionIndex a : actions) tracks.push_back({{Interval::closed(domain.min(), domain.max()), a}});
  return PiecewiseHistory(domain, std::move(tracks));
}

HistoryPrefix::HistoryPrefix(TimeDomain domain, TimePoint cut, std::vector<Track> tracks)
    : domain_(std::move(domain)), cut_(std::move(cut)), tracks_(std::move(tracks)) {
  domain_.require(cut_);
  auto window = ray_before(domain_, cut_);
  for (auto& t : tracks_) {
    t = canonical_track(domain_, std::move(t));
    require_cover(domain_, t, window);
  }
}

void HistoryPrefix::extend(const std::vector<Track>& steps, const TimePoint& new_cut) {
  if (!domain_.is_dense()) throw Error(ErrorCode::DomainMismatch, "prefix extension is for dense domains");
  if (steps.size() != tracks_.size()) throw Error(ErrorCode::BadParameters, "one step per player");
  if (!(cut_ < new_cut)) throw Error(ErrorCode::InvalidInterval, "new cut " + new_cut.str() + " is not after " + cut_.str());
  domain_.require(new_cut);
  for (const auto& step : steps) {
    TimePoint pos = cut_;
    bool closed = true;
    for (const auto& p : step) {
      if (p.span.is_empty() || p.span.lo != pos || p.span.lo_closed != closed)
        throw Error(ErrorCode::CoverageGap, "step piece " + p.span.str() + " does not continue at " + pos.str());
      pos = p.span.hi;
      closed = !p.span.hi_closed;
    }
    if (pos != new_cut || !closed) throw Error(ErrorCode::CoverageGap, "step does not end just before " + new_cut.str());
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (const auto& p : steps[i]) {
      Track& t = tracks_[i];
      if (!t.empty() && t.back().action == p.action) {
        t.back().span.hi = p.span.hi;
        t.back().span.hi_closed = p.span.hi_closed;
      } else {
        t.push_back(p);
      }
    }
  }
  cut_ = new_cut;
}

HistoryPrefix HistoryPrefix::initial(const TimeDomain& domain, std::size_t players) {
  return HistoryPrefix(domain, domain.min(), std::vector<Track>(players));
}

ActionIndex HistoryPrefix::at(PlayerId i, const TimePoint& t) const {
  if (!(t < cut_)) throw Error(ErrorCode::PointNotInDomain, t.str() + " is not before cut " + cut_.str());
  auto a = track_at(track(i), t);
  if (!a) throw Error(ErrorCode::PointNotInDomain, t.str() + " not covered by prefix");
  return *a;
}

bool HistoryPrefix::played_any(PlayerId j, std::span<const ActionIndex> actions, const TimePoint& before) const {
  for (const auto& p : track(j)) {
    if (!(p.span.lo < before)) break;
    if (std::find(actions.begin(), actions.end(), p.action) != actions.end()) return true;
  }
  return false;
}

std::optional<ActionIndex> HistoryPrefix::last_action(PlayerId j) const {
  const Track& t = track(j);
  if (t.empty()) return std::nullopt;
  return t.back().action;
}

std::vector<ActionIndex> eval(const PiecewiseHistory& h, const TimePoint& t) {
  h.domain().require(t);
  std::vector<ActionIndex> out;
  out.reserve(h.players());
  for (PlayerId i = 0; i < h.players(); ++i) out.push_back(eval_player(h, i, t));
  return out;
}

ActionIndex eval_player(const PiecewiseHistory& h, PlayerId i, const TimePoint& t) {
  h.domain().require(t);
  auto a = track_at(h.track(i), t);
  if (!a) throw Error(ErrorCode::PointNotInDomain, t.str() + " not covered");
  return *a;
}

HistoryPrefix prefix(const PiecewiseHistory& h, const TimePoint& t) {
  h.domain().require(t);
  std::vector<Track> tracks(h.players());
  if (auto window = ray_before(h.domain(), t)) {
    for (PlayerId i = 0; i < h.players(); ++i) tracks[i] = restrict_track(h.domain(), h.track(i), *window);
  }
  return HistoryPrefix(h.domain(), t, std::move(tracks));
}

bool prefix_equal(const HistoryPrefix& p, const HistoryPrefix& q) {
  if (!(p.domain() == q.domain()) || p.cut() != q.cut() || p.players() != q.players())
    throw Error(ErrorCode::CutMismatch, "prefixes cut at " + p.cut().str() + " and " + q.cut().str());
  return p.tracks() == q.tracks();
}

PiecewiseHistory splice(const HistoryPrefix& p, const std::vector<Track>& tail) {
  if (tail.size() != p.players()) throw Error(ErrorCode::BadParameters, "tail player count mismatch");
  const TimeDomain& d = p.domain();
  Interval rest = ray_from(d, p.cut());
  std::vector<Track> tracks(p.players());
  for (PlayerId i = 0; i < p.players(); ++i) {
    Track t = canonical_track(d, tail[i]);
    require_cover(d, t, rest);
    tracks[i] = p.track(i);
    tracks[i].insert(tracks[i].end(), t.begin(), t.end());
  }
  return PiecewiseHistory(d, std::move(tracks));
}

PiecewiseHistory chain_history(const TimeDomain& d, const std::vector<std::vector<ActionIndex>>& tuples) {
  if (!d.is_chain() || tuples.size() != d.size()) throw Error(ErrorCode::DomainMismatch, "tuple count differs from chain size");
  std::size_t n = tuples.empty() ? 0 : tuples.front().size();
  std::vector<Track> tracks(n);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    for (PlayerId i = 0; i < n; ++i) {
      auto tp = TimePoint(static_cast<std::int64_t>(t));
      tracks[i].push_back({Interval::point(tp), tuples[t].at(i)});
    }
  }
  return PiecewiseHistory(d, std::move(tracks));
}

std::vector<std::vector<ActionIndex>> chain_tuples(const PiecewiseHistory& h) {
  std::vector<std::vector<ActionIndex>> out;
  for (std::size_t t = 0; t < h.domain().size(); ++t) out.push_back(eval(h, TimePoint(static_cast<std::int64_t>(t))));
  return out;
}

HistoryPrefix chain_prefix(const TimeDomain& d, std::size_t players, const std::vector<std::vector<ActionIndex>>& tuples) {
  std::vector<Track> tracks(players);
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    for (PlayerId i = 0; i < players; ++i)
      tracks[i].push_back({Interval::point(TimePoint(static_cast<std::int64_t>(t))), tuples[t].at(i)});
  }
  return HistoryPrefix(d, TimePoint(static_cast<std::int64_t>(tuples.size())), std::move(tracks));
}

}  // namespace totime
