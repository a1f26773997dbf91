#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "totime/timeorder.hpp"

namespace totime {

using PlayerId = std::size_t;
/// Index into a player's finite action alphabet.
using ActionIndex = std::size_t;

struct ActionId {
  PlayerId player;
  ActionIndex action;

  friend bool operator==(const ActionId&, const ActionId&) = default;
};

/// Domain plus per-player alphabet sizes: everything a strategy needs to know
/// about the game it plays in.
struct GameFrame {
  TimeDomain domain;
  std::vector<std::size_t> alphabet_sizes;

  std::size_t players() const { return alphabet_sizes.size(); }
  void require_action(const ActionId& a) const;
};

struct Piece {
  Interval span;
  ActionIndex action;

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// One player's pieces, sorted and pairwise disjoint.
using Track = std::vector<Piece>;

/// Normalizes, sorts and merges touching pieces with equal actions.
/// Throws CoverageOverlap when two pieces share a point.
Track canonical_track(const TimeDomain& d, Track pieces);

/// Throws CoverageGap/CoverageOverlap unless `track` covers exactly `target`
/// (nullopt meaning the empty set).
void require_cover(const TimeDomain& d, const Track& track, const std::optional<Interval>& target);

Track restrict_track(const TimeDomain& d, const Track& track, const Interval& window);
std::optional<ActionIndex> track_at(const Track& track, const TimePoint& t);

/// A complete history with finitely many constant pieces per player.
class PiecewiseHistory {
 public:
  PiecewiseHistory(TimeDomain domain, std::vector<Track> tracks);
  static PiecewiseHistory constant(const TimeDomain& domain, const std::vector<ActionIndex>& actions);

  const TimeDomain& domain() const noexcept { return domain_; }
  std::size_t players() const noexcept { return tracks_.size(); }
  const Track& track(PlayerId i) const { return tracks_.at(i); }
  const std::vector<Track>& tracks() const noexcept { return tracks_; }

  friend bool operator==(const PiecewiseHistory&, const PiecewiseHistory&) = default;

 private:
  TimeDomain domain_;
  std::vector<Track> tracks_;
};

/// Restriction of a history to T_{<cut}.
class HistoryPrefix {
 public:
  HistoryPrefix(TimeDomain domain, TimePoint cut, std::vector<Track> tracks);
  /// The empty prefix at the domain minimum.
  static HistoryPrefix initial(const TimeDomain& domain, std::size_t players);

  const TimeDomain& domain() const noexcept { return domain_; }
  const TimePoint& cut() const noexcept { return cut_; }
  std::size_t players() const noexcept { return tracks_.size(); }
  const Track& track(PlayerId i) const { return tracks_.at(i); }
  const std::vector<Track>& tracks() const noexcept { return tracks_; }
  bool empty() const { return cut_ == domain_.min(); }

  /// Action of player i at t < cut.
  ActionIndex at(PlayerId i, const TimePoint& t) const;

  /// Player j played one of `actions` somewhere in T_{<before} ∩ T_{<cut}.
  bool played_any(PlayerId j, std::span<const ActionIndex> actions, const TimePoint& before) const;

  /// Action of player j on a left neighbourhood of the cut (nullopt for the empty prefix).
  std::optional<ActionIndex> last_action(PlayerId j) const;

  /// Appends pieces covering [cut, new_cut) for every player (dense domains),
  /// checking only the new pieces.
  void extend(const std::vector<Track>& steps, const TimePoint& new_cut);

  friend bool operator==(const HistoryPrefix&, const HistoryPrefix&) = default;

 private:
  TimeDomain domain_;
  TimePoint cut_;
  std::vector<Track> tracks_;
};

std::vector<ActionIndex> eval(const PiecewiseHistory& h, const TimePoint& t);
ActionIndex eval_player(const PiecewiseHistory& h, PlayerId i, const TimePoint& t);
HistoryPrefix prefix(const PiecewiseHistory& h, const TimePoint& t);
bool prefix_equal(const HistoryPrefix& p, const HistoryPrefix& q);
/// Joins a prefix with per-player tails that cover exactly T_{>=cut}.
PiecewiseHistory splice(const HistoryPrefix& p, const std::vector<Track>& tail);

/// Chain histories as action-tuple sequences (row t holds the tuple at time t).
PiecewiseHistory chain_history(const TimeDomain& d, const std::vector<std::vector<ActionIndex>>& tuples);
std::vector<std::vector<ActionIndex>> chain_tuples(const PiecewiseHistory& h);
HistoryPrefix chain_prefix(const TimeDomain& d, std::size_t players, const std::vector<std::vector<ActionIndex>>& tuples);

}  // namespace totime
