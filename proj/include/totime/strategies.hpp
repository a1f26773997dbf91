#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "totime/histories.hpp"

namespace totime {

/// An action together with an optional stability commitment.
///
/// With `hold_until = r > t` the strategy promises that for every s in [t, r)
/// and every history extending the prefix on which all players stay constant
/// on [t, s), querying at s returns the same action. `hold_until == t` means the
/// action is played at the instant t only.
struct Response {
  ActionIndex action;
  std::optional<TimePoint> hold_until;

  friend bool operator==(const Response&, const Response&) = default;
};

struct StrategyFlags {
  bool table = false;
  bool inertial = false;
  bool frictional = false;
  bool black_box = false;
};

/// Uniform action on [t, until) over every extension of the prefix.
struct InertialWitness {
  ActionIndex action;
  TimePoint until;
};

/// A prefix-dependent action rule for one player. Strategies only ever see the
/// history strictly before the query time.
class Strategy {
 public:
  Strategy(GameFrame frame, PlayerId player, StrategyFlags flags);
  virtual ~Strategy() = default;

  const GameFrame& frame() const noexcept { return frame_; }
  const TimeDomain& domain() const noexcept { return frame_.domain; }
  PlayerId player() const noexcept { return player_; }
  const StrategyFlags& flags() const noexcept { return flags_; }
  bool has_hold_witness() const noexcept { return !flags_.black_box; }

  virtual std::string kind() const = 0;

  virtual Response respond(const TimePoint& t, const HistoryPrefix& p) const = 0;

  /// Action on the open right neighbourhood of t, given the prefix before t and
  /// the tuple played at t; `hold_until` > t bounds the neighbourhood.
  virtual std::optional<Response> respond_after(const TimePoint& t, const HistoryPrefix& before,
                                                std::span<const ActionIndex> at_t) const;

  virtual std::optional<InertialWitness> inertial_witness(const TimePoint& t, const HistoryPrefix& p) const;

  /// The default action z_i of a frictional strategy.
  virtual std::optional<ActionIndex> default_action() const;

  /// Chain fast path; `flat_prefix` holds t rows of action tuples.
  virtual ActionIndex respond_chain(std::size_t t, std::span<const ActionIndex> flat_prefix) const;

 protected:
  TimePoint capped(const TimePoint& t) const { return t < domain().max() ? t : domain().max(); }

 private:
  GameFrame frame_;
  PlayerId player_;
  StrategyFlags flags_;
};

using StrategyPtr = std::shared_ptr<const Strategy>;
/// One strategy per player, indexed by player.
using Profile = std::vector<StrategyPtr>;

void require_profile(const GameFrame& frame, const Profile& profile);

/// Watches player `watch` for any action in `actions`.
struct Trigger {
  PlayerId watch;
  std::vector<ActionIndex> actions;
};

StrategyPtr make_constant(const GameFrame& frame, PlayerId i, ActionIndex a);

/// Plays `cooperate` until the trigger is seen, then `punish` forever. The
/// trigger is re-examined only at grid times min + k*delta, which makes the
/// rule inertial: the action on [g, g+delta) depends on play before g alone.
StrategyPtr make_grim_trigger(const GameFrame& frame, PlayerId i, ActionIndex cooperate, ActionIndex punish,
                              Trigger trigger, const Rational& delta);

/// Explicit chain table: entries[t][code] where code encodes the t-row prefix
/// (see chain_prefix_code).
struct ChainTable {
  std::vector<std::vector<ActionIndex>> entries;
};

/// Mixed-radix code of a flattened chain prefix.
std::uint64_t chain_prefix_code(const std::vector<std::size_t>& alphabet_sizes, std::span<const ActionIndex> flat_prefix);
std::vector<ActionIndex> chain_prefix_decode(const std::vector<std::size_t>& alphabet_sizes, std::size_t rows,
                                             std::uint64_t code);
/// Number of distinct prefixes with `rows` rows; throws SearchSpaceTooLarge past `limit`.
std::uint64_t chain_prefix_count(const std::vector<std::size_t>& alphabet_sizes, std::size_t rows,
                                 std::uint64_t limit = 10'000'000);

StrategyPtr make_table(const GameFrame& frame, PlayerId i, ChainTable table);
ChainTable random_chain_table(const GameFrame& frame, PlayerId i, std::uint64_t seed);

/// Reconstructed pathologies on a single player with actions {0, 1}:
///  "no_trace": 0 at the first instant, afterwards 1 while everything so far was 0, else 0.
///  "multi":    1 once a 1 has been played strictly earlier, else 0.
StrategyPtr make_gallery(const GameFrame& frame, const std::string& name, PlayerId i = 0);

struct Blip {
  TimePoint at;
  ActionIndex action;
};

/// Plays `z` except at finitely many instants. With a trigger, an instant fires
/// only once the watched player has played a trigger action strictly before it.
StrategyPtr make_frictional(const GameFrame& frame, PlayerId i, ActionIndex z, std::vector<Blip> blips,
                            std::optional<Trigger> trigger = std::nullopt);

/// Alternates `a`/`b` on cells [1-2^-k, 1-2^-(k+1)) of the rescaled domain;
/// switch times accumulate at the horizon.
StrategyPtr make_halving(const GameFrame& frame, PlayerId i, ActionIndex a, ActionIndex b);

}  // namespace totime
