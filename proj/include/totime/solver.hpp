#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "totime/strategies.hpp"

namespace totime {

enum class Outcome { Unique, NoTrace, Zeno, Budget };
const char* to_string(Outcome o);

/// One synchronized query round of the event loop.
struct Event {
  TimePoint time;
  /// True for a query at the instant `time`; false for a query covering the
  /// open right neighbourhood of `time`.
  bool instant = true;
  std::vector<ActionIndex> actions;
  std::vector<std::optional<TimePoint>> holds;
  /// The closing query at the domain maximum.
  bool terminal = false;
};

struct SolveResult {
  Outcome outcome = Outcome::Unique;
  std::optional<PiecewiseHistory> history;
  std::string diagnosis;
  std::optional<TimePoint> accumulation_point;
  bool accumulation_exact = false;
  std::size_t events_consumed = 0;
  std::vector<Event> events;
  /// False when the history came from sampled probing of black-box strategies.
  bool certified = true;
  /// Everything committed before the loop stopped.
  std::optional<HistoryPrefix> partial;
};

/// Forward recursion g(s) = sigma^s(g) from the prefix cut; chain domains only.
SolveResult solve_chain(const Profile& profile, const HistoryPrefix& p);

struct DenseOptions {
  std::size_t event_budget = 4096;
  /// Order in which players are queried within one event; empty means 0..n-1.
  std::vector<PlayerId> query_order;
  /// When set, every committed hold is split at a seeded interior point and
  /// the strategies are re-queried there.
  std::optional<std::uint64_t> jitter_seed;
};

/// Event loop over hold witnesses. Throws MissingWitness for black-box strategies.
SolveResult solve_dense(const Profile& profile, const HistoryPrefix& p, const DenseOptions& options = {});

/// Single-player loops: player `strategy.player()` follows its strategy from t,
/// everybody else and everything before t follows `frozen`.
SolveResult solve_chain_frozen(const Strategy& strategy, const PiecewiseHistory& frozen, const TimePoint& t);
SolveResult solve_dense_frozen(const Strategy& strategy, const PiecewiseHistory& frozen, const TimePoint& t,
                               const DenseOptions& options = {});

struct ProbeOptions {
  std::size_t step_budget = 256;
  /// Right-neighbourhood widths tried: initial width halved up to `depth` times.
  std::size_t depth = 40;
  /// Interior query points per trial neighbourhood.
  std::size_t samples = 8;
  /// Try candidate tuples in reverse lexicographic order.
  bool prefer_last = false;
};

/// Budgeted search for a piecewise-constant consistent continuation with
/// black-box strategies. At each instant the action is forced; the action on
/// the following open neighbourhood is guessed among all tuples and confirmed
/// by re-querying at interior points. NoTrace means every guess was refuted at
/// every width tried.
SolveResult probe_dense(const Profile& profile, const HistoryPrefix& p, const ProbeOptions& options = {});
SolveResult probe_dense_frozen(const Strategy& strategy, const PiecewiseHistory& frozen, const TimePoint& t,
                               const ProbeOptions& options = {});

struct OracleResult {
  std::vector<PiecewiseHistory> histories;
  std::size_t count = 0;
  std::uint64_t candidates = 0;
};

/// Every completion of the prefix filtered by pointwise consistency; chains only.
OracleResult oracle_enumerate(const Profile& profile, const HistoryPrefix& p, std::uint64_t limit = 10'000'000);

/// Chains: the oracle must return exactly the solved history. Dense: the history
/// must pass is_consistent and re-solving under six query orders, with and
/// without hold jitter, must reproduce it.
bool verify_unique(const Profile& profile, const HistoryPrefix& p, const SolveResult& result);

}  // namespace totime
