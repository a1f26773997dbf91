#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "totime/axioms.hpp"
#include "totime/partitions.hpp"
#include "totime/solver.hpp"
#include "totime/strategies.hpp"

namespace totime {

using Json = nlohmann::ordered_json;

struct PlayerSpec {
  std::string id;
  std::vector<std::string> actions;

  friend bool operator==(const PlayerSpec&, const PlayerSpec&) = default;
};

/// Stage payoffs per action tuple (one value per player) and a discount rate.
struct PayoffSpec {
  std::map<std::vector<ActionIndex>, std::vector<Rational>> table;
  Rational rho;

  friend bool operator==(const PayoffSpec&, const PayoffSpec&) = default;
};

struct GameSpec {
  TimeDomain domain = TimeDomain::chain(1);
  std::vector<PlayerSpec> players;
  /// Canonical strategy objects, one per player in player order.
  std::vector<Json> strategies;
  PayoffSpec payoff;
  std::uint64_t seed = 0;

  GameFrame frame() const;
  PlayerId player_index(std::string_view id) const;
  ActionIndex action_index(PlayerId i, std::string_view name) const;

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

/// Throws SchemaError (with a JSON path), UnknownStrategyKind or AlphabetMismatch.
GameSpec parse_spec(std::string_view text);
GameSpec parse_spec_json(const Json& doc);
Json to_json(const GameSpec& spec);
std::string canonical_json(const GameSpec& spec);

Profile build_profile(const GameSpec& spec);

/// One entry per player. Chain payoffs are exact (lo == hi).
struct PayoffVector {
  std::vector<Enclosure> values;
  bool exact = true;
};

/// Chains: sum over t of (1/(1+rho))^t u(h(t)). Dense: sum over constant blocks
/// of the integral of e^{-rho s} u, each exponential enclosed so the total width
/// per player is at most `tol`.
PayoffVector evaluate_payoff(const PiecewiseHistory& h, const GameSpec& spec, const Rational& tol = Rational(1, 1000000000));

Json interval_to_json(const Interval& i);
Interval interval_from_json(const Json& j, const std::string& path);

Json history_to_json(const PiecewiseHistory& h, const GameSpec& spec);
PiecewiseHistory history_from_json(const Json& j, const GameSpec& spec);
std::string history_to_csv(const PiecewiseHistory& h, const GameSpec& spec);

/// {"domain": ..., "start": "p/q", "blocks": [{lo, hi, lo_closed, hi_closed}]}
Json partition_to_json(const OrderedPartition& p);
OrderedPartition partition_from_json(const Json& j);
Json domain_to_json(const TimeDomain& d);
TimeDomain domain_from_json(const Json& j, const std::string& path);

Json report_to_json(const AxiomReport& r, const GameSpec* spec = nullptr);
Json consistency_to_json(const ConsistencyReport& r);
Json solve_to_json(const SolveResult& r, const GameSpec& spec);
Json payoff_to_json(const PayoffVector& v, const GameSpec& spec);

struct GalleryResult {
  std::string name;
  std::vector<PiecewiseHistory> histories;
  std::vector<SolveResult> solves;
  std::vector<AxiomReport> reports;
  std::vector<ConsistencyReport> consistency;
  std::vector<OracleResult> oracles;
  std::vector<std::string> notes;
  Json json;
};

/// Names: no_trace, multi, discrete_contrast, inertia_demo, friction_demo.
GalleryResult run_gallery(const std::string& name, std::uint64_t seed = 0);

}  // namespace totime
