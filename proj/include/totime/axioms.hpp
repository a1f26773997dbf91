#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "totime/partitions.hpp"
#include "totime/solver.hpp"
#include "totime/strategies.hpp"

namespace totime {

enum class Verdict { Pass, Fail, Inconclusive };
/// How a verdict was reached, from strongest to weakest.
enum class Method { Exhaustive, Analytic, WitnessBased, Sampled };

const char* to_string(Verdict v);
const char* to_string(Method m);

/// Counterexample bundle attached to failing reports.
struct Witness {
  std::vector<TimePoint> times;
  std::vector<PiecewiseHistory> histories;
  std::vector<Block> blocks;
  std::vector<ActionIndex> actions;
  std::string note;
};

struct AxiomReport {
  int axiom = 0;
  PlayerId player = 0;
  Verdict verdict = Verdict::Pass;
  Method method = Method::Exhaustive;
  std::string detail;
  std::optional<Witness> witness;
  std::size_t cases = 0;
};

struct ConsistencyReport {
  IntervalSet target;
  Verdict verdict = Verdict::Pass;
  Method method = Method::Exhaustive;
  std::optional<TimePoint> first_violation;
  std::optional<PlayerId> player;
  ActionIndex expected = 0;  // what the strategy demands
  ActionIndex actual = 0;    // what the history plays
  std::size_t queries = 0;
};

struct CheckOptions {
  std::size_t interior_samples = 64;
  std::size_t extension_samples = 32;
  std::uint64_t seed = 0;
  /// Strategy queries per block before hold walking falls back to sampling.
  std::size_t query_budget = 4096;
  /// Halvings of the neighbourhood width tried when refuting inertiality.
  std::size_t refutation_depth = 30;
  std::size_t event_budget = 4096;
  ProbeOptions probe;
};

/// Checks h_i(s) = sigma_i(s, h^s) for every player and every s in S (S within T^t).
ConsistencyReport is_consistent(const PiecewiseHistory& h, const Profile& profile, const TimePoint& t,
                                const IntervalSet& s, const CheckOptions& options = {});
ConsistencyReport is_consistent_player(const PiecewiseHistory& h, const Strategy& strategy, const TimePoint& t,
                                       const IntervalSet& s, const CheckOptions& options = {});

/// Some continuation of h^t with h_{-i} held fixed is t-consistent for player i.
AxiomReport check_traceability(const Strategy& strategy, const TimePoint& t, const PiecewiseHistory& h,
                               const CheckOptions& options = {});

/// Change partitions of the given t-consistent histories are well-ordered.
AxiomReport check_well_orderedness(const Strategy& strategy, const TimePoint& t,
                                   std::span<const PiecewiseHistory> histories);
/// Synthetic variant on an infinite block family standing in for pi_i^t(h).
AxiomReport check_well_orderedness(const RuleFamily& family, PlayerId player = 0);

/// Two t-consistent histories with equal prefixes agree on some [t, s).
AxiomReport check_initial_uniqueness(const Strategy& strategy, const TimePoint& t, const PiecewiseHistory& h,
                                     const PiecewiseHistory& g);

/// Some [t, s) on which the strategy's action is the same for every extension of h^t.
AxiomReport check_inertiality(const Strategy& strategy, const TimePoint& t, const PiecewiseHistory& h,
                              const CheckOptions& options = {});

/// Player i plays something other than z at finitely many points of [t, bound].
AxiomReport check_frictionality(const Strategy& strategy, ActionIndex z, const TimePoint& t, const PiecewiseHistory& h,
                                const TimePoint& bound);

/// Axiom `axiom` for player i over a whole game: exhaustive over every time and
/// prefix on chains, sampled over times and histories on dense domains.
AxiomReport check_axiom(const Profile& profile, PlayerId i, int axiom, const CheckOptions& options = {});

/// Random piecewise continuation of h^t for every player on T^t (dense domains).
PiecewiseHistory random_extension(const PiecewiseHistory& h, const TimePoint& t, const GameFrame& frame,
                                  std::uint64_t seed);

}  // namespace totime
