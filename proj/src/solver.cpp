#include "totime/solver.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "totime/axioms.hpp"
#include "totime/error.hpp"

namespace totime {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Unique: return "unique";
    case Outcome::NoTrace: return "no_trace";
    case Outcome::Zeno: return "zeno";
    case Outcome::Budget: return "budget";
  }
  return "?";
}

namespace {

/// A player driven either by its strategy or by a fixed track.
struct Agent {
  const Strategy* strategy = nullptr;
  const Track* frozen = nullptr;
};

std::vector<Agent> profile_agents(const Profile& profile, std::size_t players) {
  if (profile.size() != players) throw Error(ErrorCode::BadParameters, "profile size differs from prefix players");
  std::vector<Agent> agents;
  for (PlayerId i = 0; i < profile.size(); ++i) {
    if (!profile[i] || profile[i]->player() != i) throw Error(ErrorCode::BadParameters, "profile not indexed by player");
    agents.push_back({profile[i].get(), nullptr});
  }
  return agents;
}

std::vector<Agent> frozen_agents(const Strategy& strategy, const PiecewiseHistory& frozen) {
  std::vector<Agent> agents;
  for (PlayerId j = 0; j < frozen.players(); ++j) {
    if (j == strategy.player()) {
      agents.push_back({&strategy, nullptr});
    } else {
      agents.push_back({nullptr, &frozen.track(j)});
    }
  }
  return agents;
}

Response frozen_at(const Track& track, const TimePoint& t) {
  for (const auto& p : track) {
    if (p.span.contains(t)) return {p.action, p.span.hi == t ? t : p.span.hi};
  }
  throw Error(ErrorCode::CoverageGap, "frozen track misses " + t.str());
}

Response frozen_after(const Track& track, const TimePoint& t) {
  for (const auto& p : track) {
    bool covers_right = (p.span.contains(t) && p.span.hi > t) || (p.span.lo == t && !p.span.lo_closed);
    if (covers_right) return {p.action, p.span.hi};
  }
  throw Error(ErrorCode::CoverageGap, "frozen track misses the right of " + t.str());
}

void append(const TimeDomain& d, Track& track, Piece piece) {
  if (!track.empty() && track.back().action == piece.action && touches(d, track.back().span, piece.span)) {
    track.back().span.hi = piece.span.hi;
    track.back().span.hi_closed = piece.span.hi_closed;
    return;
  }
  track.push_back(std::move(piece));
}

std::vector<Track> restricted(const TimeDomain& d, const std::vector<Track>& tracks, const TimePoint& cut) {
  std::vector<Track> out(tracks.size());
  if (auto window = ray_before(d, cut)) {
    for (std::size_t i = 0; i < tracks.size(); ++i) out[i] = restrict_track(d, tracks[i], *window);
  }
  return out;
}

std::string tuple_str(const std::vector<ActionIndex>& a) {
  std::string s = "(";
  for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
  return s + ")";
}

SolveResult run_chain(const TimeDomain& d, const std::vector<Agent>& agents, const HistoryPrefix& p) {
  if (!d.is_chain()) throw Error(ErrorCode::DomainMismatch, "solve_chain needs a chain domain");
  std::size_t n = agents.size();
  std::size_t size = d.size();
  auto cut = static_cast<std::size_t>(p.cut().value().convert_to<long long>());
  std::vector<ActionIndex> flat(size * n);
  for (std::size_t s = 0; s < cut; ++s)
    for (std::size_t i = 0; i < n; ++i) flat[s * n + i] = p.at(i, TimePoint(static_cast<std::int64_t>(s)));
  SolveResult result;
  for (std::size_t s = cut; s < size; ++s) {
    Event ev{TimePoint(static_cast<std::int64_t>(s)), true, {}, {}, s + 1 == size};
    std::span<const ActionIndex> before(flat.data(), s * n);
    for (std::size_t i = 0; i < n; ++i) {
      const Agent& a = agents[i];
      ActionIndex act = a.strategy ? a.strategy->respond_chain(s, before) : *track_at(*a.frozen, ev.time);
      ev.actions.push_back(act);
      ev.holds.push_back(successor(d, ev.time));
    }
    for (std::size_t i = 0; i < n; ++i) flat[s * n + i] = ev.actions[i];
    result.events.push_back(std::move(ev));
  }
  std::vector<std::vector<ActionIndex>> tuples(size, std::vector<ActionIndex>(n));
  for (std::size_t s = 0; s < size; ++s)
    for (std::size_t i = 0; i < n; ++i) tuples[s][i] = flat[s * n + i];
  result.outcome = Outcome::Unique;
  result.history = chain_history(d, tuples);
  result.events_consumed = result.events.size();
  return result;
}

// Picks Zeno vs Budget from the spacing of the instant-query times.
void classify_exhaustion(const TimeDomain& d, SolveResult& result) {
  std::vector<Rational> times;
  for (const auto& ev : result.events) {
    if (ev.instant && (times.empty() || times.back() < ev.time.value())) times.push_back(ev.time.value());
  }
  result.outcome = Outcome::Budget;
  result.diagnosis = "event budget exhausted at " + (times.empty() ? std::string("?") : format_rational(times.back()));
  if (times.size() < 4) return;
  std::size_t m = times.size();
  Rational d1 = times[m - 3] - times[m - 4];
  Rational d2 = times[m - 2] - times[m - 3];
  Rational d3 = times[m - 1] - times[m - 2];
  Rational horizon = d.max().value();
  if (d1 > 0 && d2 > 0 && d2 / d1 == d3 / d2 && d3 / d2 < 1) {
    Rational ratio = d3 / d2;
    Rational limit = times[m - 1] + d3 * ratio / (1 - ratio);
    if (limit <= horizon) {
      result.outcome = Outcome::Zeno;
      result.accumulation_point = TimePoint(limit);
      result.accumulation_exact = true;
      result.diagnosis = "event times shrink geometrically (ratio " + format_rational(ratio) + ") toward " +
                         format_rational(limit);
      return;
    }
  }
  // Strictly shrinking gaps over the tail: report an Aitken estimate, marked inexact.
  std::size_t tail = std::min<std::size_t>(m - 1, 8);
  bool shrinking = true;
  for (std::size_t k = m - tail + 1; k < m; ++k)
    shrinking = shrinking && (times[k] - times[k - 1]) < (times[k - 1] - times[k - 2]);
  if (shrinking && d2 != d3) {
    Rational estimate = times[m - 1] - d3 * d3 / (d3 - d2);
    if (estimate > horizon) estimate = horizon;
    if (estimate < times[m - 1]) estimate = times[m - 1];
    result.outcome = Outcome::Zeno;
    result.accumulation_point = TimePoint(estimate);
    result.accumulation_exact = false;
    result.diagnosis = "event gaps shrink without a constant ratio; accumulation estimated";
  }
}

struct Commitment {
  ActionIndex action;
  TimePoint until;
};

SolveResult run_dense(const TimeDomain& d, const std::vector<Agent>& agents, const HistoryPrefix& p,
                      const DenseOptions& options) {
  if (!d.is_dense()) throw Error(ErrorCode::DomainMismatch, "solve_dense needs a dense domain");
  for (const auto& a : agents) {
    if (a.strategy && !a.strategy->has_hold_witness())
      throw Error(ErrorCode::MissingWitness,
                  "player " + std::to_string(a.strategy->player()) + " uses a black-box " + a.strategy->kind() + " strategy");
  }
  std::size_t n = agents.size();
  std::vector<PlayerId> order = options.query_order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  if (order.size() != n) throw Error(ErrorCode::BadParameters, "query order must list every player once");
  std::mt19937_64 rng(options.jitter_seed.value_or(0));

  SolveResult result;
  HistoryPrefix q = p;
  std::vector<std::optional<Commitment>> commitments(n);
  TimePoint c = p.cut();
  bool instant = true;
  std::vector<ActionIndex> at_c;

  // Each hold target is split once; re-queries after the split run to it.
  std::optional<TimePoint> split_target;
  auto jittered = [&](const TimePoint& from, const TimePoint& to) {
    if (!options.jitter_seed || !(from < to) || split_target == to) return to;
    split_target = to;
    Rational u(static_cast<std::int64_t>(rng() % 15 + 1), 16);
    return TimePoint(from.value() + (to.value() - from.value()) * u);
  };
  auto stop = [&](Outcome o, std::string why) {
    result.outcome = o;
    result.diagnosis = std::move(why);
    result.partial = q;
    result.events_consumed = result.events.size();
    return result;
  };

  for (;;) {
    if (result.events.size() >= options.event_budget) {
      classify_exhaustion(d, result);
      result.partial = q;
      result.events_consumed = result.events.size();
      return result;
    }
    if (instant) {
      Event ev{c, true, std::vector<ActionIndex>(n), std::vector<std::optional<TimePoint>>(n), c == d.max()};
      for (PlayerId i : order) {
        const Agent& a = agents[i];
        Response r = a.strategy ? a.strategy->respond(c, q) : frozen_at(*a.frozen, c);
        if (!r.hold_until || *r.hold_until < c)
          throw Error(ErrorCode::MissingWitness, "player " + std::to_string(i) + " returned no usable hold at " + c.str());
        if (commitments[i] && c < commitments[i]->until && commitments[i]->action != r.action) {
          result.events.push_back(ev);
          return stop(Outcome::NoTrace, "player " + std::to_string(i) + " answered " + std::to_string(r.action) + " at " +
                                            c.str() + " inside its hold of action " +
                                            std::to_string(commitments[i]->action) + " until " +
                                            commitments[i]->until.str());
        }
        ev.actions[i] = r.action;
        ev.holds[i] = r.hold_until;
      }
      result.events.push_back(ev);
      if (c == d.max()) break;
      TimePoint r = *ev.holds[0];
      for (const auto& h : ev.holds) r = std::min(r, *h);
      if (r == c) {
        at_c = ev.actions;
        std::fill(commitments.begin(), commitments.end(), std::nullopt);
        instant = false;
        continue;
      }
      TimePoint next = jittered(c, r);
      std::vector<Track> steps(n);
      for (PlayerId i = 0; i < n; ++i) {
        steps[i] = {{Interval::closed_open(c, next), ev.actions[i]}};
        commitments[i] = Commitment{ev.actions[i], *ev.holds[i]};
      }
      q.extend(steps, next);
      c = next;
      continue;
    }

    // Right neighbourhood of an instant that was played alone.
    const HistoryPrefix& before = q;
    Event ev{c, false, std::vector<ActionIndex>(n), std::vector<std::optional<TimePoint>>(n), false};
    for (PlayerId i : order) {
      const Agent& a = agents[i];
      std::optional<Response> r =
          a.strategy ? a.strategy->respond_after(c, before, at_c) : std::optional<Response>(frozen_after(*a.frozen, c));
      if (!r) throw Error(ErrorCode::MissingWitness, "player " + std::to_string(i) + " has no right-limit response at " + c.str());
      if (!r->hold_until || !(*r->hold_until > c)) {
        result.events.push_back(ev);
        return stop(Outcome::NoTrace, "player " + std::to_string(i) + " commits to no neighbourhood after " + c.str());
      }
      ev.actions[i] = r->action;
      ev.holds[i] = r->hold_until;
    }
    result.events.push_back(ev);
    TimePoint r = *ev.holds[0];
    for (const auto& h : ev.holds) r = std::min(r, *h);
    TimePoint next = jittered(c, r);
    std::vector<Track> steps(n);
    for (PlayerId i = 0; i < n; ++i) {
      steps[i] = {{Interval::point(c), at_c[i]}, {Interval::open(c, next), ev.actions[i]}};
      commitments[i] = Commitment{ev.actions[i], *ev.holds[i]};
    }
    q.extend(steps, next);
    c = next;
    instant = true;
  }

  std::vector<Track> tracks = q.tracks();
  const auto& last = result.events.back().actions;
  for (PlayerId i = 0; i < n; ++i) append(d, tracks[i], {Interval::point(c), last[i]});
  result.outcome = Outcome::Unique;
  result.history = PiecewiseHistory(d, tracks);
  result.events_consumed = result.events.size();
  return result;
}

SolveResult run_probe(const TimeDomain& d, const std::vector<Agent>& agents, const HistoryPrefix& p,
                      const ProbeOptions& options) {
  if (!d.is_dense()) throw Error(ErrorCode::DomainMismatch, "probe_dense needs a dense domain");
  std::size_t n = agents.size();
  SolveResult result;
  result.certified = false;
  std::vector<Track> tracks = p.tracks();
  TimePoint c = p.cut();
  std::vector<std::string> branches;

  auto query_at = [&](const std::vector<Track>& trial, const TimePoint& s, std::size_t i) {
    HistoryPrefix q(d, s, restricted(d, trial, s));
    return agents[i].strategy->respond(s, q).action;
  };

  for (std::size_t step = 0;; ++step) {
    if (step >= options.step_budget) {
      result.outcome = Outcome::Budget;
      result.diagnosis = "probe step budget exhausted at " + c.str();
      result.partial = HistoryPrefix(d, c, tracks);
      result.events_consumed = result.events.size();
      return result;
    }
    HistoryPrefix q(d, c, tracks);
    Event ev{c, true, std::vector<ActionIndex>(n), std::vector<std::optional<TimePoint>>(n), c == d.max()};
    for (PlayerId i = 0; i < n; ++i)
      ev.actions[i] = agents[i].strategy ? agents[i].strategy->respond(c, q).action : *track_at(*agents[i].frozen, c);
    result.events.push_back(ev);
    std::vector<Track> with_c = tracks;
    for (PlayerId i = 0; i < n; ++i) append(d, with_c[i], {Interval::point(c), ev.actions[i]});
    if (c == d.max()) {
      tracks = std::move(with_c);
      break;
    }

    // Frozen players fix both the action and the widest neighbourhood.
    TimePoint reach = d.max();
    std::vector<std::optional<ActionIndex>> fixed(n);
    for (PlayerId i = 0; i < n; ++i) {
      if (agents[i].frozen) {
        Response r = frozen_after(*agents[i].frozen, c);
        fixed[i] = r.action;
        reach = std::min(reach, *r.hold_until);
      }
    }
    std::vector<std::vector<ActionIndex>> candidates{{}};
    for (PlayerId i = 0; i < n; ++i) {
      std::vector<std::vector<ActionIndex>> grown;
      std::size_t options_i = fixed[i] ? 1 : agents[i].strategy->frame().alphabet_sizes[i];
      for (const auto& partial : candidates) {
        for (std::size_t a = 0; a < options_i; ++a) {
          auto next = partial;
          next.push_back(fixed[i] ? *fixed[i] : a);
          grown.push_back(std::move(next));
        }
      }
      candidates = std::move(grown);
    }
    if (options.prefer_last) std::reverse(candidates.begin(), candidates.end());

    std::optional<std::vector<ActionIndex>> accepted;
    TimePoint accepted_end;
    std::vector<std::string> refutations;
    Rational width = reach.value() - c.value();
    for (std::size_t level = 0; level <= options.depth && !accepted; ++level, width /= 2) {
      TimePoint end(c.value() + width);
      refutations.clear();
      std::size_t passing = 0;
      for (const auto& b : candidates) {
        std::vector<Track> trial = with_c;
        for (PlayerId i = 0; i < n; ++i) append(d, trial[i], {Interval::open(c, end), b[i]});
        bool ok = true;
        for (std::size_t k = 1; k <= options.samples && ok; ++k) {
          TimePoint s(c.value() + width * Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(options.samples + 1)));
          for (PlayerId i = 0; i < n && ok; ++i) {
            if (!agents[i].strategy) continue;
            ActionIndex got = query_at(trial, s, i);
            if (got != b[i]) {
              ok = false;
              refutations.push_back("guess " + tuple_str(b) + " on " + Interval::open(c, end).str() + ": player " +
                                    std::to_string(i) + " answers " + std::to_string(got) + " at " + s.str());
            }
          }
        }
        if (ok) {
          ++passing;
          if (!accepted) {
            accepted = b;
            accepted_end = end;
          }
        }
      }
      if (passing > 1)
        branches.push_back(std::to_string(passing) + " guesses survive on " + Interval::open(c, end).str());
    }
    if (!accepted) {
      result.outcome = Outcome::NoTrace;
      std::ostringstream why;
      why << "no constant continuation after " << c << " survives at any of " << options.depth + 1
          << " widths; finest refutations:";
      for (const auto& r : refutations) why << "\n  " << r;
      result.diagnosis = why.str();
      result.partial = HistoryPrefix(d, c, tracks);
      result.events_consumed = result.events.size();
      return result;
    }
    Event after{c, false, *accepted, std::vector<std::optional<TimePoint>>(n, accepted_end), false};
    result.events.push_back(after);
    tracks = std::move(with_c);
    for (PlayerId i = 0; i < n; ++i) append(d, tracks[i], {Interval::open(c, accepted_end), (*accepted)[i]});
    c = accepted_end;
  }
  result.outcome = Outcome::Unique;
  result.history = PiecewiseHistory(d, tracks);
  result.events_consumed = result.events.size();
  result.diagnosis = "sampled probe reached the horizon";
  for (const auto& b : branches) result.diagnosis += "\n  branching: " + b;
  return result;
}

}  // namespace

SolveResult solve_chain(const Profile& profile, const HistoryPrefix& p) {
  return run_chain(p.domain(), profile_agents(profile, p.players()), p);
}

SolveResult solve_dense(const Profile& profile, const HistoryPrefix& p, const DenseOptions& options) {
  return run_dense(p.domain(), profile_agents(profile, p.players()), p, options);
}

SolveResult solve_chain_frozen(const Strategy& strategy, const PiecewiseHistory& frozen, const TimePoint& t) {
  return run_chain(frozen.domain(), frozen_agents(strategy, frozen), prefix(frozen, t));
}

SolveResult solve_dense_frozen(const Strategy& strategy, const PiecewiseHistory& frozen, const TimePoint& t,
                               const DenseOptions& options) {
  return run_dense(frozen.domain(), frozen_agents(strategy, frozen), prefix(frozen, t), options);
}

SolveResult probe_dense(const Profile& profile, const HistoryPrefix& p, const ProbeOptions& options) {
  return run_probe(p.domain(), profile_agents(profile, p.players()), p, options);
}

SolveResult probe_dense_frozen(const Strategy& strategy, const PiecewiseHistory& frozen, const TimePoint& t,
                               const ProbeOptions& options) {
  return run_probe(frozen.domain(), frozen_agents(strategy, frozen), prefix(frozen, t), options);
}

OracleResult oracle_enumerate(const Profile& profile, const HistoryPrefix& p, std::uint64_t limit) {
  const TimeDomain& d = p.domain();
  if (!d.is_chain()) throw Error(ErrorCode::DomainMismatch, "oracle_enumerate needs a chain domain");
  std::size_t n = p.players();
  if (profile.size() != n) throw Error(ErrorCode::BadParameters, "profile size differs from prefix players");
  std::vector<std::size_t> radix(n);
  for (PlayerId i = 0; i < n; ++i) radix[i] = profile[i]->frame().alphabet_sizes[i];
  auto cut = static_cast<std::size_t>(p.cut().value().convert_to<long long>());
  std::size_t size = d.size();
  OracleResult out;
  out.candidates = chain_prefix_count(radix, size - cut, limit);

  std::vector<ActionIndex> flat(size * n, 0);
  for (std::size_t s = 0; s < cut; ++s)
    for (PlayerId i = 0; i < n; ++i) flat[s * n + i] = p.at(i, TimePoint(static_cast<std::int64_t>(s)));

  for (std::uint64_t k = 0; k < out.candidates; ++k) {
    bool consistent = true;
    for (std::size_t s = cut; s < size && consistent; ++s) {
      std::span<const ActionIndex> before(flat.data(), s * n);
      for (PlayerId i = 0; i < n && consistent; ++i)
        consistent = profile[i]->respond_chain(s, before) == flat[s * n + i];
    }
    if (consistent) {
      std::vector<std::vector<ActionIndex>> tuples(size, std::vector<ActionIndex>(n));
      for (std::size_t s = 0; s < size; ++s)
        for (PlayerId i = 0; i < n; ++i) tuples[s][i] = flat[s * n + i];
      out.histories.push_back(chain_history(d, tuples));
    }
    // Mixed-radix increment over the cells at or after the cut.
    for (std::size_t cell = cut * n; cell < size * n; ++cell) {
      if (++flat[cell] < radix[cell % n]) break;
      flat[cell] = 0;
    }
  }
  out.count = out.histories.size();
  return out;
}

bool verify_unique(const Profile& profile, const HistoryPrefix& p, const SolveResult& result) {
  if (result.outcome != Outcome::Unique || !result.history) return false;
  const PiecewiseHistory& h = *result.history;
  if (!prefix_equal(prefix(h, p.cut()), p)) return false;
  const TimeDomain& d = p.domain();
  if (d.is_chain()) {
    OracleResult oracle = oracle_enumerate(profile, p);
    return oracle.count == 1 && oracle.histories.front() == h;
  }
  ConsistencyReport report = is_consistent(h, profile, p.cut(), IntervalSet::from(d, {ray_from(d, p.cut())}));
  if (report.verdict != Verdict::Pass) return false;
  std::vector<PlayerId> order(profile.size());
  std::iota(order.begin(), order.end(), 0);
  for (int run = 0; run < 6; ++run) {
    for (bool jitter : {false, true}) {
      DenseOptions options;
      options.query_order = order;
      if (jitter) options.jitter_seed = 1000 + run;
      SolveResult again = solve_dense(profile, p, options);
      if (again.outcome != Outcome::Unique || !(*again.history == h)) return false;
    }
    std::next_permutation(order.begin(), order.end());
  }
  return true;
}

}  // namespace totime
