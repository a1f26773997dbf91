#include "totime/error.hpp"
#include "totime/gamespec.hpp"

namespace totime {

namespace {

GameSpec binary_spec(const TimeDomain& d, const std::string& strategy) {
  GameSpec spec;
  spec.domain = d;
  spec.players = {{"p1", {"0", "1"}}};
  spec.strategies = {Json{{"kind", "gallery"}, {"player", "p1"}, {"name", strategy}}};
  spec.payoff.table = {{{0}, {Rational(0)}}, {{1}, {Rational(0)}}};
  return spec;
}

GameSpec duel_spec(const TimeDomain& d) {
  GameSpec spec;
  spec.domain = d;
  spec.players = {{"p1", {"C", "D"}}, {"p2", {"C", "D"}}};
  spec.payoff.table = {{{0, 0}, {Rational(2), Rational(2)}},
                       {{0, 1}, {Rational(0), Rational(3)}},
                       {{1, 0}, {Rational(3), Rational(0)}},
                       {{1, 1}, {Rational(1), Rational(1)}}};
  return spec;
}

const TimeDomain& unit() {
  static const TimeDomain d = TimeDomain::dense(0, 1);
  return d;
}

CheckOptions options_for(std::uint64_t seed) {
  CheckOptions o;
  o.seed = seed;
  return o;
}

GalleryResult no_trace(std::uint64_t seed) {
  GalleryResult g;
  g.name = "no_trace";
  GameSpec spec = binary_spec(unit(), "no_trace");
  Profile profile = build_profile(spec);
  SolveResult probe = probe_dense(profile, HistoryPrefix::initial(unit(), 1));
  AxiomReport trace =
      check_traceability(*profile[0], unit().min(), PiecewiseHistory::constant(unit(), {0}), options_for(seed));
  g.solves.push_back(probe);
  g.reports.push_back(trace);
  g.notes.push_back(
      "rule: 0 at the first instant; afterwards 1 while everything so far was 0, else 0. "
      "Right after 0 a piecewise history is constant on some (0,s). If it is 0 there, every point of (0,s) "
      "sees only zeros and demands 1; if it is 1, every point of (0,s) has already seen a 1 and demands 0. "
      "No history is consistent from the empty prefix.");

  // Consistent continuations may exist that no finite piece list can hold.
  GameSpec halving;
  halving.domain = unit();
  halving.players = {{"p1", {"a", "b"}}};
  halving.strategies = {Json{{"kind", "halving"}, {"player", "p1"}, {"a", "a"}, {"b", "b"}}};
  halving.payoff.table = {{{0}, {Rational(0)}}, {{1}, {Rational(0)}}};
  DenseOptions budget;
  budget.event_budget = 64;
  SolveResult zeno = solve_dense(build_profile(halving), HistoryPrefix::initial(unit(), 1), budget);
  g.solves.push_back(zeno);
  g.notes.push_back(
      "halving: switches at 1-2^-k accumulate at the horizon, so the event loop never reaches it and the "
      "consistent history has infinitely many pieces.");

  g.json["gallery"] = g.name;
  g.json["probe"] = solve_to_json(probe, spec);
  g.json["traceability"] = report_to_json(trace, &spec);
  g.json["halving"] = solve_to_json(zeno, halving);
  g.json["notes"] = g.notes;
  return g;
}

GalleryResult multi(std::uint64_t seed) {
  GalleryResult g;
  g.name = "multi";
  GameSpec spec = binary_spec(unit(), "multi");
  Profile profile = build_profile(spec);
  TimePoint cut(Rational(1, 2));
  HistoryPrefix p(unit(), cut, {{{Interval::closed_open(0, cut), 0}}});
  ProbeOptions first;
  ProbeOptions last;
  last.prefer_last = true;
  SolveResult a = probe_dense(profile, p, first);
  SolveResult b = probe_dense(profile, p, last);
  g.solves = {a, b};
  if (!a.history || !b.history) throw Error(ErrorCode::BadParameters, "multi: probing failed to produce two histories");
  g.histories = {*a.history, *b.history};
  IntervalSet rest = IntervalSet::from(unit(), {ray_from(unit(), cut)});
  IntervalSet all = IntervalSet::from(unit(), {ray_from(unit(), unit().min())});
  CheckOptions o = options_for(seed);
  for (const auto& h : g.histories) {
    g.consistency.push_back(is_consistent(h, profile, cut, rest, o));
    g.consistency.push_back(is_consistent(h, profile, unit().min(), all, o));
  }
  g.reports.push_back(check_initial_uniqueness(*profile[0], cut, g.histories[0], g.histories[1]));
  g.reports.push_back(check_initial_uniqueness(*profile[0], unit().min(), g.histories[0], g.histories[1]));
  g.notes.push_back(
      "rule: 1 once a 1 has been played strictly earlier, else 0. From zeros on [0,1/2) both 'stay at 0' and "
      "'0 at 1/2, then 1' are consistent; they share the prefix yet differ on every (1/2,s).");

  g.json["gallery"] = g.name;
  g.json["cut"] = cut.str();
  g.json["histories"] = Json::array();
  for (const auto& h : g.histories) g.json["histories"].push_back(history_to_json(h, spec));
  g.json["consistency"] = Json::array();
  for (const auto& c : g.consistency) g.json["consistency"].push_back(consistency_to_json(c));
  g.json["axiom3"] = Json::array();
  for (const auto& r : g.reports) g.json["axiom3"].push_back(report_to_json(r, &spec));
  g.json["notes"] = g.notes;
  return g;
}

GalleryResult discrete_contrast(std::uint64_t) {
  GalleryResult g;
  g.name = "discrete_contrast";
  TimeDomain d = TimeDomain::chain(3);
  g.json["gallery"] = g.name;
  g.json["instances"] = Json::array();
  for (const char* name : {"no_trace", "multi"}) {
    GameSpec spec = binary_spec(d, name);
    Profile profile = build_profile(spec);
    GameFrame frame = spec.frame();
    Json inst;
    inst["strategy"] = name;
    std::size_t prefixes = 0;
    std::size_t unique = 0;
    for (std::size_t t = 0; t < d.size(); ++t) {
      for (std::uint64_t code = 0; code < chain_prefix_count(frame.alphabet_sizes, t); ++code) {
        auto flat = chain_prefix_decode(frame.alphabet_sizes, t, code);
        std::vector<std::vector<ActionIndex>> rows;
        for (ActionIndex a : flat) rows.push_back({a});
        HistoryPrefix p = chain_prefix(d, 1, rows);
        OracleResult oracle = oracle_enumerate(profile, p);
        SolveResult solved = solve_chain(profile, p);
        ++prefixes;
        if (oracle.count == 1 && oracle.histories.front() == *solved.history) ++unique;
        if (t == 0) {
          g.oracles.push_back(oracle);
          g.solves.push_back(solved);
          g.histories.push_back(*solved.history);
          inst["history"] = history_to_json(*solved.history, spec);
          inst["oracle_count"] = oracle.count;
        }
      }
    }
    inst["prefixes"] = prefixes;
    inst["prefixes_with_unique_history"] = unique;
    inst["axioms"] = Json::array();
    for (int axiom = 1; axiom <= 3; ++axiom) {
      AxiomReport r = check_axiom(profile, 0, axiom);
      g.reports.push_back(r);
      inst["axioms"].push_back(report_to_json(r, &spec));
    }
    g.json["instances"].push_back(std::move(inst));
  }
  g.notes.push_back(
      "on a finite chain every rule is traceable, finite and initially unique: each instant has a successor, so "
      "forward recursion fixes the unique consistent history from any prefix.");
  g.json["notes"] = g.notes;
  return g;
}

GameSpec inertia_spec() {
  GameSpec spec = duel_spec(unit());
  spec.strategies = {
      Json{{"kind", "grim"}, {"player", "p1"}, {"cooperate", "C"}, {"punish", "D"}, {"watch", "p2"}, {"trigger", {"D"}}, {"delta", "1/4"}},
      Json{{"kind", "frictional"}, {"player", "p2"}, {"default", "C"}, {"blips", {Json{{"at", "1/2"}, {"action", "D"}}}}}};
  return spec;
}

GalleryResult inertia_demo(std::uint64_t seed) {
  GalleryResult g;
  g.name = "inertia_demo";
  GameSpec spec = inertia_spec();
  Profile profile = build_profile(spec);
  HistoryPrefix start = HistoryPrefix::initial(unit(), 2);
  SolveResult solved = solve_dense(profile, start);
  g.solves.push_back(solved);
  bool verified = solved.history && verify_unique(profile, start, solved);
  CheckOptions o = options_for(seed);
  if (solved.history) {
    g.histories.push_back(*solved.history);
    for (const auto& t : {TimePoint(0), TimePoint(Rational(1, 4)), TimePoint(Rational(1, 2)), TimePoint(Rational(5, 8)),
                          TimePoint(Rational(3, 4))})
      g.reports.push_back(check_inertiality(*profile[0], t, *solved.history, o));
  }
  for (int axiom = 1; axiom <= 3; ++axiom) g.reports.push_back(check_axiom(profile, 0, axiom, o));
  g.notes.push_back(
      "p1 runs grim trigger examined on the grid k/4; p2 defects at the single instant 1/2. The defection is "
      "first visible at the grid point 3/4, from which p1 punishes.");

  g.json["gallery"] = g.name;
  g.json["spec"] = to_json(spec);
  g.json["solve"] = solve_to_json(solved, spec);
  g.json["verified"] = verified;
  g.json["reports"] = Json::array();
  for (const auto& r : g.reports) g.json["reports"].push_back(report_to_json(r, &spec));
  g.json["notes"] = g.notes;
  return g;
}

GalleryResult friction_demo(std::uint64_t) {
  GalleryResult g;
  g.name = "friction_demo";
  GameSpec spec = duel_spec(unit());
  spec.strategies = {
      Json{{"kind", "frictional"}, {"player", "p1"}, {"default", "C"}, {"blips", {Json{{"at", "1/4"}, {"action", "D"}}}}},
      Json{{"kind", "frictional"},
           {"player", "p2"},
           {"default", "C"},
           {"blips", {Json{{"at", "1/2"}, {"action", "D"}}, Json{{"at", "3/4"}, {"action", "D"}}}}}};
  Profile profile = build_profile(spec);
  SolveResult solved = solve_dense(profile, HistoryPrefix::initial(unit(), 2));
  g.solves.push_back(solved);
  if (solved.history) {
    g.histories.push_back(*solved.history);
    for (PlayerId i = 0; i < 2; ++i)
      g.reports.push_back(check_frictionality(*profile[i], 0, unit().min(), *solved.history, unit().max()));
  }
  TimePoint half(Rational(1, 2));
  TimePoint three(Rational(3, 4));
  PiecewiseHistory defection(unit(), {{{Interval::closed_open(0, half), 0}, {Interval::closed_open(half, three), 1},
                                       {Interval::closed(three, 1), 0}},
                                      {{Interval::closed(0, 1), 0}}});
  g.histories.push_back(defection);
  g.reports.push_back(check_frictionality(*profile[0], 0, unit().min(), defection, unit().max()));
  g.notes.push_back(
      "singleton deviations from the default C are finitely many per window; a defection held on [1/2,3/4) "
      "deviates at infinitely many instants.");

  g.json["gallery"] = g.name;
  g.json["spec"] = to_json(spec);
  g.json["solve"] = solve_to_json(solved, spec);
  g.json["interval_defection"] = history_to_json(defection, spec);
  g.json["reports"] = Json::array();
  for (const auto& r : g.reports) g.json["reports"].push_back(report_to_json(r, &spec));
  g.json["notes"] = g.notes;
  return g;
}

}  // namespace

GalleryResult run_gallery(const std::string& name, std::uint64_t seed) {
  if (name == "no_trace") return no_trace(seed);
  if (name == "multi") return multi(seed);
  if (name == "discrete_contrast") return discrete_contrast(seed);
  if (name == "inertia_demo") return inertia_demo(seed);
  if (name == "friction_demo") return friction_demo(seed);
  throw Error(ErrorCode::UnknownGallery, "unknown gallery '" + name + "'");
}

}  // namespace totime
