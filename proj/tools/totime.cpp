// totime: command-line front end for timing-game files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "totime/error.hpp"
#include "totime/gamespec.hpp"

using namespace totime;

namespace {

constexpr int kInputError = 64;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GameSpec load_spec(const std::string& path) { return parse_spec(slurp(path)); }

std::uint64_t effective_seed(const GameSpec& spec, const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TOTIME_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "TOTIME_SEED is not a natural number");
    }
  }
  return spec.seed;
}

int solve_exit(Outcome o) {
  switch (o) {
    case Outcome::Unique: return 0;
    case Outcome::NoTrace: return 3;
    case Outcome::Zeno: return 4;
    case Outcome::Budget: return 5;
  }
  return kInputError;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver and axiom checker for games in continuous and discrete time"};
  app.require_subcommand(1);

  std::string spec_path, hist_path, out_path, csv_path, name, part1, part2, axioms_arg = "1,2,3,4,5";
  std::size_t budget = 4096;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string tol_arg = "1e-9";

  auto* solve = app.add_subcommand("solve", "Compute the history induced by the profile from the empty prefix");
  solve->add_option("spec", spec_path, "game specification (JSON)")->required();
  solve->add_option("--budget", budget, "event budget for dense domains");
  solve->add_option("--out", out_path, "write the history as JSON");
  solve->add_option("--csv", csv_path, "write the history as CSV");

  auto* check = app.add_subcommand("check", "Check axioms for every player");
  check->add_option("spec", spec_path)->required();
  check->add_option("--axioms", axioms_arg, "comma-separated subset of 1..5");
  check->add_option("--seed", seed);
  check->add_option("--samples", samples, "interior samples per block on dense domains");

  auto* oracle = app.add_subcommand("oracle", "Enumerate every consistent history of a chain game");
  oracle->add_option("spec", spec_path)->required();

  auto* gallery = app.add_subcommand("gallery", "Run a named counterexample");
  gallery->add_option("name", name, "no_trace | multi | discrete_contrast | inertia_demo | friction_demo")->required();
  gallery->add_option("--seed", seed);

  auto* meet = app.add_subcommand("meet", "Common refinement of two ordered partitions");
  meet->add_option("first", part1)->required();
  meet->add_option("second", part2)->required();

  auto* payoff = app.add_subcommand("payoff", "Discounted payoff of a history");
  payoff->add_option("spec", spec_path)->required();
  payoff->add_option("history", hist_path)->required();
  payoff->add_option("--tol", tol_arg, "enclosure width for dense domains");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      GameSpec spec = load_spec(spec_path);
      Profile profile = build_profile(spec);
      HistoryPrefix start = HistoryPrefix::initial(spec.domain, spec.players.size());
      SolveResult r;
      if (spec.domain.is_chain()) {
        r = solve_chain(profile, start);
      } else if (std::all_of(profile.begin(), profile.end(), [](const StrategyPtr& s) { return s->has_hold_witness(); })) {
        DenseOptions o;
        o.event_budget = budget;
        r = solve_dense(profile, start, o);
      } else {
        ProbeOptions o;
        o.step_budget = budget;
        r = probe_dense(profile, start, o);
        std::cerr << "note: black-box strategies; the history is probed, not certified\n";
      }
      emit(solve_to_json(r, spec));
      if (r.history && !out_path.empty()) std::ofstream(out_path) << history_to_json(*r.history, spec).dump(2) << '\n';
      if (r.history && !csv_path.empty()) std::ofstream(csv_path) << history_to_csv(*r.history, spec);
      if (r.outcome != Outcome::Unique) std::cerr << to_string(r.outcome) << ": " << r.diagnosis << '\n';
      return solve_exit(r.outcome);
    }

    if (*check) {
      GameSpec spec = load_spec(spec_path);
      Profile profile = build_profile(spec);
      CheckOptions o;
      o.seed = effective_seed(spec, seed);
      if (samples) o.interior_samples = *samples;
      std::vector<int> which;
      std::stringstream ss(axioms_arg);
      for (std::string item; std::getline(ss, item, ',');) {
        int a = 0;
        try {
          a = std::stoi(item);
        } catch (const std::exception&) {
          throw Error(ErrorCode::BadParameters, "bad axiom '" + item + "'");
        }
        if (a < 1 || a > 5) throw Error(ErrorCode::BadParameters, "axioms are numbered 1..5");
        which.push_back(a);
      }
      Json out;
      out["seed"] = o.seed;
      out["reports"] = Json::array();
      bool any_fail = false;
      bool any_open = false;
      for (int a : which) {
        for (PlayerId i = 0; i < profile.size(); ++i) {
          AxiomReport r = check_axiom(profile, i, a, o);
          any_fail |= r.verdict == Verdict::Fail;
          any_open |= r.verdict == Verdict::Inconclusive;
          out["reports"].push_back(report_to_json(r, &spec));
        }
      }
      out["verdict"] = any_fail ? "fail" : any_open ? "inconclusive" : "pass";
      emit(out);
      return any_fail ? 1 : any_open ? 2 : 0;
    }

    if (*oracle) {
      GameSpec spec = load_spec(spec_path);
      if (!spec.domain.is_chain()) throw Error(ErrorCode::DomainMismatch, "the oracle enumerates chain games only");
      OracleResult r = oracle_enumerate(build_profile(spec), HistoryPrefix::initial(spec.domain, spec.players.size()));
      Json out;
      out["count"] = r.count;
      out["candidates"] = r.candidates;
      out["histories"] = Json::array();
      for (const auto& h : r.histories) out["histories"].push_back(history_to_json(h, spec));
      emit(out);
      return 0;
    }

    if (*gallery) {
      std::uint64_t s = seed ? *seed : 0;
      if (!seed) {
        if (const char* env = std::getenv("TOTIME_SEED")) s = std::stoull(env);
      }
      emit(run_gallery(name, s).json);
      return 0;
    }

    if (*meet) {
      OrderedPartition p = partition_from_json(Json::parse(slurp(part1)));
      OrderedPartition q = partition_from_json(Json::parse(slurp(part2)));
      OrderedPartition m = meet2(p, q);
      WellOrderVerdict v = is_well_ordered(m);
      Json out;
      out["meet"] = partition_to_json(m);
      out["well_ordered"] = v.well_ordered;
      out["reason"] = v.reason;
      emit(out);
      return 0;
    }

    if (*payoff) {
      GameSpec spec = load_spec(spec_path);
      PiecewiseHistory h = history_from_json(Json::parse(slurp(hist_path)), spec);
      emit(payoff_to_json(evaluate_payoff(h, spec, parse_rational(tol_arg)), spec));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error[" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "error[json]: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
