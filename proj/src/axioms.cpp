#include "totime/axioms.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "totime/error.hpp"

namespace totime {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Exhaustive: return "exhaustive";
    case Method::Analytic: return "analytic";
    case Method::WitnessBased: return "witness-based";
    case Method::Sampled: return "sampled";
  }
  return "?";
}

namespace {

Method weakest(Method a, Method b) { return std::max(a, b); }

// Fail dominates Inconclusive dominates Pass.
void merge_into(AxiomReport& acc, const AxiomReport& r) {
  acc.cases += std::max<std::size_t>(r.cases, 1);
  acc.method = weakest(acc.method, r.method);
  if (r.verdict == Verdict::Fail && acc.verdict != Verdict::Fail) {
    acc.verdict = Verdict::Fail;
    acc.detail = r.detail;
    acc.witness = r.witness;
  } else if (r.verdict == Verdict::Inconclusive && acc.verdict == Verdict::Pass) {
    acc.verdict = Verdict::Inconclusive;
    acc.detail = r.detail;
  }
}

std::vector<Block> common_blocks(const PiecewiseHistory& h, const TimePoint& t) {
  std::vector<OrderedPartition> parts;
  for (PlayerId i = 0; i < h.players(); ++i) parts.push_back(change_partition(h, i, t));
  return meetN(parts).blocks();
}

// Covered [pos, until) reaches past the end of b.
bool beyond(const TimePoint& until, const Block& b) { return until > b.hi || (until == b.hi && !b.hi_closed); }

TimePoint interior_point(const Block& b, std::size_t k, std::size_t m) {
  return TimePoint(b.lo.value() + (b.hi.value() - b.lo.value()) * Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(m + 1)));
}

AxiomReport make_report(int axiom, const Strategy& s, Verdict v, Method m, std::string detail) {
  AxiomReport r;
  r.axiom = axiom;
  r.player = s.player();
  r.verdict = v;
  r.method = m;
  r.detail = std::move(detail);
  r.cases = 1;
  return r;
}

struct BlockCheck {
  bool covered = false;  // hold walk reached the end of the block
  std::optional<TimePoint> violation;
  ActionIndex expected = 0;
};

BlockCheck walk_holds(const PiecewiseHistory& h, const Strategy& strategy, const Block& b, ActionIndex actual,
                      std::size_t budget, std::size_t& queries) {
  BlockCheck out;
  TimePoint pos = b.lo;
  bool open = !b.lo_closed;
  for (std::size_t q = 0; q < budget; ++q) {
    ++queries;
    if (!open) {
      Response r = strategy.respond(pos, prefix(h, pos));
      if (r.action != actual) {
        out.violation = pos;
        out.expected = r.action;
        return out;
      }
      if (!r.hold_until || *r.hold_until < pos) return out;
      if (*r.hold_until == pos) {
        if (pos == b.hi) {
          out.covered = true;
          return out;
        }
        open = true;
        continue;
      }
      if (beyond(*r.hold_until, b)) {
        out.covered = true;
        return out;
      }
      pos = *r.hold_until;
      continue;
    }
    auto at = eval(h, pos);
    auto r = strategy.respond_after(pos, prefix(h, pos), at);
    if (!r || !r->hold_until || !(*r->hold_until > pos)) return out;
    if (r->action != actual) {
      // Pin the disagreement to a concrete point of the neighbourhood.
      TimePoint end = std::min(*r->hold_until, b.hi);
      TimePoint s((pos.value() + end.value()) / 2);
      ++queries;
      Response direct = strategy.respond(s, prefix(h, s));
      if (direct.action != actual) {
        out.violation = s;
        out.expected = direct.action;
      }
      return out;
    }
    if (beyond(*r->hold_until, b)) {
      out.covered = true;
      return out;
    }
    pos = *r->hold_until;
    open = false;
  }
  return out;
}

std::optional<std::pair<TimePoint, ActionIndex>> sample_block(const PiecewiseHistory& h, const Strategy& strategy,
                                                              const Block& b, ActionIndex actual, std::size_t samples,
                                                              std::size_t& queries) {
  std::vector<TimePoint> points;
  if (b.lo_closed) points.push_back(b.lo);
  if (!b.is_singleton()) {
    for (std::size_t k = 1; k <= samples; ++k) points.push_back(interior_point(b, k, samples));
    if (b.hi_closed) points.push_back(b.hi);
  }
  for (const auto& s : points) {
    ++queries;
    ActionIndex want = strategy.respond(s, prefix(h, s)).action;
    if (want != actual) return std::make_pair(s, want);
  }
  return std::nullopt;
}

}  // namespace

ConsistencyReport is_consistent_player(const PiecewiseHistory& h, const Strategy& strategy, const TimePoint& t,
                                       const IntervalSet& s, const CheckOptions& options) {
  const TimeDomain& d = h.domain();
  Interval subgame = ray_from(d, t);
  for (const auto& piece : s.pieces()) {
    if (!subset(piece, subgame))
      throw Error(ErrorCode::SetOutsideSubgame, piece.str() + " is not inside " + subgame.str());
  }
  ConsistencyReport report;
  report.target = s;
  PlayerId i = strategy.player();
  auto fail = [&](const TimePoint& at, ActionIndex expected, ActionIndex actual) {
    report.verdict = Verdict::Fail;
    report.first_violation = at;
    report.player = i;
    report.expected = expected;
    report.actual = actual;
    return report;
  };

  if (d.is_chain()) {
    report.method = Method::Exhaustive;
    for (const auto& piece : s.pieces()) {
      for (const auto& point : chain_points(d, piece)) {
        ++report.queries;
        ActionIndex want = strategy.respond(point, prefix(h, point)).action;
        ActionIndex got = eval_player(h, i, point);
        if (want != got) return fail(point, want, got);
      }
    }
    return report;
  }

  report.method = strategy.has_hold_witness() ? Method::WitnessBased : Method::Sampled;
  for (const auto& block : common_blocks(h, t)) {
    for (const auto& piece : s.pieces()) {
      auto b = intersect(d, block, piece);
      if (!b) continue;
      TimePoint probe = b->is_singleton() ? b->lo : interior_point(*b, 1, 1);
      ActionIndex actual = eval_player(h, i, probe);
      if (strategy.has_hold_witness()) {
        BlockCheck c = walk_holds(h, strategy, *b, actual, options.query_budget, report.queries);
        if (c.violation) return fail(*c.violation, c.expected, actual);
        if (c.covered) continue;
        report.method = Method::Sampled;
      }
      if (auto bad = sample_block(h, strategy, *b, actual, options.interior_samples, report.queries))
        return fail(bad->first, bad->second, actual);
    }
  }
  return report;
}

ConsistencyReport is_consistent(const PiecewiseHistory& h, const Profile& profile, const TimePoint& t,
                                const IntervalSet& s, const CheckOptions& options) {
  if (profile.size() != h.players()) throw Error(ErrorCode::BadParameters, "profile size differs from history players");
  ConsistencyReport merged;
  merged.target = s;
  merged.method = Method::Exhaustive;
  for (const auto& strategy : profile) {
    ConsistencyReport r = is_consistent_player(h, *strategy, t, s, options);
    merged.queries += r.queries;
    merged.method = weakest(merged.method, r.method);
    if (r.verdict == Verdict::Fail && (!merged.first_violation || *r.first_violation < *merged.first_violation)) {
      merged.verdict = Verdict::Fail;
      merged.first_violation = r.first_violation;
      merged.player = r.player;
      merged.expected = r.expected;
      merged.actual = r.actual;
    }
  }
  return merged;
}

AxiomReport check_traceability(const Strategy& strategy, const TimePoint& t, const PiecewiseHistory& h,
                               const CheckOptions& options) {
  const TimeDomain& d = h.domain();
  IntervalSet rest = IntervalSet::from(d, {ray_from(d, t)});
  auto verified = [&](const PiecewiseHistory& g, Method method, Verdict on_pass, std::string detail) {
    ConsistencyReport c = is_consistent_player(g, strategy, t, rest, options);
    if (c.verdict == Verdict::Fail) {
      AxiomReport r = make_report(1, strategy, Verdict::Fail, method,
                                  "constructed continuation violates the strategy at " + c.first_violation->str());
      r.witness = Witness{{*c.first_violation}, {g}, {}, {c.expected, c.actual}, "strategy broke its own hold commitment"};
      return r;
    }
    AxiomReport r = make_report(1, strategy, on_pass, weakest(method, c.method), std::move(detail));
    r.witness = Witness{{t}, {g}, {}, {}, "consistent continuation"};
    return r;
  };

  if (d.is_chain()) {
    SolveResult res = solve_chain_frozen(strategy, h, t);
    return verified(*res.history, Method::Exhaustive, Verdict::Pass, "forward recursion defines the continuation");
  }
  if (strategy.has_hold_witness()) {
    DenseOptions dense;
    dense.event_budget = options.event_budget;
    SolveResult res = solve_dense_frozen(strategy, h, t, dense);
    switch (res.outcome) {
      case Outcome::Unique:
        return verified(*res.history, Method::WitnessBased, Verdict::Pass,
                        "event loop reached the horizon in " + std::to_string(res.events_consumed) + " events");
      case Outcome::NoTrace: {
        AxiomReport r = make_report(1, strategy, Verdict::Fail, Method::WitnessBased, res.diagnosis);
        r.witness = Witness{{res.partial->cut()}, {}, {}, {}, res.diagnosis};
        return r;
      }
      case Outcome::Zeno:
        return make_report(1, strategy, Verdict::Inconclusive, Method::WitnessBased,
                           "event times accumulate at " + res.accumulation_point->str() +
                               "; the continuation has infinitely many pieces and is not representable");
      case Outcome::Budget:
        return make_report(1, strategy, Verdict::Inconclusive, Method::WitnessBased, res.diagnosis);
    }
  }
  SolveResult res = probe_dense_frozen(strategy, h, t, options.probe);
  switch (res.outcome) {
    case Outcome::NoTrace: {
      AxiomReport r = make_report(1, strategy, Verdict::Fail, Method::Sampled, res.diagnosis);
      r.witness = Witness{{res.partial->cut()}, {}, {}, {}, res.diagnosis};
      return r;
    }
    case Outcome::Unique:
      return verified(*res.history, Method::Sampled, Verdict::Inconclusive,
                      "sampled probe found a continuation; black-box strategy, not certified");
    default:
      return make_report(1, strategy, Verdict::Inconclusive, Method::Sampled, res.diagnosis);
  }
}

AxiomReport check_well_orderedness(const Strategy& strategy, const TimePoint& t,
                                   std::span<const PiecewiseHistory> histories) {
  AxiomReport acc = make_report(2, strategy, Verdict::Pass, Method::Exhaustive, "");
  acc.cases = 0;
  std::size_t most = 0;
  for (const auto& h : histories) {
    OrderedPartition p = change_partition(h, strategy.player(), t);
    WellOrderVerdict v = is_well_ordered(p);
    most = std::max(most, p.size());
    ++acc.cases;
    if (!v.well_ordered) {
      acc.verdict = Verdict::Fail;
      acc.detail = v.reason;
      acc.witness = Witness{{t}, {h}, v.witness, {}, v.reason};
      return acc;
    }
  }
  acc.detail = std::to_string(acc.cases) + " change partitions, all finite (largest " + std::to_string(most) + " blocks)";
  return acc;
}

AxiomReport check_well_orderedness(const RuleFamily& family, PlayerId player) {
  WellOrderVerdict v = is_well_ordered(family);
  AxiomReport r;
  r.axiom = 2;
  r.player = player;
  r.method = Method::Analytic;
  r.cases = 1;
  r.verdict = v.well_ordered ? Verdict::Pass : Verdict::Fail;
  r.detail = family.name() + ": " + v.reason;
  if (!v.well_ordered) r.witness = Witness{{}, {}, v.witness, {}, v.reason};
  return r;
}

namespace {

// Action on the right neighbourhood of t and the end of the piece carrying it.
std::pair<ActionIndex, TimePoint> right_piece(const Track& track, const TimePoint& t) {
  for (const auto& p : track) {
    bool covers = (p.span.contains(t) && p.span.hi > t) || (p.span.lo == t && !p.span.lo_closed);
    if (covers) return {p.action, p.span.hi};
  }
  throw Error(ErrorCode::CoverageGap, "no piece to the right of " + t.str());
}

}  // namespace

AxiomReport check_initial_uniqueness(const Strategy& strategy, const TimePoint& t, const PiecewiseHistory& h,
                                     const PiecewiseHistory& g) {
  if (!prefix_equal(prefix(h, t), prefix(g, t)))
    throw Error(ErrorCode::PrefixMismatch, "histories differ before " + t.str());
  const TimeDomain& d = h.domain();
  PlayerId i = strategy.player();
  if (t == d.max()) return make_report(3, strategy, Verdict::Pass, Method::Exhaustive, "T_{>t} is empty");
  ActionIndex ht = eval_player(h, i, t);
  ActionIndex gt = eval_player(g, i, t);
  auto fail = [&](const std::string& why) {
    AxiomReport r = make_report(3, strategy, Verdict::Fail, Method::Exhaustive, why);
    r.witness = Witness{{t}, {h, g}, {}, {ht, gt}, why};
    return r;
  };
  if (d.is_chain()) {
    if (ht != gt) return fail("histories disagree at " + t.str());
    return make_report(3, strategy, Verdict::Pass, Method::Exhaustive,
                       "agree on [" + t.str() + "," + successor(d, t)->str() + ")");
  }
  if (ht != gt) return fail("histories disagree at " + t.str());
  auto [ha, hend] = right_piece(h.track(i), t);
  auto [ga, gend] = right_piece(g.track(i), t);
  if (ha != ga) return fail("histories disagree on every neighbourhood (" + t.str() + ", s)");
  TimePoint s = std::min(hend, gend);
  return make_report(3, strategy, Verdict::Pass, Method::Exhaustive, "agree on [" + t.str() + "," + s.str() + ")");
}

PiecewiseHistory random_extension(const PiecewiseHistory& h, const TimePoint& t, const GameFrame& frame,
                                  std::uint64_t seed) {
  const TimeDomain& d = h.domain();
  std::mt19937_64 rng(seed);
  std::vector<Track> tails(h.players());
  for (PlayerId j = 0; j < h.players(); ++j) {
    std::size_t radix = frame.alphabet_sizes.at(j);
    if (d.is_chain()) {
      for (const auto& point : chain_points(d, ray_from(d, t))) tails[j].push_back({Interval::point(point), rng() % radix});
      continue;
    }
    std::set<std::int64_t> grid;
    std::size_t cuts = rng() % 4;
    if (t < d.max()) {
      for (std::size_t k = 0; k < cuts; ++k) grid.insert(static_cast<std::int64_t>(rng() % 63 + 1));
    }
    Rational width = d.max().value() - t.value();
    TimePoint lo = t;
    bool lo_closed = true;
    for (std::int64_t k : grid) {
      TimePoint at(t.value() + width * Rational(k, 64));
      switch (rng() % 3) {
        case 0:
          tails[j].push_back({{lo, at, lo_closed, false}, rng() % radix});
          lo_closed = true;
          break;
        case 1:
          tails[j].push_back({{lo, at, lo_closed, true}, rng() % radix});
          lo_closed = false;
          break;
        default:
          tails[j].push_back({{lo, at, lo_closed, false}, rng() % radix});
          tails[j].push_back({Interval::point(at), rng() % radix});
          lo_closed = false;
          break;
      }
      lo = at;
    }
    tails[j].push_back({{lo, d.max(), lo_closed, true}, rng() % radix});
  }
  return splice(prefix(h, t), tails);
}

namespace {

AxiomReport inertiality_chain(const Strategy& strategy, const TimePoint& t, const PiecewiseHistory& h) {
  const TimeDomain& d = h.domain();
  const auto& radix = strategy.frame().alphabet_sizes;
  std::size_t n = radix.size();
  auto cut = static_cast<std::size_t>(t.value().convert_to<long long>());
  std::size_t size = d.size();
  std::vector<ActionIndex> base(size * n);
  for (std::size_t s = 0; s < cut; ++s)
    for (std::size_t j = 0; j < n; ++j) base[s * n + j] = eval_player(h, j, TimePoint(static_cast<std::int64_t>(s)));
  std::size_t cases = 0;
  // Largest s first; s = successor(t) always works since [t, s) = {t}.
  for (std::size_t s = size - 1; s > cut; --s) {
    std::optional<ActionIndex> uniform;
    bool ok = true;
    for (std::size_t r = cut; r < s && ok; ++r) {
      std::uint64_t fillings = chain_prefix_count(radix, r - cut);
      for (std::uint64_t code = 0; code < fillings && ok; ++code) {
        auto tail = chain_prefix_decode(radix, r - cut, code);
        std::vector<ActionIndex> flat = base;
        std::copy(tail.begin(), tail.end(), flat.begin() + static_cast<std::ptrdiff_t>(cut * n));
        ActionIndex a = strategy.respond_chain(r, std::span<const ActionIndex>(flat.data(), r * n));
        ++cases;
        if (uniform && *uniform != a) ok = false;
        uniform = a;
      }
    }
    if (ok) {
      AxiomReport rep = make_report(4, strategy, Verdict::Pass, Method::Exhaustive,
                                    "action " + std::to_string(*uniform) + " on [" + t.str() + "," + std::to_string(s) +
                                        ") for every continuation");
      rep.cases = cases;
      rep.witness = Witness{{t, TimePoint(static_cast<std::int64_t>(s))}, {}, {}, {*uniform}, "uniform window"};
      return rep;
    }
  }
  return make_report(4, strategy, Verdict::Fail, Method::Exhaustive, "no uniform window");  // unreachable on chains
}

}  // namespace

AxiomReport check_inertiality(const Strategy& strategy, const TimePoint& t, const PiecewiseHistory& h,
                              const CheckOptions& options) {
  const TimeDomain& d = h.domain();
  if (t == d.max()) return make_report(4, strategy, Verdict::Pass, Method::Exhaustive, "T_{>t} is empty");
  if (d.is_chain()) return inertiality_chain(strategy, t, h);

  HistoryPrefix p = prefix(h, t);
  std::vector<PiecewiseHistory> extensions;
  std::uint64_t seed = options.seed * 7919 + 17;
  for (std::size_t k = 0; k < options.extension_samples; ++k) extensions.push_back(random_extension(h, t, strategy.frame(), seed + k));

  if (auto w = strategy.inertial_witness(t, p)) {
    if (!(w->until > t)) return make_report(4, strategy, Verdict::Fail, Method::WitnessBased, "declared window is empty");
    std::mt19937_64 rng(seed);
    for (const auto& g : extensions) {
      std::vector<TimePoint> rs{t};
      Rational width = w->until.value() - t.value();
      for (int k = 0; k < 3; ++k) rs.emplace_back(t.value() + width * Rational(static_cast<std::int64_t>(rng() % 63 + 1), 64));
      for (const auto& r : rs) {
        ActionIndex got = strategy.respond(r, prefix(g, r)).action;
        if (got != w->action) {
          AxiomReport rep = make_report(4, strategy, Verdict::Fail, Method::WitnessBased,
                                        "declared window [" + t.str() + "," + w->until.str() + ") broken at " + r.str());
          rep.witness = Witness{{t, r}, {g}, {}, {w->action, got}, "extension contradicting the declared window"};
          return rep;
        }
      }
    }
    AxiomReport rep = make_report(4, strategy, Verdict::Pass, Method::WitnessBased,
                                  "action " + std::to_string(w->action) + " on [" + t.str() + "," + w->until.str() +
                                      ") confirmed on " + std::to_string(extensions.size()) + " extensions");
    rep.witness = Witness{{t, w->until}, {}, {}, {w->action}, "declared window"};
    return rep;
  }

  // No declared window: try to refute at every width.
  const auto& radix = strategy.frame().alphabet_sizes;
  std::vector<std::vector<ActionIndex>> tuples{{}};
  for (std::size_t a : radix) {
    std::vector<std::vector<ActionIndex>> grown;
    for (const auto& partial : tuples) {
      for (ActionIndex x = 0; x < a; ++x) {
        auto next = partial;
        next.push_back(x);
        grown.push_back(std::move(next));
      }
    }
    tuples = std::move(grown);
  }
  for (const auto& tuple : tuples) {
    std::vector<Track> tails;
    for (ActionIndex x : tuple) tails.push_back({{ray_from(d, t), x}});
    extensions.insert(extensions.begin(), splice(p, tails));
  }
  std::optional<Witness> last;
  Rational width = d.max().value() - t.value();
  for (std::size_t level = 0; level <= options.refutation_depth; ++level, width /= 2) {
    std::optional<std::pair<std::size_t, TimePoint>> first;
    ActionIndex first_action = 0;
    bool refuted = false;
    for (std::size_t e = 0; e < extensions.size() && !refuted; ++e) {
      for (std::size_t k = 0; k <= 8 && !refuted; ++k) {
        TimePoint r(t.value() + width * Rational(static_cast<std::int64_t>(k), 9));
        ActionIndex a = strategy.respond(r, prefix(extensions[e], r)).action;
        if (!first) {
          first = std::make_pair(e, r);
          first_action = a;
        } else if (a != first_action) {
          refuted = true;
          last = Witness{{first->second, r}, {extensions[first->first], extensions[e]}, {}, {first_action, a},
                         "two extensions get different actions inside [" + t.str() + "," +
                             format_rational(t.value() + width) + ")"};
        }
      }
    }
    if (!refuted) {
      return make_report(4, strategy, Verdict::Inconclusive, Method::Sampled,
                         "no declared window and no disagreement found within [" + t.str() + "," +
                             format_rational(t.value() + width) + ")");
    }
  }
  AxiomReport rep = make_report(4, strategy, Verdict::Fail, Method::Sampled,
                                "disagreement inside every window down to width " + format_rational(width * 2));
  rep.witness = last;
  return rep;
}

AxiomReport check_frictionality(const Strategy& strategy, ActionIndex z, const TimePoint& t, const PiecewiseHistory& h,
                                const TimePoint& bound) {
  const TimeDomain& d = h.domain();
  std::size_t count = 0;
  if (bound < t) throw Error(ErrorCode::BadParameters, "frictionality window ends before it starts");
  Track window = restrict_track(d, h.track(strategy.player()), Interval::closed(t, bound));
  for (const auto& p : window) {
    if (p.action == z) continue;
    if (d.is_dense() && !p.span.is_singleton()) {
      AxiomReport r = make_report(5, strategy, Verdict::Fail, Method::Exhaustive,
                                  "action " + std::to_string(p.action) + " on " + p.span.str() +
                                      " differs from the default at infinitely many points");
      r.witness = Witness{{t, bound}, {h}, {p.span}, {p.action}, "first non-degenerate piece away from the default"};
      return r;
    }
    count += d.is_chain() ? chain_points(d, p.span).size() : 1;
  }
  return make_report(5, strategy, Verdict::Pass, Method::Exhaustive,
                     std::to_string(count) + " points away from the default in [" + t.str() + "," + bound.str() + "]");
}

namespace {

// Exhaustive chain drivers work on flattened tuples for speed.
struct ChainWalk {
  const Profile& profile;
  PlayerId i;
  std::vector<std::size_t> radix;
  std::size_t n;
  std::size_t size;

  // Fills player i's cells from `cut` by recursion, others as given.
  void follow(std::vector<ActionIndex>& flat, std::size_t cut) const {
    for (std::size_t s = cut; s < size; ++s)
      flat[s * n + i] = profile[i]->respond_chain(s, std::span<const ActionIndex>(flat.data(), s * n));
  }

  bool consistent_from(const std::vector<ActionIndex>& flat, std::size_t cut) const {
    for (std::size_t s = cut; s < size; ++s) {
      if (profile[i]->respond_chain(s, std::span<const ActionIndex>(flat.data(), s * n)) != flat[s * n + i]) return false;
    }
    return true;
  }

  // Calls visit(flat) for every prefix before cut and every opponent tail from cut.
  template <class Visit>
  void each_case(std::size_t cut, Visit&& visit) const {
    std::vector<std::size_t> tail_radix;
    for (std::size_t j = 0; j < n; ++j) tail_radix.push_back(j == i ? 1 : radix[j]);
    std::uint64_t prefixes = chain_prefix_count(radix, cut);
    std::uint64_t tails = chain_prefix_count(tail_radix, size - cut);
    for (std::uint64_t pc = 0; pc < prefixes; ++pc) {
      auto head = chain_prefix_decode(radix, cut, pc);
      for (std::uint64_t tc = 0; tc < tails; ++tc) {
        auto tail = chain_prefix_decode(tail_radix, size - cut, tc);
        std::vector<ActionIndex> flat(head);
        flat.insert(flat.end(), tail.begin(), tail.end());
        visit(flat, pc);
      }
    }
  }
};

PiecewiseHistory flat_history(const TimeDomain& d, std::size_t n, const std::vector<ActionIndex>& flat) {
  std::vector<std::vector<ActionIndex>> tuples(d.size(), std::vector<ActionIndex>(n));
  for (std::size_t s = 0; s < d.size(); ++s)
    for (std::size_t j = 0; j < n; ++j) tuples[s][j] = flat[s * n + j];
  return chain_history(d, tuples);
}

AxiomReport chain_exhaustive(const Profile& profile, PlayerId i, int axiom) {
  const GameFrame& frame = profile[i]->frame();
  const TimeDomain& d = frame.domain;
  ChainWalk walk{profile, i, frame.alphabet_sizes, frame.players(), d.size()};
  AxiomReport acc;
  acc.axiom = axiom;
  acc.player = i;
  acc.method = Method::Exhaustive;
  std::map<std::vector<ActionIndex>, bool> run_cache;

  for (std::size_t cut = 0; cut < walk.size; ++cut) {
    if (acc.verdict == Verdict::Fail) break;
    TimePoint t(static_cast<std::int64_t>(cut));
    switch (axiom) {
      case 1:
      case 2:
      case 5:
        walk.each_case(cut, [&](std::vector<ActionIndex>& flat, std::uint64_t) {
          if (acc.verdict == Verdict::Fail) return;
          ++acc.cases;
          walk.follow(flat, cut);
          if (axiom == 1 && !walk.consistent_from(flat, cut)) {
            acc.verdict = Verdict::Fail;
            acc.detail = "recursion produced an inconsistent continuation from " + t.str();
            acc.witness = Witness{{t}, {flat_history(d, walk.n, flat)}, {}, {}, "inconsistent continuation"};
          }
          if (axiom == 2) {
            // Every nonempty set of maximal runs has a least run.
            std::vector<ActionIndex> own;
            for (std::size_t s = cut; s < walk.size; ++s) own.push_back(flat[s * walk.n + i]);
            auto [it, fresh] = run_cache.try_emplace(own, true);
            if (fresh) {
              std::vector<std::pair<std::size_t, std::size_t>> runs;
              for (std::size_t s = 0; s < own.size(); ++s) {
                if (s == 0 || own[s] != own[s - 1]) runs.emplace_back(s, s);
                runs.back().second = s;
              }
              for (std::uint32_t mask = 1; mask < (1u << runs.size()); ++mask) {
                bool has_min = false;
                for (std::size_t a = 0; a < runs.size() && !has_min; ++a) {
                  if (!(mask >> a & 1u)) continue;
                  bool least = true;
                  for (std::size_t b = 0; b < runs.size(); ++b)
                    if ((mask >> b & 1u) && b != a && !(runs[a].second < runs[b].first)) least = false;
                  has_min = least;
                }
                it->second = it->second && has_min;
              }
            }
            if (!it->second) {
              acc.verdict = Verdict::Fail;
              acc.detail = "a set of change blocks has no least block";
              acc.witness = Witness{{t}, {flat_history(d, walk.n, flat)}, {}, {}, acc.detail};
            }
          }
        });
        break;
      case 3: {
        if (cut + 1 == walk.size) break;
        std::map<std::uint64_t, std::set<ActionIndex>> first_actions;
        walk.each_case(cut, [&](std::vector<ActionIndex>& flat, std::uint64_t pc) {
          ++acc.cases;
          walk.follow(flat, cut);
          first_actions[pc].insert(flat[cut * walk.n + i]);
        });
        for (const auto& [pc, actions] : first_actions) {
          if (actions.size() > 1) {
            acc.verdict = Verdict::Fail;
            acc.detail = "consistent continuations of one prefix disagree at " + t.str();
            acc.witness = Witness{{t}, {}, {}, {actions.begin(), actions.end()}, acc.detail};
            break;
          }
        }
        break;
      }
      case 4: {
        if (cut + 1 == walk.size) break;
        std::uint64_t prefixes = chain_prefix_count(walk.radix, cut);
        for (std::uint64_t pc = 0; pc < prefixes && acc.verdict != Verdict::Fail; ++pc) {
          auto head = chain_prefix_decode(walk.radix, cut, pc);
          head.resize(walk.size * walk.n, 0);
          AxiomReport r = inertiality_chain(*profile[i], t, flat_history(d, walk.n, head));
          merge_into(acc, r);
          acc.cases += r.cases - 1;
        }
        break;
      }
      default:
        throw Error(ErrorCode::BadParameters, "axioms are numbered 1..5");
    }
  }
  if (acc.verdict == Verdict::Pass) {
    static const char* what[] = {"", "traceability", "well-orderedness", "initial uniqueness", "inertiality",
                                 "frictionality"};
    acc.detail = std::string(what[axiom]) + " holds at every time and prefix (" + std::to_string(acc.cases) + " cases)";
    if (axiom == 5) acc.detail += "; a finite time set has finitely many deviation points";
  }
  return acc;
}

std::vector<ActionIndex> z_candidates(const Strategy& s) {
  if (auto z = s.default_action()) return {*z};
  std::vector<ActionIndex> all(s.frame().alphabet_sizes[s.player()]);
  for (ActionIndex a = 0; a < all.size(); ++a) all[a] = a;
  return all;
}

AxiomReport dense_sampled(const Profile& profile, PlayerId i, int axiom, const CheckOptions& options) {
  const Strategy& strategy = *profile[i];
  const GameFrame& frame = strategy.frame();
  const TimeDomain& d = frame.domain;
  bool structured = std::all_of(profile.begin(), profile.end(), [](const StrategyPtr& s) { return s->has_hold_witness(); });

  HistoryPrefix start = HistoryPrefix::initial(d, frame.players());
  std::optional<PiecewiseHistory> base;
  std::set<TimePoint> times;
  if (structured) {
    DenseOptions dense;
    dense.event_budget = options.event_budget;
    SolveResult solved = solve_dense(profile, start, dense);
    if (solved.history) base = solved.history;
    for (const auto& ev : solved.events) {
      if (times.size() >= 16) break;
      times.insert(ev.time);
    }
  } else {
    SolveResult probed = probe_dense(profile, start, options.probe);
    if (probed.history) base = probed.history;
  }
  if (!base) base = PiecewiseHistory::constant(d, std::vector<ActionIndex>(frame.players(), 0));
  for (int k = 0; k < 8; ++k) times.insert(TimePoint(d.min().value() + (d.max().value() - d.min().value()) * Rational(k, 8)));

  std::vector<PiecewiseHistory> histories{*base};
  for (std::uint64_t k = 0; k < 3; ++k) histories.push_back(random_extension(*base, d.min(), frame, options.seed * 131 + k));

  AxiomReport acc;
  acc.axiom = axiom;
  acc.player = i;
  acc.method = Method::Exhaustive;
  std::uint64_t salt = options.seed * 977 + 3;
  for (const auto& t : times) {
    for (const auto& h : histories) {
      if (acc.verdict == Verdict::Fail) return acc;
      if (axiom == 4) {
        merge_into(acc, check_inertiality(strategy, t, h, options));
        continue;
      }
      AxiomReport trace = check_traceability(strategy, t, h, options);
      if (axiom == 1) {
        merge_into(acc, trace);
        continue;
      }
      if (trace.verdict == Verdict::Fail || !trace.witness || trace.witness->histories.empty()) {
        merge_into(acc, make_report(axiom, strategy, Verdict::Inconclusive, trace.method,
                                    "no consistent continuation available at " + t.str()));
        continue;
      }
      const PiecewiseHistory& g = trace.witness->histories.front();
      if (axiom == 2) {
        merge_into(acc, check_well_orderedness(strategy, t, std::span<const PiecewiseHistory>(&g, 1)));
        continue;
      }
      if (axiom == 5) {
        AxiomReport best = check_frictionality(strategy, z_candidates(strategy).front(), t, g, d.max());
        for (ActionIndex z : z_candidates(strategy)) {
          AxiomReport r = check_frictionality(strategy, z, t, g, d.max());
          if (r.verdict == Verdict::Pass) {
            best = r;
            break;
          }
        }
        merge_into(acc, best);
        continue;
      }
      // Axiom 3: a second consistent continuation of the same prefix.
      PiecewiseHistory other = random_extension(h, t, frame, salt++);
      CheckOptions alt = options;
      alt.probe.prefer_last = true;
      AxiomReport trace2 = check_traceability(strategy, t, other, alt);
      if (!trace2.witness || trace2.witness->histories.empty() || trace2.verdict == Verdict::Fail) {
        merge_into(acc, make_report(3, strategy, Verdict::Inconclusive, trace2.method,
                                    "no second continuation available at " + t.str()));
        continue;
      }
      AxiomReport r = check_initial_uniqueness(strategy, t, g, trace2.witness->histories.front());
      r.method = weakest(r.method, weakest(trace.method, trace2.method));
      merge_into(acc, r);
    }
  }
  if (acc.verdict == Verdict::Pass) acc.detail = "no counterexample over " + std::to_string(acc.cases) + " sampled cases";
  return acc;
}

}  // namespace

AxiomReport check_axiom(const Profile& profile, PlayerId i, int axiom, const CheckOptions& options) {
  if (axiom < 1 || axiom > 5) throw Error(ErrorCode::BadParameters, "axioms are numbered 1..5");
  if (i >= profile.size()) throw Error(ErrorCode::BadParameters, "no player " + std::to_string(i));
  if (profile[i]->domain().is_chain()) return chain_exhaustive(profile, i, axiom);
  return dense_sampled(profile, i, axiom, options);
}

}  // namespace totime
