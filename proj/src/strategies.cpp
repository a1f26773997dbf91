#include "totime/strategies.hpp"

#include <algorithm>
#include <random>

#include "totime/error.hpp"

namespace totime {

Strategy::Strategy(GameFrame frame, PlayerId player, StrategyFlags flags)
    : frame_(std::move(frame)), player_(player), flags_(flags) {
  if (player_ >= frame_.players()) throw Error(ErrorCode::BadParameters, "player index out of range");
}

std::optional<Response> Strategy::respond_after(const TimePoint&, const HistoryPrefix&,
                                                std::span<const ActionIndex>) const {
  return std::nullopt;
}

std::optional<InertialWitness> Strategy::inertial_witness(const TimePoint&, const HistoryPrefix&) const {
  return std::nullopt;
}

std::optional<ActionIndex> Strategy::default_action() const { return std::nullopt; }

ActionIndex Strategy::respond_chain(std::size_t t, std::span<const ActionIndex> flat_prefix) const {
  std::size_t n = frame_.players();
  std::vector<std::vector<ActionIndex>> rows(t, std::vector<ActionIndex>(n));
  for (std::size_t s = 0; s < t; ++s)
    for (std::size_t j = 0; j < n; ++j) rows[s][j] = flat_prefix[s * n + j];
  return respond(TimePoint(static_cast<std::int64_t>(t)), chain_prefix(domain(), n, rows)).action;
}

void require_profile(const GameFrame& frame, const Profile& profile) {
  if (profile.size() != frame.players()) throw Error(ErrorCode::BadParameters, "profile needs one strategy per player");
  for (PlayerId i = 0; i < profile.size(); ++i) {
    if (!profile[i] || profile[i]->player() != i)
      throw Error(ErrorCode::BadParameters, "strategy " + std::to_string(i) + " is for another player");
    if (!(profile[i]->domain() == frame.domain)) throw Error(ErrorCode::DomainMismatch, "strategy domain differs");
  }
}

namespace {

void require_trigger(const GameFrame& frame, const Trigger& trigger) {
  for (ActionIndex a : trigger.actions) frame.require_action({trigger.watch, a});
}

class ConstantStrategy final : public Strategy {
 public:
  ConstantStrategy(const GameFrame& frame, PlayerId i, ActionIndex a)
      : Strategy(frame, i, {.inertial = true, .frictional = true}), action_(a) {}

  std::string kind() const override { return "constant"; }

  Response respond(const TimePoint&, const HistoryPrefix&) const override {
    if (domain().is_chain()) return {action_, std::nullopt};
    return {action_, domain().max()};
  }

  std::optional<Response> respond_after(const TimePoint& t, const HistoryPrefix&,
                                        std::span<const ActionIndex>) const override {
    if (!(t < domain().max())) return std::nullopt;
    return Response{action_, domain().max()};
  }

  std::optional<InertialWitness> inertial_witness(const TimePoint& t, const HistoryPrefix&) const override {
    if (!(t < domain().max())) return std::nullopt;
    return InertialWitness{action_, domain().max()};
  }

  std::optional<ActionIndex> default_action() const override { return action_; }

  ActionIndex respond_chain(std::size_t, std::span<const ActionIndex>) const override { return action_; }

 private:
  ActionIndex action_;
};

class GrimTrigger final : public Strategy {
 public:
  GrimTrigger(const GameFrame& frame, PlayerId i, ActionIndex cooperate, ActionIndex punish, Trigger trigger,
              Rational delta)
      : Strategy(frame, i, {.inertial = true}),
        cooperate_(cooperate),
        punish_(punish),
        trigger_(std::move(trigger)),
        delta_(std::move(delta)) {}

  std::string kind() const override { return "grim"; }

  Response respond(const TimePoint& t, const HistoryPrefix& p) const override {
    return {decide(p, grid_floor(t)), capped(next_grid(t))};
  }

  std::optional<Response> respond_after(const TimePoint& t, const HistoryPrefix& before,
                                        std::span<const ActionIndex>) const override {
    if (!(t < domain().max())) return std::nullopt;
    // Points just after t share t's grid cell, whose decision looks at play
    // before the cell start only.
    return Response{decide(before, grid_floor(t)), capped(next_grid(t))};
  }

  std::optional<InertialWitness> inertial_witness(const TimePoint& t, const HistoryPrefix& p) const override {
    if (!(t < domain().max())) return std::nullopt;
    return InertialWitness{decide(p, grid_floor(t)), capped(next_grid(t))};
  }

  ActionIndex respond_chain(std::size_t t, std::span<const ActionIndex> flat_prefix) const override {
    Rational g = grid_floor(TimePoint(static_cast<std::int64_t>(t))).value();
    std::size_t n = frame().players();
    for (std::size_t s = 0; s < t && Rational(static_cast<std::int64_t>(s)) < g; ++s) {
      ActionIndex a = flat_prefix[s * n + trigger_.watch];
      if (std::find(trigger_.actions.begin(), trigger_.actions.end(), a) != trigger_.actions.end()) return punish_;
    }
    return cooperate_;
  }

 private:
  TimePoint grid_floor(const TimePoint& t) const {
    Rational lo = domain().min().value();
    Rational steps = Rational(floor((t.value() - lo) / delta_));
    return TimePoint(lo + steps * delta_);
  }
  TimePoint next_grid(const TimePoint& t) const { return TimePoint(grid_floor(t).value() + delta_); }

  ActionIndex decide(const HistoryPrefix& p, const TimePoint& cell_start) const {
    return p.played_any(trigger_.watch, trigger_.actions, cell_start) ? punish_ : cooperate_;
  }

  ActionIndex cooperate_;
  ActionIndex punish_;
  Trigger trigger_;
  Rational delta_;
};

class TableStrategy final : public Strategy {
 public:
  TableStrategy(const GameFrame& frame, PlayerId i, ChainTable table)
      : Strategy(frame, i, {.table = true}), table_(std::move(table)) {}

  std::string kind() const override { return "table"; }

  Response respond(const TimePoint& t, const HistoryPrefix& p) const override {
    domain().require(t);
    auto rows = static_cast<std::size_t>(t.value().convert_to<long long>());
    std::size_t n = frame().players();
    std::vector<ActionIndex> flat(rows * n);
    for (std::size_t s = 0; s < rows; ++s)
      for (std::size_t j = 0; j < n; ++j) flat[s * n + j] = p.at(j, TimePoint(static_cast<std::int64_t>(s)));
    return {respond_chain(rows, flat), successor(domain(), t)};
  }

  ActionIndex respond_chain(std::size_t t, std::span<const ActionIndex> flat_prefix) const override {
    return table_.entries[t][chain_prefix_code(frame().alphabet_sizes, flat_prefix.first(t * frame().players()))];
  }

 private:
  ChainTable table_;
};

class GalleryStrategy final : public Strategy {
 public:
  GalleryStrategy(const GameFrame& frame, PlayerId i, bool multi)
      : Strategy(frame, i, {.black_box = true}), multi_(multi) {}

  std::string kind() const override { return "gallery"; }
  const char* name() const { return multi_ ? "multi" : "no_trace"; }

  Response respond(const TimePoint& t, const HistoryPrefix& p) const override {
    static constexpr ActionIndex kOne[] = {1};
    bool seen_one = p.played_any(player(), kOne, t);
    if (multi_) return {seen_one ? 1u : 0u, std::nullopt};
    if (t == domain().min()) return {0, std::nullopt};
    return {seen_one ? 0u : 1u, std::nullopt};
  }

 private:
  bool multi_;
};

class FrictionalStrategy final : public Strategy {
 public:
  FrictionalStrategy(const GameFrame& frame, PlayerId i, ActionIndex z, std::vector<Blip> blips,
                     std::optional<Trigger> trigger)
      : Strategy(frame, i, {.frictional = true}), z_(z), blips_(std::move(blips)), trigger_(std::move(trigger)) {}

  std::string kind() const override { return "frictional"; }

  Response respond(const TimePoint& t, const HistoryPrefix& p) const override {
    auto it = std::lower_bound(blips_.begin(), blips_.end(), t, [](const Blip& b, const TimePoint& x) { return b.at < x; });
    if (it != blips_.end() && it->at == t && fires(p, t)) return {it->action, t};
    return {z_, next_blip_after(t)};
  }

  std::optional<Response> respond_after(const TimePoint& t, const HistoryPrefix&,
                                        std::span<const ActionIndex>) const override {
    if (!(t < domain().max())) return std::nullopt;
    return Response{z_, next_blip_after(t)};
  }

  std::optional<InertialWitness> inertial_witness(const TimePoint& t, const HistoryPrefix& p) const override {
    if (!(t < domain().max())) return std::nullopt;
    Response r = respond(t, p);
    if (r.action != z_) return std::nullopt;
    return InertialWitness{z_, next_blip_after(t)};
  }

  std::optional<ActionIndex> default_action() const override { return z_; }

 private:
  bool fires(const HistoryPrefix& p, const TimePoint& t) const {
    return !trigger_ || p.played_any(trigger_->watch, trigger_->actions, t);
  }

  TimePoint next_blip_after(const TimePoint& t) const {
    auto it = std::upper_bound(blips_.begin(), blips_.end(), t, [](const TimePoint& x, const Blip& b) { return x < b.at; });
    if (it == blips_.end()) return domain().max();
    return it->at;
  }

  ActionIndex z_;
  std::vector<Blip> blips_;
  std::optional<Trigger> trigger_;
};

class HalvingStrategy final : public Strategy {
 public:
  HalvingStrategy(const GameFrame& frame, PlayerId i, ActionIndex a, ActionIndex b)
      : Strategy(frame, i, {.inertial = true}), a_(a), b_(b) {}

  std::string kind() const override { return "halving"; }

  Response respond(const TimePoint& t, const HistoryPrefix&) const override {
    if (t == domain().max()) return {a_, t};
    auto [k, end] = cell(t);
    return {k % 2 == 0 ? a_ : b_, end};
  }

  std::optional<Response> respond_after(const TimePoint& t, const HistoryPrefix& before,
                                        std::span<const ActionIndex>) const override {
    if (!(t < domain().max())) return std::nullopt;
    return respond(t, before);
  }

  std::optional<InertialWitness> inertial_witness(const TimePoint& t, const HistoryPrefix& p) const override {
    if (!(t < domain().max())) return std::nullopt;
    Response r = respond(t, p);
    return InertialWitness{r.action, *r.hold_until};
  }

 private:
  // Cell k = [lo + w(1-2^-k), lo + w(1-2^-(k+1))) containing t < max.
  std::pair<std::size_t, TimePoint> cell(const TimePoint& t) const {
    Rational lo = domain().min().value();
    Rational w = domain().max().value() - lo;
    // With 1 - u = p/q, k is the largest integer such that 2^k <= q/p.
    Rational v = 1 - (t.value() - lo) / w;
    Integer p = numerator(v);
    Integer q = denominator(v);
    std::size_t k = q >= p ? msb(q) - msb(p) : 0;
    if (k > 0 && (p << k) > q) --k;
    Rational gap = Rational(1) / (Integer(1) << (k + 1));
    return {k, TimePoint(lo + w * (1 - gap))};
  }

  ActionIndex a_;
  ActionIndex b_;
};

}  // namespace

StrategyPtr make_constant(const GameFrame& frame, PlayerId i, ActionIndex a) {
  frame.require_action({i, a});
  return std::make_shared<ConstantStrategy>(frame, i, a);
}

StrategyPtr make_grim_trigger(const GameFrame& frame, PlayerId i, ActionIndex cooperate, ActionIndex punish,
                              Trigger trigger, const Rational& delta) {
  frame.require_action({i, cooperate});
  frame.require_action({i, punish});
  require_trigger(frame, trigger);
  if (cooperate == punish) throw Error(ErrorCode::BadParameters, "grim trigger needs cooperate != punish");
  if (!(delta > 0)) throw Error(ErrorCode::BadParameters, "grim trigger needs delta > 0");
  return std::make_shared<GrimTrigger>(frame, i, cooperate, punish, std::move(trigger), delta);
}

std::uint64_t chain_prefix_code(const std::vector<std::size_t>& alphabet_sizes, std::span<const ActionIndex> flat_prefix) {
  std::uint64_t code = 0;
  std::uint64_t scale = 1;
  for (std::size_t k = 0; k < flat_prefix.size(); ++k) {
    std::size_t radix = alphabet_sizes[k % alphabet_sizes.size()];
    code += flat_prefix[k] * scale;
    scale *= radix;
  }
  return code;
}

std::vector<ActionIndex> chain_prefix_decode(const std::vector<std::size_t>& alphabet_sizes, std::size_t rows,
                                             std::uint64_t code) {
  std::vector<ActionIndex> flat(rows * alphabet_sizes.size());
  for (std::size_t k = 0; k < flat.size(); ++k) {
    std::size_t radix = alphabet_sizes[k % alphabet_sizes.size()];
    flat[k] = code % radix;
    code /= radix;
  }
  return flat;
}

std::uint64_t chain_prefix_count(const std::vector<std::size_t>& alphabet_sizes, std::size_t rows, std::uint64_t limit) {
  std::uint64_t count = 1;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t a : alphabet_sizes) {
      count *= a;
      if (count > limit) throw Error(ErrorCode::SearchSpaceTooLarge, "more than " + std::to_string(limit) + " prefixes");
    }
  }
  return count;
}

StrategyPtr make_table(const GameFrame& frame, PlayerId i, ChainTable table) {
  if (!frame.domain.is_chain()) throw Error(ErrorCode::DomainMismatch, "table strategies need a chain domain");
  if (table.entries.size() != frame.domain.size())
    throw Error(ErrorCode::MissingEntry, "table lacks rows for some times");
  for (std::size_t t = 0; t < table.entries.size(); ++t) {
    if (table.entries[t].size() != chain_prefix_count(frame.alphabet_sizes, t))
      throw Error(ErrorCode::MissingEntry, "table row " + std::to_string(t) + " is not total");
    for (ActionIndex a : table.entries[t]) frame.require_action({i, a});
  }
  return std::make_shared<TableStrategy>(frame, i, std::move(table));
}

ChainTable random_chain_table(const GameFrame& frame, PlayerId i, std::uint64_t seed) {
  if (!frame.domain.is_chain()) throw Error(ErrorCode::DomainMismatch, "table strategies need a chain domain");
  std::mt19937_64 rng(seed);
  ChainTable table;
  std::size_t radix = frame.alphabet_sizes.at(i);
  for (std::size_t t = 0; t < frame.domain.size(); ++t) {
    std::vector<ActionIndex> row(chain_prefix_count(frame.alphabet_sizes, t));
    for (auto& a : row) a = rng() % radix;
    table.entries.push_back(std::move(row));
  }
  return table;
}

StrategyPtr make_gallery(const GameFrame& frame, const std::string& name, PlayerId i) {
  if (name != "no_trace" && name != "multi") throw Error(ErrorCode::UnknownName, "no gallery strategy '" + name + "'");
  if (frame.players() != 1) throw Error(ErrorCode::BadParameters, "gallery strategies are single-player");
  if (frame.alphabet_sizes.at(i) != 2) throw Error(ErrorCode::BadParameters, "gallery strategies use actions {0,1}");
  return std::make_shared<GalleryStrategy>(frame, i, name == "multi");
}

StrategyPtr make_frictional(const GameFrame& frame, PlayerId i, ActionIndex z, std::vector<Blip> blips,
                            std::optional<Trigger> trigger) {
  frame.require_action({i, z});
  if (trigger) require_trigger(frame, *trigger);
  std::sort(blips.begin(), blips.end(), [](const Blip& a, const Blip& b) { return a.at < b.at; });
  for (std::size_t k = 0; k < blips.size(); ++k) {
    frame.domain.require(blips[k].at);
    frame.require_action({i, blips[k].action});
    if (k > 0 && blips[k].at == blips[k - 1].at) throw Error(ErrorCode::BadParameters, "duplicate blip time");
  }
  return std::make_shared<FrictionalStrategy>(frame, i, z, std::move(blips), std::move(trigger));
}

StrategyPtr make_halving(const GameFrame& frame, PlayerId i, ActionIndex a, ActionIndex b) {
  if (!frame.domain.is_dense()) throw Error(ErrorCode::DomainMismatch, "halving strategy needs a dense domain");
  frame.require_action({i, a});
  frame.require_action({i, b});
  return std::make_shared<HalvingStrategy>(frame, i, a, b);
}

}  // namespace totime
