#include "totime/gamespec.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "totime/error.hpp"

namespace totime {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::SchemaError, path + ": " + message);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(path + "." + key, "missing");
  return *it;
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

std::uint64_t get_uint(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    schema(path, "expected a natural number");
  return j.get<std::uint64_t>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) schema(path, "expected true or false");
  return j.get<bool>();
}

Rational get_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) schema(path, "expected a rational string such as \"1/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) out.push_back(sep);
    out += parts[k];
  }
  return out;
}

std::string tuple_key(const GameSpec& spec, std::span<const ActionIndex> tuple) {
  std::vector<std::string> names;
  for (PlayerId j = 0; j < tuple.size(); ++j) names.push_back(spec.players[j].actions[tuple[j]]);
  return join(names, ',');
}

std::vector<ActionIndex> parse_tuple_key(const GameSpec& spec, const std::string& key) {
  auto names = split(key, ',');
  if (names.size() != spec.players.size())
    throw Error(ErrorCode::AlphabetMismatch, "tuple '" + key + "' has " + std::to_string(names.size()) +
                                                 " actions for " + std::to_string(spec.players.size()) + " players");
  std::vector<ActionIndex> tuple;
  for (PlayerId j = 0; j < names.size(); ++j) {
    const auto& alphabet = spec.players[j].actions;
    auto it = std::find(alphabet.begin(), alphabet.end(), names[j]);
    if (it == alphabet.end())
      throw Error(ErrorCode::AlphabetMismatch,
                  "'" + names[j] + "' is not an action of player " + spec.players[j].id + " in '" + key + "'");
    tuple.push_back(static_cast<ActionIndex>(it - alphabet.begin()));
  }
  return tuple;
}

// Every action tuple in mixed-radix order, player 0 varying slowest.
std::vector<std::vector<ActionIndex>> all_tuples(const GameSpec& spec) {
  std::vector<std::vector<ActionIndex>> out{{}};
  for (const auto& p : spec.players) {
    std::vector<std::vector<ActionIndex>> grown;
    for (const auto& partial : out) {
      for (ActionIndex a = 0; a < p.actions.size(); ++a) {
        auto next = partial;
        next.push_back(a);
        grown.push_back(std::move(next));
      }
    }
    out = std::move(grown);
  }
  return out;
}

std::string table_key(const GameSpec& spec, std::size_t rows, std::span<const ActionIndex> flat) {
  std::vector<std::string> parts;
  std::size_t n = spec.players.size();
  for (std::size_t s = 0; s < rows; ++s) parts.push_back(tuple_key(spec, flat.subspan(s * n, n)));
  return join(parts, '|');
}

ActionIndex own_action(const GameSpec& spec, PlayerId i, const Json& j, const std::string& path) {
  std::string name = get_string(j, path);
  const auto& alphabet = spec.players[i].actions;
  auto it = std::find(alphabet.begin(), alphabet.end(), name);
  if (it == alphabet.end()) schema(path, "'" + name + "' is not an action of player " + spec.players[i].id);
  return static_cast<ActionIndex>(it - alphabet.begin());
}

PlayerId player_ref(const GameSpec& spec, const Json& j, const std::string& path) {
  std::string id = get_string(j, path);
  for (PlayerId k = 0; k < spec.players.size(); ++k)
    if (spec.players[k].id == id) return k;
  schema(path, "unknown player '" + id + "'");
}

// Validates one strategy object and returns its canonical form.
Json canonical_strategy(const GameSpec& spec, PlayerId i, const Json& s, const std::string& path) {
  std::string kind = get_string(field(s, "kind", path), path + ".kind");
  std::string player = get_string(field(s, "player", path), path + ".player");
  if (player != spec.players[i].id)
    schema(path + ".player", "expected '" + spec.players[i].id + "', strategies follow player order");
  Json out;
  out["kind"] = kind;
  out["player"] = player;
  auto action = [&](const char* key) {
    own_action(spec, i, field(s, key, path), path + "." + key);
    out[key] = field(s, key, path);
  };
  auto trigger = [&](bool required) {
    if (!required && !s.contains("watch")) return;
    PlayerId w = player_ref(spec, field(s, "watch", path), path + ".watch");
    const Json& acts = field(s, "trigger", path);
    if (!acts.is_array() || acts.empty()) schema(path + ".trigger", "expected a nonempty array of actions");
    for (std::size_t k = 0; k < acts.size(); ++k) own_action(spec, w, acts[k], path + ".trigger[" + std::to_string(k) + "]");
    out["watch"] = spec.players[w].id;
    out["trigger"] = acts;
  };

  if (kind == "constant") {
    action("action");
  } else if (kind == "grim") {
    action("cooperate");
    action("punish");
    trigger(true);
    Rational delta = get_rational(field(s, "delta", path), path + ".delta");
    if (delta <= 0) schema(path + ".delta", "must be positive");
    out["delta"] = format_rational(delta);
  } else if (kind == "table") {
    if (!spec.domain.is_chain()) schema(path, "table strategies need a chain domain");
    if (s.contains("random")) {
      out["random"] = get_uint(s["random"], path + ".random");
    } else {
      const Json& entries = field(s, "entries", path);
      if (!entries.is_object()) schema(path + ".entries", "expected an object keyed by prefixes");
      GameFrame frame = spec.frame();
      std::vector<std::vector<std::optional<ActionIndex>>> rows(spec.domain.size());
      for (std::size_t t = 0; t < rows.size(); ++t) rows[t].resize(chain_prefix_count(frame.alphabet_sizes, t));
      for (const auto& [key, value] : entries.items()) {
        std::string where = path + ".entries[\"" + key + "\"]";
        std::vector<ActionIndex> flat;
        std::size_t t = 0;
        if (!key.empty()) {
          for (const auto& row : split(key, '|')) {
            auto tuple = parse_tuple_key(spec, row);
            flat.insert(flat.end(), tuple.begin(), tuple.end());
            ++t;
          }
        }
        if (t >= rows.size()) schema(where, "prefix is longer than the domain allows");
        rows[t][chain_prefix_code(frame.alphabet_sizes, flat)] = own_action(spec, i, value, where);
      }
      Json canon = Json::object();
      for (std::size_t t = 0; t < rows.size(); ++t) {
        for (std::uint64_t code = 0; code < rows[t].size(); ++code) {
          auto flat = chain_prefix_decode(frame.alphabet_sizes, t, code);
          std::string key = table_key(spec, t, flat);
          if (!rows[t][code]) schema(path + ".entries", "no entry for prefix \"" + key + "\"");
          canon[key] = spec.players[i].actions[*rows[t][code]];
        }
      }
      out["entries"] = std::move(canon);
    }
  } else if (kind == "gallery") {
    std::string name = get_string(field(s, "name", path), path + ".name");
    if (name != "no_trace" && name != "multi") schema(path + ".name", "unknown gallery strategy '" + name + "'");
    if (spec.players[i].actions.size() != 2) schema(path, "gallery strategies need exactly two actions");
    out["name"] = name;
  } else if (kind == "frictional") {
    action("default");
    const Json& blips = field(s, "blips", path);
    if (!blips.is_array()) schema(path + ".blips", "expected an array");
    std::vector<std::pair<Rational, Json>> sorted;
    for (std::size_t k = 0; k < blips.size(); ++k) {
      std::string where = path + ".blips[" + std::to_string(k) + "]";
      Rational at = get_rational(field(blips[k], "at", where), where + ".at");
      if (!spec.domain.contains(TimePoint(at))) schema(where + ".at", "outside the time domain");
      own_action(spec, i, field(blips[k], "action", where), where + ".action");
      Json b;
      b["at"] = format_rational(at);
      b["action"] = blips[k]["action"];
      sorted.emplace_back(at, std::move(b));
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out["blips"] = Json::array();
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (k > 0 && sorted[k].first == sorted[k - 1].first) schema(path + ".blips", "duplicate blip time");
      out["blips"].push_back(sorted[k].second);
    }
    trigger(false);
  } else if (kind == "halving") {
    if (!spec.domain.is_dense()) schema(path, "halving strategies need a dense domain");
    action("a");
    action("b");
  } else {
    throw Error(ErrorCode::UnknownStrategyKind, path + ".kind: '" + kind + "'");
  }
  return out;
}

}  // namespace

GameFrame GameSpec::frame() const {
  GameFrame f{domain, {}};
  for (const auto& p : players) f.alphabet_sizes.push_back(p.actions.size());
  return f;
}

PlayerId GameSpec::player_index(std::string_view id) const {
  for (PlayerId k = 0; k < players.size(); ++k)
    if (players[k].id == id) return k;
  throw Error(ErrorCode::UnknownName, "unknown player '" + std::string(id) + "'");
}

ActionIndex GameSpec::action_index(PlayerId i, std::string_view name) const {
  const auto& alphabet = players.at(i).actions;
  auto it = std::find(alphabet.begin(), alphabet.end(), name);
  if (it == alphabet.end()) throw Error(ErrorCode::UnknownName, "unknown action '" + std::string(name) + "'");
  return static_cast<ActionIndex>(it - alphabet.begin());
}

Json domain_to_json(const TimeDomain& d) {
  Json j;
  if (d.is_chain()) {
    j["kind"] = "chain";
    j["size"] = d.size();
  } else {
    j["kind"] = "dense";
    j["lo"] = d.min().str();
    j["hi"] = d.max().str();
  }
  return j;
}

TimeDomain domain_from_json(const Json& j, const std::string& path) {
  std::string kind = get_string(field(j, "kind", path), path + ".kind");
  if (kind == "chain") {
    std::uint64_t n = get_uint(field(j, "size", path), path + ".size");
    if (n == 0) schema(path + ".size", "a chain needs at least one point");
    return TimeDomain::chain(n);
  }
  if (kind == "dense") {
    Rational lo = get_rational(field(j, "lo", path), path + ".lo");
    Rational hi = get_rational(field(j, "hi", path), path + ".hi");
    if (!(lo < hi)) schema(path, "needs lo < hi");
    return TimeDomain::dense(lo, hi);
  }
  schema(path + ".kind", "expected \"chain\" or \"dense\"");
}

GameSpec parse_spec_json(const Json& doc) {
  if (!doc.is_object()) schema("$", "expected an object");
  GameSpec spec;
  spec.domain = domain_from_json(field(doc, "domain", "$"), "domain");

  const Json& players = field(doc, "players", "$");
  if (!players.is_array() || players.empty()) schema("players", "expected a nonempty array");
  std::set<std::string> ids;
  for (std::size_t k = 0; k < players.size(); ++k) {
    std::string path = "players[" + std::to_string(k) + "]";
    PlayerSpec p;
    p.id = get_string(field(players[k], "id", path), path + ".id");
    if (!ids.insert(p.id).second) schema(path + ".id", "duplicate player id '" + p.id + "'");
    const Json& acts = field(players[k], "actions", path);
    if (!acts.is_array() || acts.empty()) schema(path + ".actions", "expected a nonempty array");
    std::set<std::string> seen;
    for (std::size_t a = 0; a < acts.size(); ++a) {
      std::string where = path + ".actions[" + std::to_string(a) + "]";
      std::string name = get_string(acts[a], where);
      if (name.empty() || name.find_first_of(",|") != std::string::npos)
        schema(where, "action names must be nonempty and free of ',' and '|'");
      if (!seen.insert(name).second) schema(where, "duplicate action '" + name + "'");
      p.actions.push_back(name);
    }
    spec.players.push_back(std::move(p));
  }

  const Json& strategies = field(doc, "strategies", "$");
  if (!strategies.is_array()) schema("strategies", "expected an array");
  if (strategies.size() != spec.players.size())
    schema("strategies", "expected one strategy per player, got " + std::to_string(strategies.size()));
  for (PlayerId i = 0; i < strategies.size(); ++i)
    spec.strategies.push_back(canonical_strategy(spec, i, strategies[i], "strategies[" + std::to_string(i) + "]"));

  std::size_t n = spec.players.size();
  if (doc.contains("payoff")) {
    const Json& payoff = doc["payoff"];
    spec.payoff.rho = get_rational(field(payoff, "rho", "payoff"), "payoff.rho");
    if (spec.payoff.rho < 0) schema("payoff.rho", "discount rate must be nonnegative");
    const Json& table = field(payoff, "table", "payoff");
    if (!table.is_object()) schema("payoff.table", "expected an object keyed by action tuples");
    for (const auto& [key, value] : table.items()) {
      std::string where = "payoff.table[\"" + key + "\"]";
      auto tuple = parse_tuple_key(spec, key);
      std::vector<Rational> u;
      if (value.is_array()) {
        if (value.size() != n) schema(where, "expected one payoff per player");
        for (std::size_t k = 0; k < n; ++k) u.push_back(get_rational(value[k], where + "[" + std::to_string(k) + "]"));
      } else {
        u.assign(n, get_rational(value, where));
      }
      spec.payoff.table[tuple] = std::move(u);
    }
    for (const auto& tuple : all_tuples(spec)) {
      if (!spec.payoff.table.count(tuple)) schema("payoff.table", "no payoff for \"" + tuple_key(spec, tuple) + "\"");
    }
  } else {
    for (const auto& tuple : all_tuples(spec)) spec.payoff.table[tuple] = std::vector<Rational>(n, Rational(0));
  }
  if (doc.contains("seed")) spec.seed = get_uint(doc["seed"], "seed");
  return spec;
}

GameSpec parse_spec(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("$: not valid JSON: ") + e.what());
  }
  return parse_spec_json(doc);
}

Json to_json(const GameSpec& spec) {
  Json j;
  j["domain"] = domain_to_json(spec.domain);
  j["players"] = Json::array();
  for (const auto& p : spec.players) j["players"].push_back({{"id", p.id}, {"actions", p.actions}});
  j["strategies"] = spec.strategies;
  Json table = Json::object();
  for (const auto& [tuple, u] : spec.payoff.table) {
    if (u.size() == 1) {
      table[tuple_key(spec, tuple)] = format_rational(u[0]);
    } else {
      Json values = Json::array();
      for (const auto& x : u) values.push_back(format_rational(x));
      table[tuple_key(spec, tuple)] = std::move(values);
    }
  }
  j["payoff"] = {{"table", std::move(table)}, {"rho", format_rational(spec.payoff.rho)}};
  j["seed"] = spec.seed;
  return j;
}

std::string canonical_json(const GameSpec& spec) { return to_json(spec).dump(2); }

Profile build_profile(const GameSpec& spec) {
  GameFrame frame = spec.frame();
  Profile profile;
  for (PlayerId i = 0; i < spec.strategies.size(); ++i) {
    const Json& s = spec.strategies[i];
    std::string kind = s["kind"];
    auto act = [&](const char* key) { return spec.action_index(i, s[key].get<std::string>()); };
    auto trig = [&]() {
      PlayerId w = spec.player_index(s["watch"].get<std::string>());
      Trigger t{w, {}};
      for (const auto& a : s["trigger"]) t.actions.push_back(spec.action_index(w, a.get<std::string>()));
      return t;
    };
    if (kind == "constant") {
      profile.push_back(make_constant(frame, i, act("action")));
    } else if (kind == "grim") {
      profile.push_back(make_grim_trigger(frame, i, act("cooperate"), act("punish"), trig(),
                                          parse_rational(s["delta"].get<std::string>())));
    } else if (kind == "table") {
      ChainTable table;
      if (s.contains("random")) {
        table = random_chain_table(frame, i, s["random"].get<std::uint64_t>());
      } else {
        table.entries.resize(spec.domain.size());
        for (std::size_t t = 0; t < table.entries.size(); ++t)
          table.entries[t].resize(chain_prefix_count(frame.alphabet_sizes, t));
        for (const auto& [key, value] : s["entries"].items()) {
          std::vector<ActionIndex> flat;
          std::size_t t = 0;
          if (!key.empty()) {
            for (const auto& row : split(key, '|')) {
              auto tuple = parse_tuple_key(spec, row);
              flat.insert(flat.end(), tuple.begin(), tuple.end());
              ++t;
            }
          }
          table.entries[t][chain_prefix_code(frame.alphabet_sizes, flat)] = spec.action_index(i, value.get<std::string>());
        }
      }
      profile.push_back(make_table(frame, i, std::move(table)));
    } else if (kind == "gallery") {
      profile.push_back(make_gallery(frame, s["name"].get<std::string>(), i));
    } else if (kind == "frictional") {
      std::vector<Blip> blips;
      for (const auto& b : s["blips"])
        blips.push_back({TimePoint(parse_rational(b["at"].get<std::string>())), spec.action_index(i, b["action"].get<std::string>())});
      std::optional<Trigger> trigger;
      if (s.contains("watch")) trigger = trig();
      profile.push_back(make_frictional(frame, i, act("default"), std::move(blips), std::move(trigger)));
    } else if (kind == "halving") {
      profile.push_back(make_halving(frame, i, act("a"), act("b")));
    } else {
      throw Error(ErrorCode::UnknownStrategyKind, kind);
    }
  }
  return profile;
}

PayoffVector evaluate_payoff(const PiecewiseHistory& h, const GameSpec& spec, const Rational& tol) {
  if (!(h.domain() == spec.domain) || h.players() != spec.players.size())
    throw Error(ErrorCode::DomainMismatch, "history does not live on the game's domain and players");
  if (tol <= 0) throw Error(ErrorCode::BadParameters, "tolerance must be positive");
  std::size_t n = spec.players.size();
  PayoffVector out;
  out.values.assign(n, Enclosure{Rational(0), Rational(0)});
  const auto& rho = spec.payoff.rho;

  if (spec.domain.is_chain()) {
    Rational factor = 1 / (1 + rho);
    Rational weight = 1;
    for (const auto& tuple : chain_tuples(h)) {
      const auto& u = spec.payoff.table.at(tuple);
      for (std::size_t i = 0; i < n; ++i) {
        out.values[i].lo += weight * u[i];
        out.values[i].hi += weight * u[i];
      }
      weight *= factor;
    }
    return out;
  }

  std::vector<OrderedPartition> parts;
  for (PlayerId i = 0; i < n; ++i) parts.push_back(change_partition(h, i, spec.domain.min()));
  auto blocks = meetN(parts).blocks();
  if (rho == 0) {
    for (const auto& b : blocks) {
      if (b.is_singleton()) continue;
      const auto& u = spec.payoff.table.at(eval(h, b.lo));
      for (std::size_t i = 0; i < n; ++i) {
        out.values[i].lo += u[i] * (b.hi.value() - b.lo.value());
        out.values[i].hi += u[i] * (b.hi.value() - b.lo.value());
      }
    }
    return out;
  }
  out.exact = false;
  Rational scale = 1;
  for (const auto& [tuple, u] : spec.payoff.table)
    for (const auto& x : u) scale = std::max(scale, Rational(abs(x) / rho));
  Rational each = tol / (2 * scale * static_cast<std::int64_t>(std::max<std::size_t>(blocks.size(), 1)));
  std::map<Rational, Enclosure> cache;
  auto exp_at = [&](const Rational& s) -> const Enclosure& {
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, exp_neg_enclosure(rho * s, each)).first;
    return it->second;
  };
  for (const auto& b : blocks) {
    if (b.is_singleton()) continue;
    const auto& u = spec.payoff.table.at(eval(h, b.lo));
    const Enclosure& a = exp_at(b.lo.value());
    const Enclosure& c = exp_at(b.hi.value());
    Rational dlo = a.lo - c.hi;
    Rational dhi = a.hi - c.lo;
    for (std::size_t i = 0; i < n; ++i) {
      Rational k = u[i] / rho;
      out.values[i].lo += k >= 0 ? k * dlo : k * dhi;
      out.values[i].hi += k >= 0 ? k * dhi : k * dlo;
    }
  }
  return out;
}

Json interval_to_json(const Interval& i) {
  return {{"lo", i.lo.str()}, {"hi", i.hi.str()}, {"lo_closed", i.lo_closed}, {"hi_closed", i.hi_closed}};
}

Interval interval_from_json(const Json& j, const std::string& path) {
  Interval out;
  out.lo = TimePoint(get_rational(field(j, "lo", path), path + ".lo"));
  out.hi = TimePoint(get_rational(field(j, "hi", path), path + ".hi"));
  out.lo_closed = j.contains("lo_closed") ? get_bool(j["lo_closed"], path + ".lo_closed") : true;
  out.hi_closed = j.contains("hi_closed") ? get_bool(j["hi_closed"], path + ".hi_closed") : true;
  return out;
}

namespace {

Json history_json(const PiecewiseHistory& h, const GameSpec* spec) {
  Json j = Json::object();
  for (PlayerId i = 0; i < h.players(); ++i) {
    Json pieces = Json::array();
    for (const auto& p : h.track(i)) {
      Json piece = interval_to_json(p.span);
      if (spec) {
        piece["action"] = spec->players[i].actions[p.action];
      } else {
        piece["action"] = p.action;
      }
      pieces.push_back(std::move(piece));
    }
    j[spec ? spec->players[i].id : "p" + std::to_string(i)] = std::move(pieces);
  }
  return j;
}

Json witness_json(const Witness& w, const GameSpec* spec) {
  Json j;
  j["times"] = Json::array();
  for (const auto& t : w.times) j["times"].push_back(t.str());
  j["actions"] = w.actions;
  j["blocks"] = Json::array();
  for (const auto& b : w.blocks) j["blocks"].push_back(interval_to_json(b));
  j["histories"] = Json::array();
  for (const auto& h : w.histories) j["histories"].push_back(history_json(h, spec));
  j["note"] = w.note;
  return j;
}

}  // namespace

Json history_to_json(const PiecewiseHistory& h, const GameSpec& spec) { return history_json(h, &spec); }

PiecewiseHistory history_from_json(const Json& j, const GameSpec& spec) {
  if (!j.is_object()) schema("$", "expected an object keyed by player id");
  for (const auto& [key, value] : j.items()) spec.player_index(key);
  std::vector<Track> tracks;
  for (PlayerId i = 0; i < spec.players.size(); ++i) {
    const std::string& id = spec.players[i].id;
    const Json& pieces = field(j, id.c_str(), "$");
    if (!pieces.is_array()) schema(id, "expected an array of pieces");
    Track track;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      std::string path = id + "[" + std::to_string(k) + "]";
      Interval span = interval_from_json(pieces[k], path);
      track.push_back({span, own_action(spec, i, field(pieces[k], "action", path), path + ".action")});
    }
    tracks.push_back(std::move(track));
  }
  return PiecewiseHistory(spec.domain, std::move(tracks));
}

std::string history_to_csv(const PiecewiseHistory& h, const GameSpec& spec) {
  std::ostringstream out;
  out << "player,lo,hi,lo_closed,hi_closed,action\n";
  for (PlayerId i = 0; i < h.players(); ++i) {
    for (const auto& p : h.track(i)) {
      out << spec.players[i].id << ',' << p.span.lo << ',' << p.span.hi << ',' << (p.span.lo_closed ? "true" : "false")
          << ',' << (p.span.hi_closed ? "true" : "false") << ',' << spec.players[i].actions[p.action] << '\n';
    }
  }
  return out.str();
}

Json partition_to_json(const OrderedPartition& p) {
  Json j;
  j["domain"] = domain_to_json(p.domain());
  j["start"] = p.start().str();
  j["blocks"] = Json::array();
  for (const auto& b : p.blocks()) j["blocks"].push_back(interval_to_json(b));
  return j;
}

OrderedPartition partition_from_json(const Json& j) {
  TimeDomain d = domain_from_json(field(j, "domain", "$"), "domain");
  TimePoint start = j.contains("start") ? TimePoint(get_rational(j["start"], "start")) : d.min();
  const Json& blocks = field(j, "blocks", "$");
  if (!blocks.is_array()) schema("blocks", "expected an array");
  std::vector<Block> out;
  for (std::size_t k = 0; k < blocks.size(); ++k) out.push_back(interval_from_json(blocks[k], "blocks[" + std::to_string(k) + "]"));
  return OrderedPartition(d, start, std::move(out));
}

Json report_to_json(const AxiomReport& r, const GameSpec* spec) {
  Json j;
  j["axiom"] = r.axiom;
  if (spec) {
    j["player"] = spec->players.at(r.player).id;
  } else {
    j["player"] = r.player;
  }
  j["verdict"] = to_string(r.verdict);
  j["method"] = to_string(r.method);
  j["detail"] = r.detail;
  j["cases"] = r.cases;
  j["witness"] = r.witness ? witness_json(*r.witness, spec) : Json();
  return j;
}

Json consistency_to_json(const ConsistencyReport& r) {
  Json j;
  j["target"] = Json::array();
  for (const auto& piece : r.target.pieces()) j["target"].push_back(interval_to_json(piece));
  j["verdict"] = to_string(r.verdict);
  j["method"] = to_string(r.method);
  j["first_violation"] = r.first_violation ? Json(r.first_violation->str()) : Json();
  j["player"] = r.player ? Json(*r.player) : Json();
  if (r.first_violation) {
    j["expected"] = r.expected;
    j["actual"] = r.actual;
  }
  j["queries"] = r.queries;
  return j;
}

Json solve_to_json(const SolveResult& r, const GameSpec& spec) {
  Json j;
  j["outcome"] = to_string(r.outcome);
  j["certified"] = r.certified;
  j["diagnosis"] = r.diagnosis;
  j["events_consumed"] = r.events_consumed;
  if (r.accumulation_point) {
    j["accumulation_point"] = {{"value", r.accumulation_point->str()}, {"exact", r.accumulation_exact}};
  }
  j["events"] = Json::array();
  for (const auto& e : r.events) {
    Json ev;
    ev["time"] = e.time.str();
    ev["instant"] = e.instant;
    ev["terminal"] = e.terminal;
    ev["actions"] = Json::array();
    for (PlayerId i = 0; i < e.actions.size(); ++i) ev["actions"].push_back(spec.players[i].actions[e.actions[i]]);
    ev["holds"] = Json::array();
    for (const auto& h : e.holds) ev["holds"].push_back(h ? Json(h->str()) : Json());
    j["events"].push_back(std::move(ev));
  }
  j["history"] = r.history ? history_to_json(*r.history, spec) : Json();
  return j;
}

Json payoff_to_json(const PayoffVector& v, const GameSpec& spec) {
  Json j;
  j["exact"] = v.exact;
  j["values"] = Json::array();
  for (PlayerId i = 0; i < v.values.size(); ++i) {
    const auto& e = v.values[i];
    Json p;
    p["player"] = spec.players[i].id;
    if (v.exact) {
      p["value"] = format_rational(e.lo);
    } else {
      p["lo"] = format_rational(e.lo);
      p["hi"] = format_rational(e.hi);
      p["width"] = static_cast<double>(to_long_double(e.width()));
    }
    p["approx"] = static_cast<double>(to_long_double((e.lo + e.hi) / 2));
    j["values"].push_back(std::move(p));
  }
  return j;
}

}  // namespace totime
