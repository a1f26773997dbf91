#pragma once

// Instance generators shared by the unit tests and the acceptance run.

#include <functional>
#include <random>
#include <vector>

#include "totime/strategies.hpp"

namespace fixture {

using namespace totime;

using Rows = std::vector<std::vector<ActionIndex>>;

/// Table strategy from a rule over (time, earlier rows).
inline StrategyPtr table_from(const GameFrame& f, PlayerId i, const std::function<ActionIndex(std::size_t, const Rows&)>& rule) {
  ChainTable table;
  std::size_t m = f.players();
  for (std::size_t t = 0; t < f.domain.size(); ++t) {
    std::uint64_t count = chain_prefix_count(f.alphabet_sizes, t);
    std::vector<ActionIndex> row(count);
    for (std::uint64_t c = 0; c < count; ++c) {
      auto flat = chain_prefix_decode(f.alphabet_sizes, t, c);
      Rows rows(t);
      for (std::size_t r = 0; r < t; ++r) rows[r].assign(flat.begin() + r * m, flat.begin() + (r + 1) * m);
      row[c] = rule(t, rows);
    }
    table.entries.push_back(std::move(row));
  }
  return make_table(f, i, std::move(table));
}

struct ChainGame {
  GameFrame frame;
  Profile profile;
};

/// |N| <= 3, |T| <= 4, |A_i| <= 3 with seeded random tables.
inline ChainGame random_chain_game(std::mt19937_64& rng) {
  std::size_t players = 1 + rng() % 3, size = 1 + rng() % 4;
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < players; ++i) sizes.push_back(1 + rng() % 3);
  GameFrame f{TimeDomain::chain(size), sizes};
  Profile p;
  for (PlayerId i = 0; i < players; ++i) p.push_back(make_table(f, i, random_chain_table(f, i, rng())));
  return {f, p};
}

inline Rows random_rows(std::size_t count, const GameFrame& f, std::mt19937_64& rng) {
  Rows rows(count);
  for (auto& r : rows)
    for (std::size_t a : f.alphabet_sizes) r.push_back(rng() % a);
  return rows;
}

}  // namespace fixture
