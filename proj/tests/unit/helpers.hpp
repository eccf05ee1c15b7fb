#pragma once

#include <random>
#include <set>

#include "oracles.hpp"
#include "thmc/moves.hpp"
#include "thmc/path_table.hpp"
#include "thmc/stats.hpp"

namespace testing {

inline thmc::PathTable to_table(int T, const oracle::Table& t) {
  std::vector<thmc::PathTable::Entry> e;
  for (const auto& [p, c] : t) e.emplace_back(thmc::Path::parse(p), c);
  return thmc::PathTable(T, e);
}

inline oracle::Table to_oracle(const thmc::PathTable& t) {
  oracle::Table out;
  for (const auto& [p, c] : t) out[p.str()] = c;
  return out;
}

inline oracle::Delta to_delta(const thmc::Move& m) {
  oracle::Delta d;
  for (const auto& [p, c] : m.deltas()) d[p.str()] = c;
  return d;
}

inline std::array<std::int64_t, 4> arr(const thmc::TransitionStat& b) { return b.as_array(); }

inline thmc::PathTable klotz() { return to_table(4, oracle::klotz()); }

/// Table with independent uniform counts in [0, max_count] per cell; never empty.
inline thmc::PathTable random_table(int T, int max_count, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, max_count);
  std::vector<thmc::Count> dense(std::size_t{1} << T);
  do {
    for (auto& c : dense) c = d(rng);
  } while (std::all_of(dense.begin(), dense.end(), [](auto c) { return c == 0; }));
  return thmc::PathTable::from_dense(T, dense);
}

inline std::set<oracle::Delta> delta_set(const std::vector<thmc::Move>& moves) {
  std::set<oracle::Delta> s;
  for (const auto& m : moves) s.insert(oracle::canonical(to_delta(m)));
  return s;
}

}  // namespace testing
