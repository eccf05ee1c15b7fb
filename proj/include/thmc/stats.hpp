#pragma once

#include <array>
#include <compare>
#include <string>

#include "thmc/path_table.hpp"

namespace thmc {

/// Transition counts b = (b11, b12, b21, b22) summed over t = 1..T-1.
struct TransitionStat {
  Count b11 = 0;
  Count b12 = 0;
  Count b21 = 0;
  Count b22 = 0;

  /// i, j in {1, 2}.
  Count at(int from, int to) const noexcept;
  Count total() const;
  std::array<Count, 4> as_array() const noexcept { return {b11, b12, b21, b22}; }
  /// Relabeling 1 <-> 2: b11 <-> b22, b12 <-> b21.
  TransitionStat swapped() const noexcept { return {b22, b21, b12, b11}; }
  /// "2,2,0,2"
  std::string str() const;

  friend auto operator<=>(const TransitionStat&, const TransitionStat&) = default;
  friend bool operator==(const TransitionStat&, const TransitionStat&) = default;
};

/// Initial-state frequencies (x^1_1, x^1_2).
struct InitialFreq {
  Count state1 = 0;
  Count state2 = 0;

  friend auto operator<=>(const InitialFreq&, const InitialFreq&) = default;
  friend bool operator==(const InitialFreq&, const InitialFreq&) = default;
};

/// Sufficient statistic of the model with initial-state parameters.
struct ExtendedStat {
  TransitionStat base;
  InitialFreq initial;

  friend auto operator<=>(const ExtendedStat&, const ExtendedStat&) = default;
  friend bool operator==(const ExtendedStat&, const ExtendedStat&) = default;
};

TransitionStat transitions(const Path& path) noexcept;
TransitionStat suff_stat(const PathTable& table);
InitialFreq initial_freq(const PathTable& table);
ExtendedStat extended_stat(const PathTable& table);

/// Parses "b11,b12,b21,b22".
TransitionStat parse_transition_stat(std::string_view text);

}  // namespace thmc
