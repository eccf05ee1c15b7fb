#pragma once

#include <span>
#include <vector>

#include "thmc/moves.hpp"

namespace thmc {

inline constexpr int kDefaultEnumerationCap = 6;

/// Every move of one family for paths of length T, found by sweeping the
/// family's constructor over its whole finite parameter space. Moves equal
/// up to global sign are listed once, in canonical form (smallest support
/// path positive), sorted. Throws InvalidArgument for T above `cap`.
std::vector<Move> enumerate_family(int length, Family family, int cap = kDefaultEnumerationCap);

/// Union of several families, deduplicated across families; a move that
/// belongs to more than one family keeps the tag of the first one listed.
std::vector<Move> enumerate_moves(int length, std::span<const Family> families,
                                  int cap = kDefaultEnumerationCap);

}  // namespace thmc
