#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "thmc/moves.hpp"
#include "thmc/stats.hpp"

namespace thmc {

struct FiberBudget {
  std::uint64_t max_elements = 1'000'000;
  std::uint64_t max_nodes = 100'000'000;
};

/// All nonnegative integer tables x with A x = b, sorted canonically.
struct Fiber {
  int length = 0;
  TransitionStat b;
  std::vector<PathTable> elements;
};

/// Depth-first search over path cells in index order. A partial assignment is
/// cut when a remaining transition budget goes negative or cannot be met by
/// the remaining paths: each remaining path uses between the smallest and the
/// largest per-path count of that transition among the cells still open.
/// Throws BudgetExceeded with the number of tables found so far.
Fiber enumerate_fiber(int length, const TransitionStat& b, const FiberBudget& budget = {});

/// A fixed list of moves together with an index on their required support,
/// so that the moves applicable to a table are found without a full scan.
class MoveSet {
 public:
  /// Enumerates every move of the given families. Requires T <= 6.
  static MoveSet from_families(int length, std::span<const Family> families);
  static MoveSet from_moves(int length, std::vector<Move> moves, std::string description);

  int length() const noexcept { return length_; }
  const std::string& description() const noexcept { return description_; }
  const std::vector<Move>& moves() const noexcept { return moves_; }

  /// Calls visit(move, sign) for every signed move whose negative part fits
  /// inside `table`.
  void for_each_applicable(const PathTable& table,
                           const std::function<void(const Move&, int)>& visit) const;

 private:
  MoveSet(int length, std::vector<Move> moves, std::string description);

  struct Signed {
    std::uint32_t move;
    int sign;
  };

  int length_;
  std::string description_;
  std::vector<Move> moves_;
  // Bitmask of the paths a signed move removes -> signed moves.
  std::unordered_map<std::uint64_t, std::vector<Signed>> by_support_;
};

struct ConnectivityReport {
  std::size_t component_count = 0;
  /// Sizes in order of each component's smallest element.
  std::vector<std::size_t> component_sizes;
  /// component_of[k] for fiber element k.
  std::vector<std::size_t> component_of;
  /// Smallest element of each component; filled only when there are several.
  std::vector<PathTable> representatives;
  std::string move_set;
};

ConnectivityReport connectivity(const Fiber& fiber, const MoveSet& moves);

struct FiberSummary {
  TransitionStat b;
  std::size_t fiber_size = 0;
  ConnectivityReport report;
  /// Number of distinct initial-frequency vectors in the fiber.
  std::size_t initial_classes = 0;
  /// Every component is exactly one initial-frequency class.
  bool components_match_initial_classes = false;
};

struct SweepResult {
  int length = 0;
  int n_max = 0;
  std::string move_set;
  std::vector<FiberSummary> fibers;  // ordered by b
  std::size_t disconnected = 0;

  std::size_t connected() const noexcept { return fibers.size() - disconnected; }
};

/// Every b realized by some table of total count 1..n_max.
std::vector<TransitionStat> realizable_stats(int length, int n_max);

/// Enumerates and checks every fiber with total count 1..n_max whose b passes
/// `keep` (all fibers when empty).
SweepResult sweep(int length, int n_max, const MoveSet& moves, const FiberBudget& budget = {},
                  const std::function<bool(const TransitionStat&)>& keep = {});

}  // namespace thmc
