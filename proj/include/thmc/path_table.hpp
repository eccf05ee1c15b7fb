#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thmc/path.hpp"

namespace thmc {

using Count = std::int64_t;

/// Largest T for which dense 2^T vectors are materialized.
inline constexpr int kDenseLengthCap = 24;

/// Overflow-checked arithmetic on counts; throws OverflowError.
Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);

/// Sparse frequency table over {1,2}^T.
///
/// Entries are kept sorted by path index and only positive counts are
/// stored. A PathTable never changes after construction.
class PathTable {
 public:
  using Entry = std::pair<Path, Count>;

  explicit PathTable(int length);
  /// Accumulates duplicate paths; zero counts are dropped. Throws
  /// InvalidArgument on negative counts or paths of the wrong length.
  PathTable(int length, std::span<const Entry> entries);
  PathTable(int length, std::initializer_list<Entry> entries);

  /// Convenience for tests and bindings: {"111", 1}, {"122", 2}.
  static PathTable from_strings(std::initializer_list<std::pair<std::string_view, Count>> entries);
  /// Dense vector indexed by Path::encode(); requires T <= kDenseLengthCap.
  static PathTable from_dense(int length, std::span<const Count> counts);

  int length() const noexcept { return length_; }
  Count total() const noexcept { return total_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t support_size() const noexcept { return entries_.size(); }

  Count count(const Path& path) const noexcept;
  std::span<const Entry> entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  std::vector<Count> dense() const;
  /// Global relabeling 1 <-> 2 of every path.
  PathTable swapped() const;
  /// "111:1 122:2"
  std::string str() const;

  friend bool operator==(const PathTable&, const PathTable&) = default;
  friend auto operator<=>(const PathTable& a, const PathTable& b) {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.entries_ <=> b.entries_;
  }

 private:
  struct Sorted {};
  PathTable(int length, std::vector<Entry> sorted_entries, Sorted);

  friend PathTable add_scaled(const PathTable&, std::span<const Entry>, Count);

  int length_;
  std::vector<Entry> entries_;
  Count total_ = 0;
};

/// table + scale * deltas, where deltas is sorted by path and every result
/// count is known to be nonnegative. Throws InvalidArgument otherwise.
PathTable add_scaled(const PathTable& table, std::span<const PathTable::Entry> deltas, Count scale);

struct PathTableHash {
  std::size_t operator()(const PathTable& table) const noexcept;
};

}  // namespace thmc
