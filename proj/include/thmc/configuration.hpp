#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thmc/path_table.hpp"

namespace thmc {

enum class Variant { WithoutInitial, WithInitial };

std::string_view variant_name(Variant v) noexcept;

/// A row of the configuration matrix: a transition (i -> j) or, for the
/// WithInitial variant, an initial-state indicator s_1 = i.
struct ConfigurationRow {
  enum class Kind { Transition, Initial };
  Kind kind;
  int from;
  int to;  // unused for Initial rows

  std::string name() const;  // "b12", "init1"
};

/// Integer matrix A with one column per path in {1,2}^T, columns in
/// Path::encode() order. WithoutInitial has the four transition rows
/// (11, 12, 21, 22); WithInitial appends init1 and init2.
class Configuration {
 public:
  /// Throws InvalidArgument for T < 3 or T above kDenseLengthCap.
  Configuration(int length, Variant variant);

  int length() const noexcept { return length_; }
  Variant variant() const noexcept { return variant_; }
  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  std::uint64_t columns() const noexcept { return columns_; }
  const std::vector<ConfigurationRow>& row_labels() const noexcept { return rows_; }

  std::span<const int> column(std::uint64_t index) const noexcept {
    return {entries_.data() + index * rows_.size(), rows_.size()};
  }
  int entry(int row, std::uint64_t col) const noexcept {
    return entries_[col * rows_.size() + static_cast<std::size_t>(row)];
  }

  /// A * x for a table of matching length.
  std::vector<Count> apply(const PathTable& table) const;
  /// Numerical rank; singular values at or below tol * sigma_max are zero.
  int rank(double tolerance = 1e-9) const;

 private:
  int length_;
  Variant variant_;
  std::uint64_t columns_;
  std::vector<ConfigurationRow> rows_;
  std::vector<int> entries_;  // column-major
};

inline Configuration configuration(int length, Variant variant) {
  return Configuration(length, variant);
}

}  // namespace thmc
