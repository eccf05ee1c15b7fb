#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace thmc {

inline constexpr int kMinPathLength = 3;
inline constexpr int kMaxPathLength = 62;

/// A length-T sequence over the two states {1, 2}.
///
/// Paths are stored as their index in the canonical order: the path is read
/// as a T-digit binary numeral with state 1 as digit 0 and state 2 as digit 1,
/// most significant digit at t = 1. The all-ones path therefore has index 0,
/// and increasing index is lexicographic order on the state sequence.
class Path {
 public:
  /// Inverse of encode(). Throws InvalidArgument unless 0 <= index < 2^T.
  static Path decode(std::uint64_t index, int length);
  static Path from_states(std::span<const int> states);
  /// Parses a digit string such as "1121".
  static Path parse(std::string_view digits);
  static Path flat(int length, int state);
  /// s_1 = ... = s_t = from, s_{t+1} = ... = s_T = the other state.
  static Path single_step(int length, int from, int at);

  std::uint64_t encode() const noexcept { return code_; }
  int length() const noexcept { return length_; }

  /// State at time t, 1-based.
  int state(int t) const noexcept {
    return 1 + static_cast<int>((code_ >> (length_ - t)) & 1U);
  }
  int first() const noexcept { return state(1); }
  int last() const noexcept { return state(length_); }

  std::vector<int> states() const;
  /// The sub-sequence s_from .. s_to (inclusive, 1-based); empty if from > to.
  std::vector<int> segment(int from, int to) const;
  std::string str() const;

  bool is_flat() const noexcept;
  Path with_state(int t, int state) const;
  /// Global relabeling 1 <-> 2.
  Path swapped() const noexcept;
  /// Time reversal (s_T, ..., s_1).
  Path reversed() const noexcept;

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;

 private:
  Path(int length, std::uint64_t code) noexcept : length_(length), code_(code) {}

  int length_ = kMinPathLength;
  std::uint64_t code_ = 0;
};

/// Throws InvalidArgument unless kMinPathLength <= T <= kMaxPathLength.
void check_path_length(int length);

/// Number of paths of length T, i.e. 2^T.
std::uint64_t path_count(int length);

}  // namespace thmc

template <>
struct std::hash<thmc::Path> {
  std::size_t operator()(const thmc::Path& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.encode() * 64U + static_cast<std::uint64_t>(p.length()));
  }
};
