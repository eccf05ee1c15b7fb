#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thmc/error.hpp"
#include "thmc/path_table.hpp"
#include "thmc/stats.hpp"

namespace thmc {

/// The six move families of the Markov basis. The first four preserve
/// initial-state frequencies; the last two shift them by one path.
enum class Family : std::uint8_t {
  TypeIDegreeOne,
  CrossingSwap,
  TwoByTwoSwap,
  TypeIV,
  TypeIIDegreeOne,
  Deg3Sliding,
};

inline constexpr std::array<Family, 6> kAllFamilies{
    Family::TypeIDegreeOne, Family::CrossingSwap,    Family::TwoByTwoSwap,
    Family::TypeIV,         Family::TypeIIDegreeOne, Family::Deg3Sliding,
};

/// The four families that fix initial frequencies; they form the basis of the
/// model with initial parameters.
inline constexpr std::array<Family, 4> kInitialPreservingFamilies{
    Family::TypeIDegreeOne, Family::CrossingSwap, Family::TwoByTwoSwap, Family::TypeIV};

inline constexpr std::size_t family_index(Family f) noexcept { return static_cast<std::size_t>(f); }

/// CLI names: type1, crossing, 2x2, type4, type2, deg3-sliding.
std::string_view family_name(Family f) noexcept;
/// Throws InvalidArgument for unknown names.
Family parse_family(std::string_view name);
/// Comma-separated list of family names.
std::vector<Family> parse_family_list(std::string_view names);
std::string family_list_name(std::span<const Family> families);
bool preserves_initial(Family f) noexcept;

/// A nonzero integer table z with A z = 0.
class Move {
 public:
  using Entry = PathTable::Entry;

  /// Accumulates repeated paths and drops cancelled ones. Throws
  /// InvalidArgument for the zero move or an unbalanced delta.
  Move(int length, Family family, std::span<const Entry> deltas);

  int length() const noexcept { return length_; }
  Family family() const noexcept { return family_; }
  std::span<const Entry> deltas() const noexcept { return deltas_; }
  Count delta(const Path& path) const noexcept;
  /// Sum of the positive entries (equal to the sum of |negative entries|).
  Count degree() const noexcept { return degree_; }

  PathTable positive_part() const;
  PathTable negative_part() const;

  Move negated() const;
  Move state_swapped() const;
  Move time_reversed() const;
  /// Sign chosen so that the smallest path in the support has a positive delta.
  Move canonical() const;

  /// "+1 1121  -1 1211"
  std::string str() const;

  /// Moves compare by their deltas only; the family tag is metadata.
  friend bool operator==(const Move& a, const Move& b) noexcept {
    return a.length_ == b.length_ && a.deltas_ == b.deltas_;
  }
  friend auto operator<=>(const Move& a, const Move& b) noexcept {
    if (auto c = a.length_ <=> b.length_; c != 0) return c;
    return a.deltas_ <=> b.deltas_;
  }

 private:
  struct Sorted {};
  Move(int length, Family family, std::vector<Entry> deltas, Sorted);

  int length_;
  Family family_;
  std::vector<Entry> deltas_;  // sorted by path, all nonzero
  Count degree_ = 0;
};

/// z^t_{ij} for t = 1..T-1.
struct MoveGraph {
  int length = 0;
  /// steps[t - 1] = {z^t_11, z^t_12, z^t_21, z^t_22}
  std::vector<std::array<Count, 4>> steps;

  Count at(int t, int from, int to) const;
  bool has_no_edge() const noexcept;
  /// Per-(i, j) sum over t; the zero vector for any valid move.
  std::array<Count, 4> totals() const noexcept;
};

MoveGraph move_graph(const Move& move);

/// A z = 0 checked in exact integers.
bool preserves_transitions(const Move& move);
/// initial_freq(z+) - initial_freq(z-) as a signed pair.
std::array<Count, 2> initial_shift(const Move& move);

// ---------------------------------------------------------------------------
// Constructors. All throw InvalidArgument on precondition violations and on
// parameters that would produce the zero move. Times are 1-based.

/// Degree one move exchanging the two closed sub-walks s_{t0:t1} and s_{t1:t2}.
Move type1_deg1(const Path& path, int t0, int t1, int t2);

/// Swaps the suffixes after time t of two paths meeting at (s_t, t).
Move crossing_swap(const Path& first, const Path& second, int t);

/// Window states of the binary 2 by 2 swap. With A, `first` carries (1,1)
/// at (t0, t0+1) and (1,2) at (t1, t1+1) while `second` carries (2,2) and
/// (2,1); with B, `first` carries (1,1) and (2,1), `second` (2,2) and (1,2).
enum class SwapPattern { A, B };

/// Degree two move exchanging positions t0+1..t1 between the two paths.
Move two_by_two_swap(SwapPattern pattern, int t0, int t1, const Path& first, const Path& second);

/// `first` carries (i,i,j) at t0..t0+2 and `second` carries (i,j,j) at
/// t1..t1+2 for the same i; the windows are exchanged. With i = 1 this is
/// the (1,1,2)/(1,2,2) form, with i = 2 its state-swapped (2,2,1)/(2,1,1)
/// form, which also equals the time reflection of the i = 1 form.
Move type4_move(int t0, int t1, const Path& first, const Path& second);

/// The cycle `path` (s_1 = s_T = i, s_t = j != i) against its rotation
/// (s_t, ..., s_{T-1}, s_1, ..., s_t), which starts at j.
Move type2_deg1(const Path& path, int t);

/// Sliding move {flat-1, 1^a 2^{T-a}, 1^b 2^{T-b}} - {flat-2, 1^{a'} 2^{T-a'},
/// 1^{b'} 2^{T-b'}} with a' = a + u, b' = b + T - 1 - u. Requires
/// 1 <= a <= b, a + b <= T - 1 and b <= u <= T - 1 - a. The flags apply the
/// global state swap and the time reversal to every path.
Move deg3_sliding(int length, int a, int b, int u, bool state_swap = false,
                  bool time_reverse = false);

// ---------------------------------------------------------------------------

/// Applying a move would make a cell negative.
class NegativityViolation : public Error {
 public:
  explicit NegativityViolation(const Path& path)
      : Error("move makes the count of path " + path.str() + " negative"), path_(path) {}
  const Path& path() const noexcept { return path_; }

 private:
  Path path_;
};

/// table + sign * move. Throws NegativityViolation naming the first path
/// (in canonical order) whose count would become negative.
PathTable apply(const PathTable& table, const Move& move, int sign);
bool can_apply(const PathTable& table, const Move& move, int sign) noexcept;

namespace detail {

// Non-throwing builders shared by the constructors, the enumerators and the
// proposal sampler. On failure they return nullopt and, if `why` is
// non-null, store the reason.
std::optional<Move> try_type1(const Path& path, int t0, int t1, int t2, std::string* why);
std::optional<Move> try_crossing(const Path& first, const Path& second, int t, std::string* why);
std::optional<Move> try_two_by_two(SwapPattern pattern, int t0, int t1, const Path& first,
                                   const Path& second, std::string* why);
std::optional<Move> try_type4(int t0, int t1, const Path& first, const Path& second,
                              std::string* why);
std::optional<Move> try_type2(const Path& path, int t, std::string* why);
std::optional<Move> try_sliding(int length, int a, int b, int u, bool state_swap,
                                bool time_reverse, std::string* why);

}  // namespace detail

}  // namespace thmc
