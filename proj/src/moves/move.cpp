#include <algorithm>

#include "thmc/moves.hpp"

namespace thmc {

namespace {

constexpr std::array<std::string_view, 6> kFamilyNames{"type1", "crossing", "2x2",
                                                       "type4", "type2",    "deg3-sliding"};

std::vector<int> concat(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::optional<Move> fail(std::string* why, std::string reason) {
  if (why != nullptr) *why = std::move(reason);
  return std::nullopt;
}

// Builds the move +plus - minus, or nullopt when everything cancels.
std::optional<Move> make(int length, Family family, std::initializer_list<Path> plus,
                         std::initializer_list<Path> minus, std::string* why) {
  std::vector<Move::Entry> d;
  for (const Path& p : plus) d.emplace_back(p, 1);
  for (const Path& p : minus) d.emplace_back(p, -1);
  const bool all_cancel = [&] {
    std::vector<Move::Entry> s = d;
    std::sort(s.begin(), s.end());
    Count sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      sum += s[i].second;
      if (i + 1 == s.size() || !(s[i + 1].first == s[i].first)) {
        if (sum != 0) return false;
        sum = 0;
      }
    }
    return true;
  }();
  if (all_cancel) return fail(why, "parameters produce the zero move");
  return Move(length, family, d);
}

bool in_range(int t, int lo, int hi) { return t >= lo && t <= hi; }

}  // namespace

std::string_view family_name(Family f) noexcept { return kFamilyNames[family_index(f)]; }

Family parse_family(std::string_view name) {
  for (const Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  throw InvalidArgument("unknown move family \"" + std::string(name) +
                        "\" (expected type1, crossing, 2x2, type4, type2, deg3-sliding)");
}

std::vector<Family> parse_family_list(std::string_view names) {
  std::vector<Family> out;
  while (!names.empty()) {
    const auto comma = names.find(',');
    const Family f = parse_family(names.substr(0, comma));
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    if (comma == std::string_view::npos) break;
    names.remove_prefix(comma + 1);
  }
  if (out.empty()) throw InvalidArgument("empty family list");
  return out;
}

std::string family_list_name(std::span<const Family> families) {
  std::string out;
  for (const Family f : families) {
    if (!out.empty()) out.push_back(',');
    out += family_name(f);
  }
  return out;
}

bool preserves_initial(Family f) noexcept {
  return f != Family::TypeIIDegreeOne && f != Family::Deg3Sliding;
}

// ---------------------------------------------------------------------------

Move::Move(int length, Family family, std::span<const Entry> deltas)
    : length_(length), family_(family) {
  check_path_length(length);
  std::vector<Entry> sorted(deltas.begin(), deltas.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& [p, d] : sorted) {
    if (p.length() != length) throw InvalidArgument("move path has the wrong length");
    if (!deltas_.empty() && deltas_.back().first == p) {
      deltas_.back().second = checked_add(deltas_.back().second, d);
      if (deltas_.back().second == 0) deltas_.pop_back();
    } else if (d != 0) {
      deltas_.emplace_back(p, d);
    }
  }
  if (deltas_.empty()) throw InvalidArgument("zero move");
  Count pos = 0;
  Count neg = 0;
  for (const auto& [p, d] : deltas_) (d > 0 ? pos : neg) += (d > 0 ? d : -d);
  if (pos != neg) throw InvalidArgument("move has unequal positive and negative parts");
  degree_ = pos;
}

Move::Move(int length, Family family, std::vector<Entry> deltas, Sorted)
    : length_(length), family_(family), deltas_(std::move(deltas)) {
  for (const auto& e : deltas_) {
    if (e.second > 0) degree_ += e.second;
  }
}

Count Move::delta(const Path& path) const noexcept {
  const auto it = std::lower_bound(deltas_.begin(), deltas_.end(), path,
                                   [](const Entry& e, const Path& p) { return e.first < p; });
  return (it != deltas_.end() && it->first == path) ? it->second : 0;
}

PathTable Move::positive_part() const {
  std::vector<Entry> out;
  for (const auto& [p, d] : deltas_) {
    if (d > 0) out.emplace_back(p, d);
  }
  return PathTable(length_, out);
}

PathTable Move::negative_part() const {
  std::vector<Entry> out;
  for (const auto& [p, d] : deltas_) {
    if (d < 0) out.emplace_back(p, -d);
  }
  return PathTable(length_, out);
}

Move Move::negated() const {
  std::vector<Entry> out = deltas_;
  for (auto& e : out) e.second = -e.second;
  return Move(length_, family_, std::move(out), Sorted{});
}

Move Move::state_swapped() const {
  std::vector<Entry> out;
  for (const auto& [p, d] : deltas_) out.emplace_back(p.swapped(), d);
  return Move(length_, family_, out);
}

Move Move::time_reversed() const {
  std::vector<Entry> out;
  for (const auto& [p, d] : deltas_) out.emplace_back(p.reversed(), d);
  return Move(length_, family_, out);
}

Move Move::canonical() const { return deltas_.front().second > 0 ? *this : negated(); }

std::string Move::str() const {
  std::string out;
  for (const auto& [p, d] : deltas_) {
    if (!out.empty()) out += "  ";
    out += (d > 0 ? "+" : "") + std::to_string(d) + " " + p.str();
  }
  return out;
}

Count MoveGraph::at(int t, int from, int to) const {
  if (t < 1 || t >= length) throw InvalidArgument("move graph time out of range");
  return steps[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(2 * (from - 1) + to - 1)];
}

bool MoveGraph::has_no_edge() const noexcept {
  return std::all_of(steps.begin(), steps.end(), [](const auto& s) {
    return std::all_of(s.begin(), s.end(), [](Count v) { return v == 0; });
  });
}

std::array<Count, 4> MoveGraph::totals() const noexcept {
  std::array<Count, 4> out{};
  for (const auto& s : steps) {
    for (std::size_t k = 0; k < 4; ++k) out[k] += s[k];
  }
  return out;
}

MoveGraph move_graph(const Move& move) {
  MoveGraph g;
  g.length = move.length();
  g.steps.assign(static_cast<std::size_t>(move.length() - 1), {});
  for (const auto& [p, d] : move.deltas()) {
    for (int t = 1; t < p.length(); ++t) {
      auto& cell = g.steps[static_cast<std::size_t>(t - 1)]
                          [static_cast<std::size_t>(2 * (p.state(t) - 1) + p.state(t + 1) - 1)];
      cell = checked_add(cell, d);
    }
  }
  return g;
}

bool preserves_transitions(const Move& move) {
  return suff_stat(move.positive_part()) == suff_stat(move.negative_part());
}

std::array<Count, 2> initial_shift(const Move& move) {
  const InitialFreq plus = initial_freq(move.positive_part());
  const InitialFreq minus = initial_freq(move.negative_part());
  return {plus.state1 - minus.state1, plus.state2 - minus.state2};
}

// ---------------------------------------------------------------------------

namespace detail {

std::optional<Move> try_type1(const Path& path, int t0, int t1, int t2, std::string* why) {
  const int T = path.length();
  if (!(1 <= t0 && t0 < t1 && t1 < t2 && t2 <= T)) {
    return fail(why, "type1 requires 1 <= t0 < t1 < t2 <= T");
  }
  const int i = path.state(t0);
  if (path.state(t1) != i || path.state(t2) != i) {
    return fail(why, "type1 requires s_t0 = s_t1 = s_t2");
  }
  bool leaves = false;
  for (int t = t0 + 1; t < t2; ++t) leaves = leaves || path.state(t) != i;
  if (!leaves) return fail(why, "type1 requires a state j != s_t0 strictly between t0 and t2");
  const Path other = Path::from_states(concat({path.segment(1, t0 - 1), path.segment(t1, t2 - 1),
                                               path.segment(t0, t1), path.segment(t2 + 1, T)}));
  return make(T, Family::TypeIDegreeOne, {path}, {other}, why);
}

std::optional<Move> try_crossing(const Path& first, const Path& second, int t, std::string* why) {
  const int T = first.length();
  if (second.length() != T) return fail(why, "crossing paths differ in length");
  if (!in_range(t, 1, T)) return fail(why, "crossing time out of range");
  if (first.state(t) != second.state(t)) return fail(why, "paths do not meet at time t");
  const Path a = Path::from_states(concat({first.segment(1, t), second.segment(t + 1, T)}));
  const Path b = Path::from_states(concat({second.segment(1, t), first.segment(t + 1, T)}));
  return make(T, Family::CrossingSwap, {first, second}, {a, b}, why);
}

std::optional<Move> try_two_by_two(SwapPattern pattern, int t0, int t1, const Path& first,
                                   const Path& second, std::string* why) {
  const int T = first.length();
  if (second.length() != T) return fail(why, "2x2 paths differ in length");
  if (!(1 <= t0 && t0 < t1 && t1 <= T - 1)) return fail(why, "2x2 requires t0 < t1 <= T-1");
  // Required (state at t1, state at t1+1) for each path.
  const auto [f_lo, f_hi] = pattern == SwapPattern::A ? std::pair{1, 2} : std::pair{2, 1};
  const auto [s_lo, s_hi] = pattern == SwapPattern::A ? std::pair{2, 1} : std::pair{1, 2};
  const bool ok = first.state(t0) == 1 && first.state(t0 + 1) == 1 && first.state(t1) == f_lo &&
                  first.state(t1 + 1) == f_hi && second.state(t0) == 2 &&
                  second.state(t0 + 1) == 2 && second.state(t1) == s_lo &&
                  second.state(t1 + 1) == s_hi;
  if (!ok) return fail(why, "paths do not carry the 2x2 window states");
  const Path a = Path::from_states(
      concat({first.segment(1, t0), second.segment(t0 + 1, t1), first.segment(t1 + 1, T)}));
  const Path b = Path::from_states(
      concat({second.segment(1, t0), first.segment(t0 + 1, t1), second.segment(t1 + 1, T)}));
  return make(T, Family::TwoByTwoSwap, {first, second}, {a, b}, why);
}

std::optional<Move> try_type4(int t0, int t1, const Path& first, const Path& second,
                              std::string* why) {
  const int T = first.length();
  if (second.length() != T) return fail(why, "type4 paths differ in length");
  if (T < 4) return fail(why, "type4 requires T >= 4");
  if (t0 == t1) return fail(why, "type4 requires t0 != t1");
  if (!in_range(t0, 1, T - 2) || !in_range(t1, 1, T - 2)) {
    return fail(why, "type4 windows must fit: t0 + 2 <= T and t1 + 2 <= T");
  }
  const int i = first.state(t0);
  const int j = 3 - i;
  const bool ok = first.state(t0 + 1) == i && first.state(t0 + 2) == j && second.state(t1) == i &&
                  second.state(t1 + 1) == j && second.state(t1 + 2) == j;
  if (!ok) return fail(why, "paths do not carry the (i,i,j) / (i,j,j) windows");
  return make(T, Family::TypeIV, {first, second},
              {first.with_state(t0 + 1, j), second.with_state(t1 + 1, i)}, why);
}

std::optional<Move> try_type2(const Path& path, int t, std::string* why) {
  const int T = path.length();
  if (!(1 < t && t < T)) return fail(why, "type2 requires 1 < t < T");
  if (path.first() != path.last() || path.state(t) == path.first()) {
    return fail(why, "type2 requires a non-flat cycle with s_1 = s_T != s_t");
  }
  const Path rotated =
      Path::from_states(concat({path.segment(t, T - 1), path.segment(1, t)}));
  return make(T, Family::TypeIIDegreeOne, {path}, {rotated}, why);
}

std::optional<Move> try_sliding(int length, int a, int b, int u, bool state_swap,
                                bool time_reverse, std::string* why) {
  if (length < kMinPathLength || length > kMaxPathLength) return fail(why, "invalid T");
  const int T = length;
  if (!(1 <= a && a <= b && b <= T - 1)) return fail(why, "sliding requires 1 <= a <= b <= T-1");
  if (a + b > T - 1) return fail(why, "sliding requires a + b <= T-1");
  if (!(b <= u && u <= T - 1 - a)) return fail(why, "sliding requires b <= u <= T-1-a");
  const int a2 = a + u;
  const int b2 = b + T - 1 - u;
  auto shape = [&](Path p) {
    if (state_swap) p = p.swapped();
    if (time_reverse) p = p.reversed();
    return p;
  };
  return make(T, Family::Deg3Sliding,
              {shape(Path::flat(T, 1)), shape(Path::single_step(T, 1, a)),
               shape(Path::single_step(T, 1, b))},
              {shape(Path::flat(T, 2)), shape(Path::single_step(T, 1, a2)),
               shape(Path::single_step(T, 1, b2))},
              why);
}

}  // namespace detail

namespace {

Move unwrap(std::optional<Move> m, const std::string& why) {
  if (!m) throw InvalidArgument(why);
  return std::move(*m);
}

}  // namespace

Move type1_deg1(const Path& path, int t0, int t1, int t2) {
  std::string why;
  return unwrap(detail::try_type1(path, t0, t1, t2, &why), why);
}

Move crossing_swap(const Path& first, const Path& second, int t) {
  std::string why;
  return unwrap(detail::try_crossing(first, second, t, &why), why);
}

Move two_by_two_swap(SwapPattern pattern, int t0, int t1, const Path& first, const Path& second) {
  std::string why;
  return unwrap(detail::try_two_by_two(pattern, t0, t1, first, second, &why), why);
}

Move type4_move(int t0, int t1, const Path& first, const Path& second) {
  std::string why;
  return unwrap(detail::try_type4(t0, t1, first, second, &why), why);
}

Move type2_deg1(const Path& path, int t) {
  std::string why;
  return unwrap(detail::try_type2(path, t, &why), why);
}

Move deg3_sliding(int length, int a, int b, int u, bool state_swap, bool time_reverse) {
  std::string why;
  return unwrap(detail::try_sliding(length, a, b, u, state_swap, time_reverse, &why), why);
}

// ---------------------------------------------------------------------------

bool can_apply(const PathTable& table, const Move& move, int sign) noexcept {
  if (table.length() != move.length()) return false;
  for (const auto& [p, d] : move.deltas()) {
    if (table.count(p) + sign * d < 0) return false;
  }
  return true;
}

PathTable apply(const PathTable& table, const Move& move, int sign) {
  if (table.length() != move.length()) throw InvalidArgument("move and table differ in T");
  if (sign != 1 && sign != -1) throw InvalidArgument("sign must be +1 or -1");
  for (const auto& [p, d] : move.deltas()) {
    if (table.count(p) + sign * d < 0) throw NegativityViolation(p);
  }
  return add_scaled(table, move.deltas(), sign);
}

}  // namespace thmc
