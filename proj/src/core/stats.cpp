#include "thmc/stats.hpp"

#include <charconv>

#include "thmc/error.hpp"

namespace thmc {

Count TransitionStat::at(int from, int to) const noexcept {
  if (from == 1) return to == 1 ? b11 : b12;
  return to == 1 ? b21 : b22;
}

Count TransitionStat::total() const {
  return checked_add(checked_add(b11, b12), checked_add(b21, b22));
}

std::string TransitionStat::str() const {
  return std::to_string(b11) + "," + std::to_string(b12) + "," + std::to_string(b21) + "," +
         std::to_string(b22);
}

TransitionStat transitions(const Path& path) noexcept {
  std::array<Count, 4> b{};
  for (int t = 1; t < path.length(); ++t) {
    ++b[static_cast<std::size_t>(2 * (path.state(t) - 1) + (path.state(t + 1) - 1))];
  }
  return {b[0], b[1], b[2], b[3]};
}

TransitionStat suff_stat(const PathTable& table) {
  TransitionStat b;
  for (const auto& [path, c] : table) {
    const TransitionStat t = transitions(path);
    b.b11 = checked_add(b.b11, checked_mul(c, t.b11));
    b.b12 = checked_add(b.b12, checked_mul(c, t.b12));
    b.b21 = checked_add(b.b21, checked_mul(c, t.b21));
    b.b22 = checked_add(b.b22, checked_mul(c, t.b22));
  }
  return b;
}

InitialFreq initial_freq(const PathTable& table) {
  InitialFreq f;
  for (const auto& [path, c] : table) {
    if (path.first() == 1) {
      f.state1 = checked_add(f.state1, c);
    } else {
      f.state2 = checked_add(f.state2, c);
    }
  }
  return f;
}

ExtendedStat extended_stat(const PathTable& table) {
  return {suff_stat(table), initial_freq(table)};
}

TransitionStat parse_transition_stat(std::string_view text) {
  std::array<Count, 4> v{};
  std::size_t field = 0;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view token = text.substr(0, comma);
    if (field >= v.size()) throw InvalidArgument("expected four comma-separated integers");
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v[field]);
    if (ec != std::errc{} || ptr != token.data() + token.size() || v[field] < 0) {
      throw InvalidArgument("invalid transition count \"" + std::string(token) + "\"");
    }
    ++field;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (field != v.size()) throw InvalidArgument("expected four comma-separated integers");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace thmc
