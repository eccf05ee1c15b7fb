#include "thmc/enumerate.hpp"

#include <algorithm>
#include <set>

namespace thmc {

namespace {

class Collector {
 public:
  void add(std::optional<Move> m) {
    if (m) unique_.insert(m->canonical());
  }
  std::vector<Move> take() { return {unique_.begin(), unique_.end()}; }

 private:
  std::set<Move> unique_;
};

std::vector<Path> all_paths(int T) {
  std::vector<Path> out;
  for (std::uint64_t c = 0; c < path_count(T); ++c) out.push_back(Path::decode(c, T));
  return out;
}

}  // namespace

std::vector<Move> enumerate_family(int length, Family family, int cap) {
  check_path_length(length);
  if (length > cap) {
    throw InvalidArgument("move enumeration T=" + std::to_string(length) + " above cap " +
                          std::to_string(cap));
  }
  const int T = length;
  const std::vector<Path> paths = all_paths(T);
  Collector out;
  switch (family) {
    case Family::TypeIDegreeOne:
      for (const Path& p : paths) {
        for (int t0 = 1; t0 <= T; ++t0) {
          for (int t1 = t0 + 1; t1 <= T; ++t1) {
            for (int t2 = t1 + 1; t2 <= T; ++t2) out.add(detail::try_type1(p, t0, t1, t2, nullptr));
          }
        }
      }
      break;
    case Family::CrossingSwap:
      for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t k = i + 1; k < paths.size(); ++k) {
          for (int t = 1; t <= T; ++t) out.add(detail::try_crossing(paths[i], paths[k], t, nullptr));
        }
      }
      break;
    case Family::TwoByTwoSwap:
      for (const SwapPattern pattern : {SwapPattern::A, SwapPattern::B}) {
        for (int t0 = 1; t0 <= T - 1; ++t0) {
          for (int t1 = t0 + 1; t1 <= T - 1; ++t1) {
            for (const Path& a : paths) {
              for (const Path& b : paths) {
                out.add(detail::try_two_by_two(pattern, t0, t1, a, b, nullptr));
              }
            }
          }
        }
      }
      break;
    case Family::TypeIV:
      for (int t0 = 1; t0 <= T - 2; ++t0) {
        for (int t1 = 1; t1 <= T - 2; ++t1) {
          if (t0 == t1) continue;
          for (const Path& a : paths) {
            for (const Path& b : paths) out.add(detail::try_type4(t0, t1, a, b, nullptr));
          }
        }
      }
      break;
    case Family::TypeIIDegreeOne:
      for (const Path& p : paths) {
        for (int t = 2; t < T; ++t) out.add(detail::try_type2(p, t, nullptr));
      }
      break;
    case Family::Deg3Sliding:
      for (int a = 1; a <= T - 1; ++a) {
        for (int b = a; a + b <= T - 1; ++b) {
          for (int u = b; u <= T - 1 - a; ++u) {
            for (const bool swap : {false, true}) {
              for (const bool rev : {false, true}) {
                out.add(detail::try_sliding(T, a, b, u, swap, rev, nullptr));
              }
            }
          }
        }
      }
      break;
  }
  return out.take();
}

std::vector<Move> enumerate_moves(int length, std::span<const Family> families, int cap) {
  std::set<Move> seen;
  std::vector<Move> out;
  for (const Family f : families) {
    for (Move& m : enumerate_family(length, f, cap)) {
      if (seen.insert(m).second) out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace thmc
