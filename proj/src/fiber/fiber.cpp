#include "thmc/fiber.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "thmc/enumerate.hpp"

namespace thmc {

namespace {

using Vec4 = std::array<Count, 4>;

class FiberSearch {
 public:
  FiberSearch(int length, const TransitionStat& b, const FiberBudget& budget)
      : length_(length), budget_(budget), cells_(path_count(length)) {
    for (std::uint64_t c = 0; c < cells_.size(); ++c) {
      cells_[c] = transitions(Path::decode(c, length)).as_array();
    }
    suffix_min_.assign(cells_.size() + 1, Vec4{});
    suffix_max_.assign(cells_.size() + 1, Vec4{});
    suffix_min_.back().fill(std::numeric_limits<Count>::max());
    for (std::size_t k = cells_.size(); k-- > 0;) {
      for (std::size_t j = 0; j < 4; ++j) {
        suffix_min_[k][j] = std::min(suffix_min_[k + 1][j], cells_[k][j]);
        suffix_max_[k][j] = std::max(suffix_max_[k + 1][j], cells_[k][j]);
      }
    }
    remaining_ = b.as_array();
  }

  std::vector<PathTable> run(Count paths) {
    descend(0, paths);
    return std::move(found_);
  }

 private:
  bool feasible(std::size_t k, Count paths) const {
    for (std::size_t j = 0; j < 4; ++j) {
      if (remaining_[j] < 0) return false;
      if (remaining_[j] < paths * suffix_min_[k][j]) return false;
      if (remaining_[j] > paths * suffix_max_[k][j]) return false;
    }
    return true;
  }

  void visit_node() {
    if (++nodes_ > budget_.max_nodes) {
      throw BudgetExceeded("fiber enumeration exceeded " + std::to_string(budget_.max_nodes) +
                               " search nodes",
                           found_.size());
    }
  }

  // Chooses the next used cell (index >= k) and its count; depth <= n.
  void descend(std::size_t k, Count paths) {
    visit_node();
    if (paths == 0) {
      if (std::all_of(remaining_.begin(), remaining_.end(), [](Count r) { return r == 0; })) {
        emit();
      }
      return;
    }
    for (std::size_t cell = k; cell < cells_.size(); ++cell) {
      // The feasible region only shrinks as cells are dropped.
      if (!feasible(cell, paths)) return;
      visit_node();
      Count max_count = paths;
      for (std::size_t j = 0; j < 4; ++j) {
        if (cells_[cell][j] > 0) max_count = std::min(max_count, remaining_[j] / cells_[cell][j]);
      }
      for (Count c = max_count; c >= 1; --c) {
        for (std::size_t j = 0; j < 4; ++j) remaining_[j] -= c * cells_[cell][j];
        chosen_.emplace_back(Path::decode(cell, length_), c);
        descend(cell + 1, paths - c);
        chosen_.pop_back();
        for (std::size_t j = 0; j < 4; ++j) remaining_[j] += c * cells_[cell][j];
      }
    }
  }

  void emit() {
    if (found_.size() >= budget_.max_elements) {
      throw BudgetExceeded("fiber has more than " + std::to_string(budget_.max_elements) +
                               " elements",
                           found_.size());
    }
    found_.emplace_back(length_, chosen_);
  }

  int length_;
  FiberBudget budget_;
  std::vector<Vec4> cells_;
  std::vector<Vec4> suffix_min_;
  std::vector<Vec4> suffix_max_;
  Vec4 remaining_{};
  std::vector<PathTable::Entry> chosen_;
  std::vector<PathTable> found_;
  std::uint64_t nodes_ = 0;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Keeps the smaller index as root so roots are component minima.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::uint64_t support_mask(const Move& m, int sign) {
  std::uint64_t mask = 0;
  for (const auto& [p, d] : m.deltas()) {
    if (sign * d < 0) mask |= std::uint64_t{1} << p.encode();
  }
  return mask;
}

}  // namespace

Fiber enumerate_fiber(int length, const TransitionStat& b, const FiberBudget& budget) {
  check_path_length(length);
  if (length > kDenseLengthCap) throw InvalidArgument("fiber enumeration T above dense cap");
  if (b.b11 < 0 || b.b12 < 0 || b.b21 < 0 || b.b22 < 0) {
    throw InvalidArgument("transition counts must be nonnegative");
  }
  Fiber fiber{length, b, {}};
  const Count total = b.total();
  if (total % (length - 1) != 0) return fiber;
  const Count n = total / (length - 1);
  if (n == 0) {
    fiber.elements.emplace_back(length);
    return fiber;
  }
  fiber.elements = FiberSearch(length, b, budget).run(n);
  std::sort(fiber.elements.begin(), fiber.elements.end());
  return fiber;
}

// ---------------------------------------------------------------------------

MoveSet::MoveSet(int length, std::vector<Move> moves, std::string description)
    : length_(length), description_(std::move(description)), moves_(std::move(moves)) {
  if (length > kDefaultEnumerationCap) {
    throw InvalidArgument("move sets are limited to T <= " +
                          std::to_string(kDefaultEnumerationCap));
  }
  for (std::uint32_t i = 0; i < moves_.size(); ++i) {
    if (moves_[i].length() != length) throw InvalidArgument("move T does not match move set");
    for (const int sign : {1, -1}) by_support_[support_mask(moves_[i], sign)].push_back({i, sign});
  }
}

MoveSet MoveSet::from_families(int length, std::span<const Family> families) {
  return MoveSet(length, enumerate_moves(length, families), family_list_name(families));
}

MoveSet MoveSet::from_moves(int length, std::vector<Move> moves, std::string description) {
  return MoveSet(length, std::move(moves), std::move(description));
}

void MoveSet::for_each_applicable(const PathTable& table,
                                  const std::function<void(const Move&, int)>& visit) const {
  std::vector<std::uint64_t> bits;
  for (const auto& e : table) bits.push_back(std::uint64_t{1} << e.first.encode());
  auto try_mask = [&](std::uint64_t mask) {
    const auto it = by_support_.find(mask);
    if (it == by_support_.end()) return;
    for (const Signed& s : it->second) {
      const Move& m = moves_[s.move];
      if (can_apply(table, m, s.sign)) visit(m, s.sign);
    }
  };
  // Every move removes from at most three distinct paths.
  const std::size_t n = bits.size();
  for (std::size_t i = 0; i < n; ++i) {
    try_mask(bits[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      try_mask(bits[i] | bits[j]);
      for (std::size_t k = j + 1; k < n; ++k) try_mask(bits[i] | bits[j] | bits[k]);
    }
  }
}

ConnectivityReport connectivity(const Fiber& fiber, const MoveSet& moves) {
  if (fiber.elements.empty()) throw InvalidArgument("connectivity of an empty fiber");
  if (fiber.length != moves.length()) throw InvalidArgument("move set and fiber differ in T");
  std::unordered_map<PathTable, std::size_t, PathTableHash> index;
  for (std::size_t k = 0; k < fiber.elements.size(); ++k) index.emplace(fiber.elements[k], k);

  DisjointSets sets(fiber.elements.size());
  for (std::size_t k = 0; k < fiber.elements.size(); ++k) {
    const PathTable& x = fiber.elements[k];
    moves.for_each_applicable(x, [&](const Move& m, int sign) {
      const PathTable y = add_scaled(x, m.deltas(), sign);
      const auto it = index.find(y);
      if (it == index.end()) {
        throw InvalidArgument("move " + m.str() + " leaves the fiber of b=" + fiber.b.str());
      }
      sets.unite(k, it->second);
    });
  }

  ConnectivityReport report;
  report.move_set = moves.description();
  report.component_of.resize(fiber.elements.size());
  std::map<std::size_t, std::size_t> label;  // root -> component id
  for (std::size_t k = 0; k < fiber.elements.size(); ++k) {
    const std::size_t root = sets.find(k);
    const auto [it, inserted] = label.emplace(root, label.size());
    if (inserted) {
      report.component_sizes.push_back(0);
      report.representatives.push_back(fiber.elements[root]);
    }
    report.component_of[k] = it->second;
    ++report.component_sizes[it->second];
  }
  report.component_count = report.component_sizes.size();
  if (report.component_count <= 1) report.representatives.clear();
  return report;
}

// ---------------------------------------------------------------------------

std::vector<TransitionStat> realizable_stats(int length, int n_max) {
  check_path_length(length);
  if (length > kDenseLengthCap) throw InvalidArgument("T above dense cap");
  std::set<TransitionStat> singles;
  for (std::uint64_t c = 0; c < path_count(length); ++c) {
    singles.insert(transitions(Path::decode(c, length)));
  }
  std::set<TransitionStat> all;
  std::set<TransitionStat> level{TransitionStat{}};
  for (int n = 1; n <= n_max; ++n) {
    std::set<TransitionStat> next;
    for (const auto& r : level) {
      for (const auto& s : singles) {
        next.insert({r.b11 + s.b11, r.b12 + s.b12, r.b21 + s.b21, r.b22 + s.b22});
      }
    }
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }
  return {all.begin(), all.end()};
}

SweepResult sweep(int length, int n_max, const MoveSet& moves, const FiberBudget& budget,
                  const std::function<bool(const TransitionStat&)>& keep) {
  if (moves.length() != length) throw InvalidArgument("move set and sweep differ in T");
  SweepResult result;
  result.length = length;
  result.n_max = n_max;
  result.move_set = moves.description();
  for (const TransitionStat& b : realizable_stats(length, n_max)) {
    if (keep && !keep(b)) continue;
    const Fiber fiber = enumerate_fiber(length, b, budget);
    FiberSummary s;
    s.b = b;
    s.fiber_size = fiber.elements.size();
    s.report = connectivity(fiber, moves);

    std::map<InitialFreq, std::set<std::size_t>> components_by_class;
    std::map<std::size_t, std::set<InitialFreq>> classes_by_component;
    for (std::size_t k = 0; k < fiber.elements.size(); ++k) {
      const InitialFreq f = initial_freq(fiber.elements[k]);
      components_by_class[f].insert(s.report.component_of[k]);
      classes_by_component[s.report.component_of[k]].insert(f);
    }
    s.initial_classes = components_by_class.size();
    s.components_match_initial_classes =
        std::all_of(components_by_class.begin(), components_by_class.end(),
                    [](const auto& kv) { return kv.second.size() == 1; }) &&
        std::all_of(classes_by_component.begin(), classes_by_component.end(),
                    [](const auto& kv) { return kv.second.size() == 1; });
    if (s.report.component_count > 1) ++result.disconnected;
    result.fibers.push_back(std::move(s));
  }
  return result;
}

}  // namespace thmc
