#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "thmc/error.hpp"
#include "thmc/fiber.hpp"

using namespace thmc;

namespace {

std::vector<Family> without(Family f) {
  std::vector<Family> out;
  for (const Family g : kAllFamilies) {
    if (g != f) out.push_back(g);
  }
  return out;
}

std::vector<oracle::Table> as_oracle(const Fiber& f) {
  std::vector<oracle::Table> out;
  for (const PathTable& t : f.elements) out.push_back(testing::to_oracle(t));
  return out;
}

}  // namespace

TEST_SUITE("fiber") {

TEST_CASE("small fibers") {
  const Fiber f = enumerate_fiber(3, {2, 2, 0, 2});
  REQUIRE(f.elements.size() == 2);
  CHECK(f.elements[0] == PathTable::from_strings({{"111", 1}, {"122", 2}}));
  CHECK(f.elements[1] == PathTable::from_strings({{"112", 2}, {"222", 1}}));

  const Fiber one = enumerate_fiber(3, {2, 0, 0, 0});
  REQUIRE(one.elements.size() == 1);
  CHECK(one.elements[0] == PathTable::from_strings({{"111", 1}}));

  const Fiber two = enumerate_fiber(3, {1, 1, 1, 1});
  REQUIRE(two.elements.size() == 2);
  CHECK(two.elements[0] == PathTable::from_strings({{"112", 1}, {"221", 1}}));
  CHECK(two.elements[1] == PathTable::from_strings({{"122", 1}, {"211", 1}}));

  CHECK(enumerate_fiber(3, {1, 0, 0, 1}).elements.empty());
  CHECK(enumerate_fiber(3, {1, 0, 0, 0}).elements.empty());
  const Fiber zero = enumerate_fiber(4, {0, 0, 0, 0});
  REQUIRE(zero.elements.size() == 1);
  CHECK(zero.elements[0].empty());
  CHECK_THROWS_AS(enumerate_fiber(3, {-1, 0, 0, 3}), InvalidArgument);
}

TEST_CASE("enumeration agrees with a naive filter over all tables") {
  for (const auto& [T, n_max] : std::vector<std::pair<int, int>>{{3, 3}, {4, 2}}) {
    for (int n = 1; n <= n_max; ++n) {
      std::map<std::array<std::int64_t, 4>, std::vector<oracle::Table>> by_b;
      for (const auto& t : oracle::all_tables(T, n)) by_b[oracle::suff_stat(t)].push_back(t);
      for (const auto& [b, tables] : by_b) {
        const Fiber f = enumerate_fiber(T, {b[0], b[1], b[2], b[3]});
        auto mine = as_oracle(f);
        auto theirs = tables;
        std::sort(mine.begin(), mine.end());
        std::sort(theirs.begin(), theirs.end());
        CHECK(mine == theirs);
        CHECK(std::is_sorted(f.elements.begin(), f.elements.end()));
        CHECK(std::adjacent_find(f.elements.begin(), f.elements.end()) == f.elements.end());
      }
    }
  }
}

TEST_CASE("realizable statistics match the naive table set") {
  std::set<std::array<std::int64_t, 4>> naive;
  for (int n = 1; n <= 3; ++n) {
    for (const auto& t : oracle::all_tables(3, n)) naive.insert(oracle::suff_stat(t));
  }
  std::set<std::array<std::int64_t, 4>> mine;
  for (const TransitionStat& b : realizable_stats(3, 3)) mine.insert(b.as_array());
  CHECK(mine == naive);
}

TEST_CASE("budget aborts with a partial count") {
  try {
    enumerate_fiber(4, {3, 3, 3, 3}, FiberBudget{5, 100'000'000});
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.partial_count() == 5);
  }
  CHECK_THROWS_AS(enumerate_fiber(5, {4, 4, 4, 4}, FiberBudget{1'000'000, 10}), BudgetExceeded);
}

TEST_CASE("connectivity of the indispensable pair and the 2x2 fiber") {
  const Fiber f = enumerate_fiber(3, {2, 2, 0, 2});
  const MoveSet all = MoveSet::from_families(3, kAllFamilies);
  const auto full = connectivity(f, all);
  CHECK(full.component_count == 1);
  CHECK(full.representatives.empty());

  const auto rest = without(Family::Deg3Sliding);
  const auto cut = connectivity(f, MoveSet::from_families(3, rest));
  CHECK(cut.component_count == 2);
  CHECK(cut.component_sizes == std::vector<std::size_t>{1, 1});
  CHECK(cut.representatives.size() == 2);

  const std::vector<Family> swaps{Family::TwoByTwoSwap};
  const auto r = connectivity(enumerate_fiber(3, {1, 1, 1, 1}), MoveSet::from_families(3, swaps));
  CHECK(r.component_count == 1);

  CHECK_THROWS_AS(connectivity(Fiber{3, {1, 0, 0, 1}, {}}, all), InvalidArgument);
  CHECK_THROWS_AS(connectivity(enumerate_fiber(4, {3, 0, 0, 0}), all), InvalidArgument);
}

TEST_CASE("move set lookup finds exactly the applicable moves") {
  std::mt19937_64 rng(5);
  const MoveSet ms = MoveSet::from_families(4, kAllFamilies);
  for (int rep = 0; rep < 40; ++rep) {
    const PathTable x = testing::random_table(4, 1, rng);
    std::set<std::pair<std::size_t, int>> found;
    ms.for_each_applicable(x, [&](const Move& m, int sign) {
      const auto idx = static_cast<std::size_t>(&m - ms.moves().data());
      found.insert({idx, sign});
      CHECK(suff_stat(add_scaled(x, m.deltas(), sign)) == suff_stat(x));
    });
    std::set<std::pair<std::size_t, int>> scan;
    for (std::size_t k = 0; k < ms.moves().size(); ++k) {
      for (const int s : {1, -1}) {
        if (can_apply(x, ms.moves()[k], s)) scan.insert({k, s});
      }
    }
    CHECK(found == scan);
  }
  CHECK_THROWS_AS(MoveSet::from_families(7, kAllFamilies), InvalidArgument);
}

TEST_CASE("sweep at T = 4 under several move sets") {
  const MoveSet full = MoveSet::from_families(4, kAllFamilies);
  const SweepResult s = sweep(4, 3, full);
  CHECK(s.disconnected == 0);
  CHECK(s.fibers.size() == realizable_stats(4, 3).size());
  for (const FiberSummary& f : s.fibers) {
    std::size_t total = 0;
    for (const auto k : f.report.component_sizes) total += k;
    CHECK(total == f.fiber_size);
  }

  const std::vector<Family> prop{Family::TypeIDegreeOne, Family::CrossingSwap, Family::TwoByTwoSwap,
                                 Family::TypeIV};
  const SweepResult p = sweep(4, 3, MoveSet::from_families(4, prop));
  CHECK(p.disconnected > 0);
  for (const FiberSummary& f : p.fibers) {
    CAPTURE(f.b.str());
    CHECK(f.components_match_initial_classes);
    CHECK(f.report.component_count == f.initial_classes);
  }

  const std::vector<Family> restricted{Family::TypeIDegreeOne, Family::CrossingSwap};
  const SweepResult l = sweep(4, 3, MoveSet::from_families(4, restricted), {},
                              [](const TransitionStat& b) { return b.b11 == 0; });
  CHECK(!l.fibers.empty());
  // Both families fix initial frequencies, so b11 = 0 fibers connect only
  // within an initial-frequency class.
  for (const FiberSummary& f : l.fibers) {
    CAPTURE(f.b.str());
    CHECK(f.components_match_initial_classes);
  }
  const Fiber split = enumerate_fiber(4, {0, 1, 1, 1});
  REQUIRE(split.elements.size() == 3);
  CHECK(connectivity(split, MoveSet::from_families(4, restricted)).component_count == 2);
  CHECK(testing::to_oracle(split.elements[0]) == oracle::Table{{"1221", 1}});
  CHECK(testing::to_oracle(split.elements[1]) == oracle::Table{{"2122", 1}});
}

TEST_CASE("full move set connects every fiber at T = 3 and T = 5") {
  CHECK(sweep(3, 4, MoveSet::from_families(3, kAllFamilies)).disconnected == 0);
  CHECK(sweep(5, 3, MoveSet::from_families(5, kAllFamilies)).disconnected == 0);
}

}  // TEST_SUITE
