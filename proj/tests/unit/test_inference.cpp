#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "thmc/error.hpp"
#include "thmc/fiber.hpp"
#include "thmc/mcmc.hpp"

using namespace thmc;

namespace {

double birch_residual(const PathTable& x, const FittedModel& f, const Configuration& a) {
  const auto s = a.apply(x);
  double worst = 0;
  for (int r = 0; r < a.rows(); ++r) {
    double expected = 0;
    for (std::uint64_t c = 0; c < a.columns(); ++c) expected += a.entry(r, c) * f.probs[c];
    worst = std::max(worst, std::abs(static_cast<double>(s[static_cast<std::size_t>(r)]) -
                                     static_cast<double>(x.total()) * expected));
  }
  return worst;
}

double oracle_lr(int T, const oracle::Table& t) {
  const auto paths = oracle::all_paths(T);
  std::vector<double> counts;
  for (const auto& p : paths) counts.push_back(t.count(p) ? static_cast<double>(t.at(p)) : 0.0);
  const auto p1 = oracle::gis_fit(oracle::config_rows(T, true), counts);
  const auto p0 = oracle::gis_fit(oracle::config_rows(T, false), counts);
  double L = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 0) L += 2 * counts[k] * (std::log(p1[k]) - std::log(p0[k]));
  }
  return L;
}

double log_pi(const PathTable& x) {
  double s = 0;
  for (const auto& [p, c] : x) s -= std::lgamma(static_cast<double>(c) + 1);
  return s;
}

}  // namespace

TEST_SUITE("inference") {

TEST_CASE("uniform table fits the uniform distribution") {
  for (int T = 3; T <= 6; ++T) {
    std::vector<Count> dense(path_count(T), 3);
    const PathTable x = PathTable::from_dense(T, dense);
    for (const Variant v : {Variant::WithoutInitial, Variant::WithInitial}) {
      const FittedModel f = fit_mle(x, v);
      for (const double p : f.probs) CHECK(p == doctest::Approx(1.0 / dense.size()).epsilon(1e-12));
      CHECK_FALSE(f.boundary);
    }
  }
}

TEST_CASE("Klotz fits satisfy the Birch condition") {
  const PathTable k = testing::klotz();
  for (const Variant v : {Variant::WithoutInitial, Variant::WithInitial}) {
    const Configuration a(4, v);
    const FittedModel f = fit_mle(k, a);
    CHECK(f.residual < 1e-8);
    CHECK(birch_residual(k, f, a) < 1e-8);
    CHECK(std::accumulate(f.probs.begin(), f.probs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(f.boundary);
    CHECK(f.theta.size() == static_cast<std::size_t>(a.rows()));
  }
}

TEST_CASE("flat table is a boundary fit") {
  const PathTable x = PathTable::from_strings({{"1111", 1}});
  for (const Variant v : {Variant::WithoutInitial, Variant::WithInitial}) {
    const FittedModel f = fit_mle(x, v);
    CHECK(f.boundary);
    CHECK(f.probs[0] == doctest::Approx(1.0));
    CHECK(std::isinf(f.theta[1]));
  }
  CHECK(likelihood_ratio(x) == 0.0);
  CHECK_THROWS_AS(fit_mle(PathTable(4), Variant::WithoutInitial), InvalidArgument);
}

TEST_CASE("fits on random tables are proper distributions meeting the Birch condition") {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 200; ++rep) {
    const int T = 3 + rep % 3;
    const PathTable x = testing::random_table(T, rep % 2 == 0 ? 1 : 6, rng);
    for (const Variant v : {Variant::WithoutInitial, Variant::WithInitial}) {
      const Configuration a(T, v);
      const FittedModel f = fit_mle(x, a);
      double sum = 0;
      for (const double p : f.probs) {
        CHECK(p >= 0.0);
        sum += p;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      if (!f.boundary) CHECK(f.residual < 1e-8);
      CHECK(birch_residual(x, f, a) < 1e-6);
    }
  }
}

TEST_CASE("likelihood ratio agrees with an iterative scaling oracle") {
  const double mine = likelihood_ratio(testing::klotz());
  const double theirs = oracle_lr(4, oracle::klotz());
  CHECK(mine == doctest::Approx(theirs).epsilon(1e-6));
  CHECK(mine == doctest::Approx(0.1120985).epsilon(1e-6));

  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<Count> dense(16);
    std::uniform_int_distribution<int> d(1, 9);
    for (auto& c : dense) c = d(rng);
    const PathTable x = PathTable::from_dense(4, dense);
    CHECK(likelihood_ratio(x) == doctest::Approx(oracle_lr(4, testing::to_oracle(x))).epsilon(1e-5));
  }
}

TEST_CASE("likelihood ratio is zero for swap-symmetric tables and nonnegative") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const PathTable x = testing::random_table(4, 3, rng);
    std::vector<Count> dense = x.dense();
    const std::vector<Count> swapped = x.swapped().dense();
    for (std::size_t k = 0; k < dense.size(); ++k) dense[k] += swapped[k];
    CHECK(likelihood_ratio(PathTable::from_dense(4, dense)) < 1e-9);
    CHECK(likelihood_ratio(x) >= 0.0);
  }
}

TEST_CASE("null fit is constant on a fiber") {
  const Fiber f = enumerate_fiber(3, {1, 1, 1, 1});
  REQUIRE(f.elements.size() == 2);
  const FittedModel a = fit_mle(f.elements[0], Variant::WithoutInitial);
  const FittedModel b = fit_mle(f.elements[1], Variant::WithoutInitial);
  for (std::size_t k = 0; k < a.probs.size(); ++k) CHECK(std::abs(a.probs[k] - b.probs[k]) < 1e-9);
}

TEST_CASE("degrees of freedom") {
  for (int T = 3; T <= 8; ++T) {
    CHECK(lr_df(T) == 1);
    CHECK(lr_df(T) == oracle::integer_rank(oracle::config_rows(T, true)) -
                          oracle::integer_rank(oracle::config_rows(T, false)));
  }
  CHECK_THROWS_AS(lr_df(2), InvalidArgument);
}

TEST_CASE("chi-square survival function") {
  CHECK(chi2_sf(0.0, 1) == 1.0);
  CHECK(chi2_sf(0.0, 5) == 1.0);
  CHECK(std::abs(chi2_sf(3.841459, 1) - 0.05) < 1e-6);
  CHECK(std::abs(chi2_sf(0.1219, 1) - 0.7270) < 5e-5);
  for (double x = 0.01; x < 40; x *= 1.3) {
    CHECK(std::abs(chi2_sf(x, 1) - std::erfc(std::sqrt(x / 2))) < 1e-10);
    CHECK(std::abs(chi2_sf(x, 2) - std::exp(-x / 2)) < 1e-10);
    CHECK(std::abs(chi2_sf(x, 3) - (std::erfc(std::sqrt(x / 2)) +
                                    std::sqrt(2 * x / M_PI) * std::exp(-x / 2))) < 1e-10);
  }
  CHECK_THROWS_AS(chi2_sf(-0.1, 1), InvalidArgument);
  CHECK_THROWS_AS(chi2_sf(1.0, 0), InvalidArgument);
}

TEST_CASE("target ratio uses only the changed cells") {
  const PathTable x = PathTable::from_strings({{"111", 1}, {"122", 2}, {"212", 4}});
  const Move m = deg3_sliding(3, 1, 1, 1);
  const PathTable y = apply(x, m, -1);
  CHECK(log_target_ratio(x, m, -1) == doctest::Approx(log_pi(y) - log_pi(x)).epsilon(1e-14));
}

TEST_CASE("chains stay in the fiber") {
  const PathTable k = testing::klotz();
  const TransitionStat b = suff_stat(k);
  ChainOptions o;
  o.steps = 2000;
  o.burnin = 100;
  o.seed = 5;
  std::uint64_t visits = 0;
  const ChainStats s = mh_chain(k, o, [&](const PathTable& x, std::uint64_t i) {
    CHECK(i == visits);
    ++visits;
    REQUIRE(suff_stat(x) == b);
    REQUIRE(x.total() == k.total());
  });
  CHECK(visits == 2000);
  CHECK(s.steps == 2100);
  CHECK(s.accepted + s.rejected + s.null_proposals == s.steps);
  CHECK(s.accepted > 0);
  ChainOptions bad;
  bad.steps = 0;
  CHECK_THROWS_AS(mh_chain(k, bad, [](const PathTable&, std::uint64_t) {}), InvalidArgument);
}

TEST_CASE("chain from the Klotz table moves within 1000 steps") {
  ChainOptions o;
  o.steps = 1000;
  o.burnin = 0;
  o.seed = 1;
  const ChainStats s = mh_chain(testing::klotz(), o, [](const PathTable&, std::uint64_t) {});
  CHECK(s.acceptance_rate() > 0.0);
}

TEST_CASE("chain frequencies match hypergeometric weights") {
  // Fiber with unequal weights: {111:2, 122:4} has n = 6 and several tables.
  for (const PathTable& start : {PathTable::from_strings({{"112", 1}, {"221", 1}}),
                                PathTable::from_strings({{"111", 2}, {"122", 4}})}) {
    const Fiber f = enumerate_fiber(3, suff_stat(start));
    std::vector<double> w;
    for (const PathTable& t : f.elements) w.push_back(std::exp(log_pi(t)));
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    std::map<PathTable, std::uint64_t> seen;
    ChainOptions o;
    o.steps = 1'000'000;
    o.burnin = 1000;
    o.seed = 42;
    mh_chain(start, o, [&](const PathTable& x, std::uint64_t) { ++seen[x]; });
    double tv = 0;
    for (std::size_t k = 0; k < f.elements.size(); ++k) {
      const double freq = static_cast<double>(seen[f.elements[k]]) / 1e6;
      tv += std::abs(freq - w[k] / z);
    }
    CAPTURE(f.elements.size());
    CHECK(0.5 * tv < 0.02);
  }
}

TEST_CASE("exact test on a table alone in its fiber") {
  const PathTable x = PathTable::from_strings({{"111", 3}});
  ExactTestOptions o;
  o.steps = 500;
  o.burnin = 10;
  const TestResult r = exact_test(x, o);
  CHECK(r.p_exact == 1.0);
  CHECK(r.acceptance_rate == 0.0);
  CHECK(r.L_observed == 0.0);
  CHECK(r.p_asymptotic == 1.0);
}

TEST_CASE("exact test is reproducible and stable under doubling") {
  const PathTable x = PathTable::from_strings(
      {{"1111", 3}, {"1121", 2}, {"1211", 1}, {"2112", 2}, {"2222", 1}, {"1222", 2}, {"2111", 3}});
  ExactTestOptions o;
  o.steps = 10'000;
  o.burnin = 1000;
  o.seed = 123;
  const TestResult a = exact_test(x, o);
  const TestResult b = exact_test(x, o);
  CHECK(a.sampled_L == b.sampled_L);
  CHECK(a.p_exact == b.p_exact);
  CHECK(a.acceptance_rate == b.acceptance_rate);
  CHECK(a.p_exact >= 0.0);
  CHECK(a.p_exact <= 1.0);

  ExactTestOptions d = o;
  d.steps = 20'000;
  const TestResult c = exact_test(x, d);
  const double sigma = std::sqrt(a.p_exact * (1 - a.p_exact) / 10'000.0);
  CHECK(std::abs(c.p_exact - a.p_exact) <= 3 * sigma + 1e-12);

  std::uint64_t hits = 0;
  for (const double L : a.sampled_L) hits += L >= a.L_observed - 1e-12;
  CHECK(a.p_exact == static_cast<double>(hits) / 10'000.0);
  ExactTestOptions plus = o;
  plus.add_observed = true;
  CHECK(exact_test(x, plus).p_exact == (1.0 + static_cast<double>(hits)) / 10'001.0);
}

TEST_CASE("parallel chains pool deterministically") {
  const PathTable x = testing::klotz();
  ExactTestOptions o;
  o.steps = 2000;
  o.burnin = 200;
  o.seed = 9;
  o.chains = 3;
  const TestResult a = exact_test(x, o);
  const TestResult b = exact_test(x, o);
  CHECK(a.samples == 6000);
  CHECK(a.sampled_L.size() == 6000);
  CHECK(a.sampled_L == b.sampled_L);
  CHECK(chain_seed(9, 0, 3) != chain_seed(9, 1, 3));
  CHECK(chain_seed(9, 0, 1) == 9);
}

TEST_CASE("histogram bins") {
  const auto h = histogram({0.0, 0.05, 0.1, 0.25, 0.31}, 0.1);
  REQUIRE(h.size() == 4);
  CHECK(h[0].count == 2);
  CHECK(h[1].count == 1);
  CHECK(h[2].count == 1);
  CHECK(h[3].count == 1);
  CHECK(h[3].lower == doctest::Approx(0.3));
  CHECK(histogram({}, 0.1).empty());
  CHECK_THROWS_AS(histogram({1.0}, 0.0), InvalidArgument);
}

}  // TEST_SUITE
