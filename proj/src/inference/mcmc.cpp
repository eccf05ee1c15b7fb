#include "thmc/mcmc.hpp"

#include <cassert>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_map>

#include "thmc/error.hpp"
#include "thmc/stats.hpp"

namespace thmc {

namespace {

constexpr double kTieSlack = 1e-12;

// 53 random bits in [0, 1); fixed so results do not depend on the standard library.
double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// log(x! / y!) for nonnegative integers.
double log_factorial_ratio(Count x, Count y) {
  double s = 0;
  for (Count k = y + 1; k <= x; ++k) s += std::log(static_cast<double>(k));
  for (Count k = x + 1; k <= y; ++k) s -= std::log(static_cast<double>(k));
  return s;
}

struct ChainOutput {
  ChainStats stats;
  std::vector<double> values;
};

}  // namespace

double ChainStats::acceptance_rate() const noexcept {
  return steps == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(steps);
}

double ChainStats::null_proposal_rate() const noexcept {
  return steps == 0 ? 0.0 : static_cast<double>(null_proposals) / static_cast<double>(steps);
}

double log_target_ratio(const PathTable& x, const Move& z, int sign) {
  double s = 0;
  for (const auto& [path, d] : z.deltas()) {
    const Count before = x.count(path);
    const Count after = before + sign * d;
    s += log_factorial_ratio(before, after);
  }
  return s;
}

ChainStats mh_chain(const PathTable& start, const ChainOptions& options,
                    const std::function<void(const PathTable&, std::uint64_t)>& visit) {
  if (options.steps < 1) throw InvalidArgument("mh_chain needs steps >= 1");
  const ProposalSampler propose(start.length(), options.weights);
  Rng rng(options.seed);
  ChainStats stats;
  PathTable current = start;
#ifndef NDEBUG
  const TransitionStat b = suff_stat(start);
#endif
  const std::uint64_t total = options.burnin + options.steps;
  for (std::uint64_t step = 0; step < total; ++step) {
    ++stats.steps;
    std::optional<Proposal> proposal = propose(rng);
    if (!proposal) {
      ++stats.null_proposals;
    } else if (!can_apply(current, proposal->move, proposal->sign)) {
      ++stats.rejected;
    } else {
      const double log_ratio = log_target_ratio(current, proposal->move, proposal->sign);
      if (log_ratio >= 0 || unit_uniform(rng) < std::exp(log_ratio)) {
        current = add_scaled(current, proposal->move.deltas(), proposal->sign);
        ++stats.accepted;
      } else {
        ++stats.rejected;
      }
    }
    assert(suff_stat(current) == b);
    if (step >= options.burnin) visit(current, step - options.burnin);
  }
  return stats;
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, double width) {
  if (!(width > 0) || !std::isfinite(width)) throw InvalidArgument("bin width must be > 0");
  std::vector<HistogramBin> bins;
  if (values.empty()) return bins;
  double top = 0;
  for (const double v : values) top = std::max(top, v);
  const auto count = static_cast<std::size_t>(std::floor(top / width)) + 1;
  bins.resize(count);
  for (std::size_t k = 0; k < count; ++k) bins[k].lower = static_cast<double>(k) * width;
  for (const double v : values) {
    auto k = static_cast<std::size_t>(std::floor(std::max(0.0, v) / width));
    if (k >= count) k = count - 1;
    ++bins[k].count;
  }
  return bins;
}

std::uint64_t chain_seed(std::uint64_t seed, unsigned index, unsigned chains) {
  if (chains <= 1) return seed;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

TestResult exact_test(const PathTable& table, const ExactTestOptions& options) {
  if (options.steps < 1) throw InvalidArgument("exact test needs steps >= 1");
  if (options.chains < 1) throw InvalidArgument("exact test needs at least one chain");
  const int T = table.length();
  const Configuration null_config(T, Variant::WithoutInitial);
  const Configuration alt_config(T, Variant::WithInitial);
  const FittedModel null_fit = fit_mle(table, null_config, options.fit);

  TestResult result;
  result.n = table.total();
  result.length = T;
  result.b = suff_stat(table);
  result.L_observed = likelihood_ratio(table, fit_mle(table, alt_config, options.fit), null_fit);
  result.df = lr_df(T);
  result.p_asymptotic = chi2_sf(result.L_observed, result.df);
  result.samples = options.steps * options.chains;
  result.burnin = options.burnin;
  result.seed = options.seed;
  result.chains = options.chains;

  auto run_chain = [&](unsigned index, ChainOutput& out) {
    ChainOptions chain;
    chain.steps = options.steps;
    chain.burnin = options.burnin;
    chain.seed = chain_seed(options.seed, index, options.chains);
    chain.weights = options.weights;
    std::unordered_map<PathTable, double, PathTableHash> cache;
    out.values.reserve(options.steps);
    out.stats = mh_chain(table, chain, [&](const PathTable& state, std::uint64_t) {
      auto it = cache.find(state);
      if (it == cache.end()) {
        const double L = likelihood_ratio(state, fit_mle(state, alt_config, options.fit), null_fit);
        it = cache.emplace(state, L).first;
      }
      out.values.push_back(it->second);
    });
  };

  std::vector<ChainOutput> outputs(options.chains);
  if (options.chains == 1) {
    run_chain(0, outputs[0]);
  } else {
    std::vector<std::exception_ptr> errors(options.chains);
    std::vector<std::thread> threads;
    for (unsigned c = 0; c < options.chains; ++c) {
      threads.emplace_back([&, c] {
        try {
          run_chain(c, outputs[c]);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  ChainStats pooled;
  result.sampled_L.reserve(result.samples);
  for (const ChainOutput& out : outputs) {
    pooled.accepted += out.stats.accepted;
    pooled.rejected += out.stats.rejected;
    pooled.null_proposals += out.stats.null_proposals;
    pooled.steps += out.stats.steps;
    result.sampled_L.insert(result.sampled_L.end(), out.values.begin(), out.values.end());
  }
  result.acceptance_rate = pooled.acceptance_rate();
  result.null_proposal_rate = pooled.null_proposal_rate();

  std::uint64_t hits = 0;
  for (const double L : result.sampled_L) {
    if (L >= result.L_observed - kTieSlack) ++hits;
  }
  const auto N = static_cast<double>(result.sampled_L.size());
  result.p_exact = options.add_observed ? (1.0 + static_cast<double>(hits)) / (N + 1.0)
                                        : static_cast<double>(hits) / N;
  result.histogram = histogram(result.sampled_L, options.bin_width);
  return result;
}

}  // namespace thmc
