#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "thmc/mle.hpp"
#include "thmc/path_table.hpp"
#include "thmc/proposal.hpp"

namespace thmc {

struct ChainOptions {
  std::uint64_t steps = 10'000;
  std::uint64_t burnin = 5'000;
  std::uint64_t seed = 0;
  FamilyWeights weights = FamilyWeights::uniform();
};

/// Counts over every step of the chain, burn-in included.
struct ChainStats {
  std::uint64_t accepted = 0;
  /// Proposals that would go negative or lost the Metropolis coin.
  std::uint64_t rejected = 0;
  std::uint64_t null_proposals = 0;
  std::uint64_t steps = 0;

  double acceptance_rate() const noexcept;
  double null_proposal_rate() const noexcept;
};

/// Log of pi(y) / pi(x) for pi(x) proportional to 1 / prod x(w)!, y = x + sign * z.
/// Only the cells touched by z enter the sum.
double log_target_ratio(const PathTable& x, const Move& z, int sign);

/// Metropolis-Hastings on the fiber of `start`, targeting the conditional
/// (hypergeometric) distribution. Runs burnin + steps transitions and calls
/// visit(state, k) for the k-th post-burn-in state. Rejected and null
/// proposals repeat the current state.
ChainStats mh_chain(const PathTable& start, const ChainOptions& options,
                    const std::function<void(const PathTable&, std::uint64_t)>& visit);

struct ExactTestOptions {
  std::uint64_t steps = 10'000;
  std::uint64_t burnin = 5'000;
  std::uint64_t seed = 0;
  FamilyWeights weights = FamilyWeights::uniform();
  /// (1 + hits) / (N + 1) instead of hits / N.
  bool add_observed = false;
  double bin_width = 0.1;
  /// Independent chains, each running steps + burnin transitions.
  unsigned chains = 1;
  FitOptions fit;
};

struct HistogramBin {
  double lower = 0;
  std::uint64_t count = 0;
};

struct TestResult {
  Count n = 0;
  int length = 0;
  TransitionStat b;
  double L_observed = 0;
  int df = 0;
  double p_asymptotic = 0;
  double p_exact = 0;
  std::uint64_t samples = 0;
  std::uint64_t burnin = 0;
  std::uint64_t seed = 0;
  unsigned chains = 1;
  double acceptance_rate = 0;
  double null_proposal_rate = 0;
  std::vector<HistogramBin> histogram;
  /// L of every pooled sample in chain order.
  std::vector<double> sampled_L;
};

/// Fixed-width bins [k w, (k+1) w) from 0 up to the bin holding max(values).
std::vector<HistogramBin> histogram(const std::vector<double>& values, double width);

/// Seed of chain `index` derived from the user seed; chain 0 of a single-chain
/// run uses the seed unchanged.
std::uint64_t chain_seed(std::uint64_t seed, unsigned index, unsigned chains);

/// Likelihood-ratio exact test. The null fit is computed once and reused for
/// every sampled table, since it depends on the table only through b.
TestResult exact_test(const PathTable& table, const ExactTestOptions& options = {});

}  // namespace thmc
