#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "thmc/moves.hpp"

namespace thmc {

using Rng = std::mt19937_64;

/// Probability of drawing each family; nonnegative and summing to one.
class FamilyWeights {
 public:
  static FamilyWeights uniform() noexcept;
  /// Throws InvalidArgument unless every weight is >= 0 and they sum to 1
  /// within 1e-9.
  static FamilyWeights from_array(const std::array<double, 6>& weights);
  /// "type1=1,type2=2,..." (unlisted families get 0) or six comma-separated
  /// numbers in family order. Values are normalized to sum to one.
  static FamilyWeights parse(std::string_view text);

  double operator[](Family f) const noexcept { return w_[family_index(f)]; }
  const std::array<double, 6>& values() const noexcept { return w_; }
  std::string str() const;

 private:
  std::array<double, 6> w_{};
};

struct Proposal {
  Move move;
  int sign;  // +1 or -1
};

/// Table-independent proposal kernel for the Markov-basis chain.
///
/// A family is drawn by weight, then its parameters are drawn uniformly and
/// independently: times from admissible ranges that depend on T only, and
/// every path state not pinned by the family's window pattern uniformly from
/// {1, 2}. The sign is an independent fair coin, so q(z) = q(-z). Parameters
/// that violate a family precondition yield a null proposal.
class ProposalSampler {
 public:
  ProposalSampler(int length, FamilyWeights weights);

  int length() const noexcept { return length_; }
  const FamilyWeights& weights() const noexcept { return weights_; }

  std::optional<Proposal> operator()(Rng& rng) const;
  /// Same draw with the family fixed; used by the coverage tests.
  std::optional<Move> draw_family(Family family, Rng& rng) const;

 private:
  struct Times {
    int state;  // pinned state or pattern selector
    int t0, t1, t2;
  };
  struct Sliding {
    int a, b, u;
    bool swap, reverse;
  };

  Path random_path(Rng& rng) const;

  int length_;
  FamilyWeights weights_;
  std::vector<Times> type1_;
  std::vector<Times> two_by_two_;
  std::vector<Times> type4_;
  std::vector<Times> type2_;
  std::vector<Sliding> sliding_;
};

/// One-shot form; prefer a long-lived ProposalSampler in loops.
std::optional<Proposal> sample_proposal(int length, Rng& rng, const FamilyWeights& weights);

}  // namespace thmc
