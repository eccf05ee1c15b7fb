#pragma once

#include <vector>

#include "thmc/configuration.hpp"
#include "thmc/path_table.hpp"

namespace thmc {

struct FitOptions {
  int max_iterations = 500;
  /// Required Birch residual max_r |(A x)_r - n E[A_r]|.
  double tolerance = 1e-8;
};

/// Maximum likelihood fit of p(w) proportional to exp(theta . A_w).
struct FittedModel {
  Variant variant = Variant::WithoutInitial;
  /// One entry per configuration row. Rows whose observed total is zero sit
  /// at -infinity (the fit lies on that face of the boundary).
  std::vector<double> theta;
  /// Indexed by Path::encode().
  std::vector<double> probs;
  std::vector<double> log_probs;
  double residual = 0;
  bool boundary = false;
  int iterations = 0;
};

/// Fisher scoring with pseudo-inverse steps (the parametrization is
/// redundant) and step halving. Cells that use a transition or initial state
/// with zero observed total are fixed at probability zero first; each
/// remaining direction is then fitted by Newton. Throws FitFailure when the
/// residual cannot be brought below tolerance and theta has not diverged.
FittedModel fit_mle(const PathTable& table, const Configuration& config,
                    const FitOptions& options = {});
FittedModel fit_mle(const PathTable& table, Variant variant, const FitOptions& options = {});

/// 2 sum_w x(w) [log p1(w) - log p0(w)] over the observed cells, clamped at 0.
double likelihood_ratio(const PathTable& table, const FittedModel& alternative,
                        const FittedModel& null_fit);
/// Fits both variants; p1 with initial parameters, p0 without.
double likelihood_ratio(const PathTable& table);

/// rank(A with initial rows) - rank(A without).
int lr_df(int length);

/// Upper tail P(X >= x) of the chi-square distribution with df degrees of freedom.
double chi2_sf(double x, int df);

}  // namespace thmc
