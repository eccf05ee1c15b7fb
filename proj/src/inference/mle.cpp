#include "thmc/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "thmc/error.hpp"

namespace thmc {

namespace {

constexpr double kDivergedTheta = 1e3;
constexpr double kVanishingProb = 1e-9;

struct Evaluation {
  Eigen::VectorXd log_p;
  Eigen::VectorXd p;
  double log_z = 0;
  double loglik = 0;
};

Evaluation evaluate(const Eigen::MatrixXd& design, const Eigen::VectorXd& stat, double n,
                    const Eigen::VectorXd& theta) {
  Evaluation e;
  const Eigen::VectorXd eta = design * theta;
  const double top = eta.maxCoeff();
  e.log_z = top + std::log((eta.array() - top).exp().sum());
  e.log_p = eta.array() - e.log_z;
  e.p = e.log_p.array().exp();
  e.loglik = stat.dot(theta) - n * e.log_z;
  return e;
}

}  // namespace

FittedModel fit_mle(const PathTable& table, const Configuration& config, const FitOptions& options) {
  if (table.length() != config.length()) {
    throw InvalidArgument("table length does not match configuration");
  }
  if (table.total() < 1) throw InvalidArgument("fit_mle needs at least one observation");
  const double n = static_cast<double>(table.total());
  const std::vector<Count> observed = config.apply(table);
  const int rows = config.rows();

  // Rows with zero observed total force every cell using them to zero.
  std::vector<int> active_rows;
  for (int r = 0; r < rows; ++r) {
    if (observed[static_cast<std::size_t>(r)] > 0) active_rows.push_back(r);
  }
  std::vector<std::uint64_t> cells;
  for (std::uint64_t c = 0; c < config.columns(); ++c) {
    const auto col = config.column(c);
    bool open = true;
    for (int r = 0; r < rows; ++r) {
      if (observed[static_cast<std::size_t>(r)] == 0 && col[static_cast<std::size_t>(r)] > 0) {
        open = false;
      }
    }
    if (open) cells.push_back(c);
  }

  const auto k = static_cast<Eigen::Index>(cells.size());
  const auto ra = static_cast<Eigen::Index>(active_rows.size());
  Eigen::MatrixXd design(k, ra);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index r = 0; r < ra; ++r) {
      design(i, r) = config.entry(active_rows[static_cast<std::size_t>(r)],
                                  cells[static_cast<std::size_t>(i)]);
    }
  }
  Eigen::VectorXd stat(ra);
  for (Eigen::Index r = 0; r < ra; ++r) {
    stat(r) = static_cast<double>(observed[static_cast<std::size_t>(active_rows[static_cast<std::size_t>(r)])]);
  }

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(ra);
  Evaluation ev = evaluate(design, stat, n, theta);
  double residual = std::numeric_limits<double>::infinity();
  bool monotone = true;
  int stalled = 0;
  int iter = 0;
  const double target = options.tolerance * 1e-3;
  for (; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd mean_row = design.transpose() * ev.p;
    const Eigen::VectorXd grad = stat - n * mean_row;
    const double r_now = grad.cwiseAbs().maxCoeff();
    if (r_now > residual) monotone = false;
    if (r_now < residual * 0.999) {
      stalled = 0;
    } else if (++stalled >= 3) {
      residual = std::min(residual, r_now);
      break;
    }
    residual = std::min(residual, r_now);
    if (r_now <= target) break;

    const Eigen::MatrixXd info =
        n * (design.transpose() * ev.p.asDiagonal() * design - mean_row * mean_row.transpose());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(info, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    const Eigen::VectorXd step = svd.solve(grad);

    double scale = 1.0;
    Evaluation next = evaluate(design, stat, n, theta + step);
    for (int h = 0; h < 40 && !(next.loglik >= ev.loglik - 1e-12 * std::abs(ev.loglik)); ++h) {
      scale *= 0.5;
      next = evaluate(design, stat, n, theta + scale * step);
    }
    theta += scale * step;
    ev = std::move(next);
  }
  {
    const Eigen::VectorXd grad = stat - n * (design.transpose() * ev.p);
    residual = grad.cwiseAbs().maxCoeff();
  }

  FittedModel fit;
  fit.variant = config.variant();
  fit.iterations = iter;
  fit.residual = residual;
  fit.theta.assign(static_cast<std::size_t>(rows), -std::numeric_limits<double>::infinity());
  // Report theta up to the redundant null-space directions as computed.
  for (Eigen::Index r = 0; r < ra; ++r) {
    fit.theta[static_cast<std::size_t>(active_rows[static_cast<std::size_t>(r)])] = theta(r);
  }
  fit.probs.assign(config.columns(), 0.0);
  fit.log_probs.assign(config.columns(), -std::numeric_limits<double>::infinity());
  double min_prob = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto c = cells[static_cast<std::size_t>(i)];
    fit.probs[c] = ev.p(i);
    fit.log_probs[c] = ev.log_p(i);
    min_prob = std::min(min_prob, ev.p(i));
  }
  const double theta_norm = ra > 0 ? theta.cwiseAbs().maxCoeff() : 0.0;
  fit.boundary = cells.size() < config.columns() || min_prob < kVanishingProb;

  if (residual >= options.tolerance) {
    if (theta_norm > kDivergedTheta && monotone) {
      fit.boundary = true;
      return fit;
    }
    throw FitFailure("MLE did not converge: residual " + std::to_string(residual) + " after " +
                     std::to_string(iter) + " iterations");
  }
  return fit;
}

FittedModel fit_mle(const PathTable& table, Variant variant, const FitOptions& options) {
  return fit_mle(table, Configuration(table.length(), variant), options);
}

double likelihood_ratio(const PathTable& table, const FittedModel& alternative,
                        const FittedModel& null_fit) {
  double sum = 0;
  for (const auto& [path, c] : table) {
    const auto i = path.encode();
    sum += static_cast<double>(c) * (alternative.log_probs[i] - null_fit.log_probs[i]);
  }
  return std::max(0.0, 2.0 * sum);
}

double likelihood_ratio(const PathTable& table) {
  return likelihood_ratio(table, fit_mle(table, Variant::WithInitial),
                          fit_mle(table, Variant::WithoutInitial));
}

int lr_df(int length) {
  if (length < kMinPathLength) throw InvalidArgument("lr_df needs T >= 3");
  return Configuration(length, Variant::WithInitial).rank() -
         Configuration(length, Variant::WithoutInitial).rank();
}

double chi2_sf(double x, int df) {
  if (df < 1) throw InvalidArgument("chi2_sf needs df >= 1");
  if (std::isnan(x) || x < 0) throw InvalidArgument("chi2_sf needs x >= 0");
  if (x == 0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace thmc
