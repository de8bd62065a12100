#include <algorithm>
#include <cmath>
#include <string>

#include "paretolab/random.hpp"
#include "paretolab/testbeds.hpp"

namespace paretolab {

namespace {

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

void require_beta(const LassoProblem& p, std::span<const double> beta) {
  if (beta.size() != p.features()) {
    throw DimensionError("lasso: coefficient vector has " + std::to_string(beta.size()) +
                         " entries, expected " + std::to_string(p.features()));
  }
}

}  // namespace

LassoProblem::LassoProblem(std::size_t n, std::size_t d, std::vector<double> design,
                           std::vector<double> targets)
    : n_(n), d_(d), design_(std::move(design)), targets_(std::move(targets)) {
  if (n_ == 0 || d_ == 0) throw ConfigError("LassoProblem: n and d must be >= 1");
  if (design_.size() != n_ * d_) throw DimensionError("LassoProblem: design must be n x d");
  if (targets_.size() != n_) throw DimensionError("LassoProblem: one target per row");
  for (double v : design_) {
    if (!std::isfinite(v)) throw ConfigError("LassoProblem: non-finite design entry");
  }
  for (double v : targets_) {
    if (!std::isfinite(v)) throw ConfigError("LassoProblem: non-finite target");
  }
}

double lasso_fit(const LassoProblem& p, std::span<const double> beta) {
  require_beta(p, beta);
  double s = 0.0;
  for (std::size_t i = 0; i < p.samples(); ++i) {
    double r = p.y(i);
    for (std::size_t j = 0; j < p.features(); ++j) r -= p.x(i, j) * beta[j];
    s += r * r;
  }
  return s / static_cast<double>(p.samples());
}

double l1_norm(std::span<const double> beta) {
  double s = 0.0;
  for (double b : beta) s += std::abs(b);
  return s;
}

double lasso_objective(const LassoProblem& p, std::span<const double> beta, double lambda) {
  return lasso_fit(p, beta) + lambda * l1_norm(beta);
}

double lambda_max(const LassoProblem& p) {
  // Same rounding as the first coordinate update from zero, so that
  // lambda_max gives exactly beta = 0.
  const double inv_n = 1.0 / static_cast<double>(p.samples());
  double best = 0.0;
  for (std::size_t j = 0; j < p.features(); ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < p.samples(); ++i) c += p.x(i, j) * p.y(i);
    best = std::max(best, std::abs(c * inv_n));
  }
  return 2.0 * best;
}

std::vector<double> lasso_coordinate_descent(const LassoProblem& p, double lambda,
                                             const LassoOptions& opts,
                                             std::span<const double> warm_start) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("lasso: lambda must be >= 0");
  if (!(opts.tolerance > 0.0)) throw ParameterError("lasso: tolerance must be > 0");
  const std::size_t n = p.samples();
  const std::size_t d = p.features();
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> beta(d, 0.0);
  if (!warm_start.empty()) {
    require_beta(p, warm_start);
    beta.assign(warm_start.begin(), warm_start.end());
  }

  std::vector<double> col_sq(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) col_sq[j] += p.x(i, j) * p.x(i, j);
    col_sq[j] *= inv_n;
  }
  std::vector<double> residual(p.targets().begin(), p.targets().end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) residual[i] -= p.x(i, j) * beta[j];
  }

  // Per coordinate: minimize z b^2 - 2 rho b + lambda |b|, whose solution is
  // soft_threshold(rho, lambda / 2) / z.
  for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double largest_change = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (col_sq[j] == 0.0) {
        beta[j] = 0.0;
        continue;
      }
      double rho = 0.0;
      for (std::size_t i = 0; i < n; ++i) rho += p.x(i, j) * residual[i];
      rho = rho * inv_n + col_sq[j] * beta[j];
      const double updated = soft_threshold(rho, 0.5 * lambda) / col_sq[j];
      const double change = updated - beta[j];
      if (change != 0.0) {
        for (std::size_t i = 0; i < n; ++i) residual[i] -= p.x(i, j) * change;
        beta[j] = updated;
      }
      largest_change = std::max(largest_change, std::abs(change));
    }
    if (opts.on_sweep) opts.on_sweep(beta);
    if (largest_change < opts.tolerance) return beta;
  }
  throw NonConvergenceError("lasso: no convergence within " + std::to_string(opts.max_sweeps) +
                                " sweeps",
                            std::move(beta));
}

std::vector<double> default_lambda_grid(const LassoProblem& p, std::size_t count, double ratio) {
  if (count == 0) throw ParameterError("lambda grid: count must be >= 1");
  if (!(ratio > 0.0 && ratio < 1.0)) throw ParameterError("lambda grid: ratio must lie in (0, 1)");
  const double top = lambda_max(p);
  if (!(top > 0.0)) throw ConfigError("lambda grid: X^T y is zero, path is trivially empty");
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double frac = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
    grid[k] = top * std::pow(ratio, frac);
  }
  return grid;
}

std::vector<LassoPathPoint> lasso_path(const LassoProblem& p, std::span<const double> lambda_grid,
                                       const LassoOptions& opts) {
  if (lambda_grid.empty()) throw ParameterError("lasso_path: empty lambda grid");
  for (std::size_t k = 1; k < lambda_grid.size(); ++k) {
    if (!(lambda_grid[k] < lambda_grid[k - 1])) {
      throw ParameterError("lasso_path: lambda grid must be strictly decreasing");
    }
  }
  std::vector<LassoPathPoint> out;
  out.reserve(lambda_grid.size());
  std::vector<double> warm(p.features(), 0.0);
  for (double lambda : lambda_grid) {
    LassoPathPoint pt;
    pt.lambda = lambda;
    pt.beta = lasso_coordinate_descent(p, lambda, opts, warm);
    pt.fit = lasso_fit(p, pt.beta);
    pt.l1 = l1_norm(pt.beta);
    warm = pt.beta;
    out.push_back(std::move(pt));
  }
  return out;
}

LassoProblem make_linear_problem(std::size_t n, std::size_t d, const LinearGroundTruth& truth,
                                 std::uint64_t seed) {
  if (truth.coefficients.size() != d) throw DimensionError("linear problem: need d true coefficients");
  if (!(truth.noise_sd >= 0.0)) throw ParameterError("linear problem: noise sd must be >= 0");
  Rng rng(seed);
  std::vector<double> design(n * d);
  for (double& v : design) v = rng.normal();
  std::vector<double> targets(n);
  for (std::size_t i = 0; i < n; ++i) {
    double y = 0.0;
    for (std::size_t j = 0; j < d; ++j) y += design[i * d + j] * truth.coefficients[j];
    targets[i] = y + truth.noise_sd * rng.normal();
  }
  return LassoProblem(n, d, std::move(design), std::move(targets));
}

double lasso_true_fit(const LassoProblem& p, const LinearGroundTruth& truth,
                      std::span<const double> beta) {
  require_beta(p, beta);
  if (truth.coefficients.size() != p.features()) {
    throw DimensionError("lasso_true_fit: ground truth dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.samples(); ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < p.features(); ++j) r += p.x(i, j) * (truth.coefficients[j] - beta[j]);
    s += r * r;
  }
  return s / static_cast<double>(p.samples()) + truth.noise_sd * truth.noise_sd;
}

}  // namespace paretolab
