#pragma once

// Learning problems whose true objectives are exactly computable: finite
// outcome-space problems, the piecewise-constant segmentation counterexample,
// LASSO with a known linear ground truth, and TERM group problems.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "paretolab/core.hpp"
#include "paretolab/error.hpp"

namespace paretolab {

// ---------------------------------------------------------------------------
// Finite problems

// |H| hypotheses, |Z| outcomes with known probabilities, N objectives.
// loss(h, z, i) lies in [0, M] for data-dependent objectives. Objectives in
// trivial_mask are data-independent: their value comes from trivial_table
// (|H| x N, row-major) for both true and empirical evaluation.
class FiniteProblem {
 public:
  FiniteProblem(std::size_t hypotheses, std::size_t outcomes, std::size_t objectives,
                std::vector<double> losses, std::vector<double> outcome_probs,
                double loss_bound = 1.0, std::vector<bool> trivial_mask = {},
                std::vector<double> trivial_table = {});

  std::size_t hypotheses() const noexcept { return hypotheses_; }
  std::size_t outcomes() const noexcept { return outcomes_; }
  std::size_t objectives() const noexcept { return objectives_; }
  double loss_bound() const noexcept { return loss_bound_; }

  double loss(std::size_t h, std::size_t z, std::size_t i) const noexcept {
    return losses_[(h * outcomes_ + z) * objectives_ + i];
  }
  double prob(std::size_t z) const noexcept { return probs_[z]; }
  bool is_trivial(std::size_t i) const noexcept { return trivial_mask_[i]; }
  double trivial_value(std::size_t h, std::size_t i) const noexcept {
    return trivial_table_[h * objectives_ + i];
  }

  std::span<const double> losses() const noexcept { return losses_; }
  std::span<const double> outcome_probs() const noexcept { return probs_; }
  const std::vector<bool>& trivial_mask() const noexcept { return trivial_mask_; }
  std::span<const double> trivial_table() const noexcept { return trivial_table_; }

 private:
  std::size_t hypotheses_;
  std::size_t outcomes_;
  std::size_t objectives_;
  std::vector<double> losses_;
  std::vector<double> probs_;
  double loss_bound_;
  std::vector<bool> trivial_mask_;
  std::vector<double> trivial_table_;
};

struct RandomProblemOptions {
  std::size_t hypotheses = 100;
  std::size_t outcomes = 64;
  std::size_t objectives = 2;
  double loss_bound = 1.0;
};

// Losses i.i.d. uniform on [0, M], uniform outcome distribution.
FiniteProblem make_random_finite_problem(const RandomProblemOptions& opts, std::uint64_t seed);

// Every objective data-independent: true and empirical values coincide.
FiniteProblem make_all_trivial_problem(std::size_t hypotheses, std::size_t objectives,
                                       std::uint64_t seed);

struct QuarterCircleOptions {
  std::size_t front_points = 91;  // 1 degree spacing
  double radius = 0.5;
  // Extra hypotheses per front point, strictly outside the circle.
  std::size_t dominated_per_point = 2;
  std::size_t outcomes = 64;  // must be even
  double loss_bound = 1.0;
};

// N = 2 problem whose true front is a dense sampling of the quarter circle
// of the given radius, including both axis end points, so its front is ray
// complete up to the grid spacing. Each per-outcome loss is the true value
// plus a zero-mean +-s perturbation.
FiniteProblem make_quarter_circle_problem(const QuarterCircleOptions& opts, std::uint64_t seed);

// Discretized counterexample: x takes `cells` equally likely values, y is a
// fair coin, hypotheses are every labeling of the cells with at most
// max_segments - 1 label changes. Objective 0 is the jump count (trivial),
// objective 1 the 0/1 loss, whose true value is 1/2 for every hypothesis.
FiniteProblem make_segmentation_finite_problem(std::size_t cells, std::size_t max_segments);

// Exact expectations; trivial objectives are copied from the table.
std::vector<ObjectiveVector> finite_true_objectives(const FiniteProblem& p);

struct Dataset {
  std::uint64_t seed = 0;
  std::vector<std::size_t> outcomes;
};

// n i.i.d. outcome indices drawn from the outcome distribution.
Dataset sample_dataset(const FiniteProblem& p, std::size_t n, std::uint64_t seed);

// subsets[i] lists the dataset positions used for objective i; an empty
// `subsets` means every objective uses the whole dataset.
std::vector<ObjectiveVector> finite_empirical_objectives(
    const FiniteProblem& p, const Dataset& data,
    std::span<const std::vector<std::size_t>> subsets = {});

// Position subsets 0..n_i-1 for per-objective sample counts.
std::vector<std::vector<std::size_t>> prefix_subsets(std::span<const std::size_t> per_objective_n);

std::vector<EvaluatedHypothesis> evaluated_hypotheses(std::span<const ObjectiveVector> true_values,
                                                      std::span<const ObjectiveVector> empirical);

// ---------------------------------------------------------------------------
// Piecewise-constant segmentation

struct SegSample {
  double x = 0.0;
  int label = 0;
};

// Piecewise-constant classifier on [0, 1] in minimal form: adjacent segments
// carry different labels, so jumps() == segment_labels.size() - 1.
struct SegHypothesis {
  std::vector<double> jump_positions;
  std::vector<int> segment_labels;

  std::size_t jumps() const noexcept { return jump_positions.size(); }
  int predict(double x) const;
};

struct SegFit {
  SegHypothesis hypothesis;
  std::size_t errors = 0;
  double error_rate = 0.0;
};

// x uniform on [0, 1], label a fair coin.
std::vector<SegSample> sample_segmentation_data(std::size_t n, std::uint64_t seed);

// Global empirical 0/1 minimizer among hypotheses with at most max_jumps
// jumps. Samples are stably sorted by x first; jumps sit at midpoints between
// consecutive sorted x values. Ties prefer fewer jumps, then label 0 first.
SegFit segmentation_erm(std::span<const SegSample> samples, std::size_t max_jumps);

struct SegFrontPoint {
  std::size_t jumps = 0;
  std::size_t errors = 0;
  double error_rate = 0.0;
};

struct SegmentationFront {
  // Minimal error count e_k for at most k jumps, k = 0 .. K-1.
  std::vector<SegFrontPoint> profile;
  // Empirically Pareto-optimal (jumps, error) pairs: k = 0 and every k with
  // e_k < e_{k-1}.
  std::vector<SegFrontPoint> pareto;
};

SegmentationFront segmentation_empirical_front(std::span<const SegSample> samples,
                                               std::size_t max_segments);

// ---------------------------------------------------------------------------
// LASSO

class LassoProblem {
 public:
  // design is row-major n x d.
  LassoProblem(std::size_t n, std::size_t d, std::vector<double> design, std::vector<double> targets);

  std::size_t samples() const noexcept { return n_; }
  std::size_t features() const noexcept { return d_; }
  double x(std::size_t i, std::size_t j) const noexcept { return design_[i * d_ + j]; }
  double y(std::size_t i) const noexcept { return targets_[i]; }
  std::span<const double> design() const noexcept { return design_; }
  std::span<const double> targets() const noexcept { return targets_; }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> design_;
  std::vector<double> targets_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> last_iterate)
      : Error(what), last_iterate_(std::move(last_iterate)) {}
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::vector<double> last_iterate_;
};

struct LassoOptions {
  double tolerance = 1e-10;  // stop when the largest coordinate change is below this
  std::size_t max_sweeps = 100000;
  // Called after every full sweep with the current coefficients.
  std::function<void(std::span<const double>)> on_sweep;
};

// (1/n) ||y - X b||^2
double lasso_fit(const LassoProblem& p, std::span<const double> beta);
double l1_norm(std::span<const double> beta);
double lasso_objective(const LassoProblem& p, std::span<const double> beta, double lambda);

// Smallest lambda with the all-zero solution: (2/n) max_j |X_j^T y|.
double lambda_max(const LassoProblem& p);

// Cyclic coordinate descent with soft thresholding.
std::vector<double> lasso_coordinate_descent(const LassoProblem& p, double lambda,
                                             const LassoOptions& opts = {},
                                             std::span<const double> warm_start = {});

// `count` log-spaced values from lambda_max down to lambda_max * ratio.
std::vector<double> default_lambda_grid(const LassoProblem& p, std::size_t count = 50,
                                        double ratio = 1e-3);

struct LassoPathPoint {
  double lambda = 0.0;
  std::vector<double> beta;
  double fit = 0.0;  // empirical squared loss
  double l1 = 0.0;   // regularizer; identical true and empirical value
};

// Warm-started path over a strictly decreasing grid.
std::vector<LassoPathPoint> lasso_path(const LassoProblem& p, std::span<const double> lambda_grid,
                                       const LassoOptions& opts = {});

struct LinearGroundTruth {
  std::vector<double> coefficients;
  double noise_sd = 0.0;
};

// Gaussian design, y = X beta* + noise.
LassoProblem make_linear_problem(std::size_t n, std::size_t d, const LinearGroundTruth& truth,
                                 std::uint64_t seed);

// Fixed-design expected squared loss (1/n) ||X (beta* - beta)||^2 + sigma^2.
double lasso_true_fit(const LassoProblem& p, const LinearGroundTruth& truth,
                      std::span<const double> beta);

// ---------------------------------------------------------------------------
// TERM groups

// Per-model, per-group, per-sample losses; all groups have the same size.
struct TermGroupsProblem {
  std::size_t groups = 0;
  std::size_t samples_per_group = 0;
  std::vector<std::vector<std::vector<double>>> model_losses;

  void validate() const;
};

TermGroupsProblem make_term_groups_problem(std::size_t models, std::size_t groups,
                                           std::size_t samples_per_group, std::uint64_t seed);

// Arithmetic mean of every group.
std::vector<double> term_group_risks(std::span<const std::vector<double>> group_losses);

}  // namespace paretolab
