#pragma once

// Seeded Monte Carlo harnesses. Each harness draws T datasets, evaluates the
// inequality a result guarantees with probability >= 1 - delta, and reports
// how often it failed. A trial's seed is derive_seed(master_seed, trial), so
// any trial can be replayed on its own.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "paretolab/bounds.hpp"
#include "paretolab/core.hpp"
#include "paretolab/scalarize.hpp"
#include "paretolab/testbeds.hpp"

namespace paretolab {

inline constexpr double kViolationTolerance = 1e-12;

// delta + 2 sqrt(delta (1 - delta) / T)
double binomial_ceiling(double delta, std::size_t trials);

struct SweepSpec {
  std::size_t count = 100;
  std::vector<ScalarizationKind> kinds = {ScalarizationKind::Chebyshev, ScalarizationKind::Linear};
  double p = 2.0;  // WeightedPNorm members
  double tilt_min = -10.0;
  double tilt_max = 10.0;
};

// Deterministic sweep: member k cycles through `kinds`; weights are flat
// Dirichlet draws and tilts uniform on [tilt_min, tilt_max].
std::vector<Scalarization> sample_sweep(const SweepSpec& spec, std::size_t objectives,
                                        std::uint64_t seed);

struct VerificationConfig {
  std::shared_ptr<const FiniteProblem> problem;
  std::size_t n = 500;
  // Per-objective sample counts; empty means n for every objective.
  std::vector<std::size_t> per_objective_n;
  // When set, objective i uses its own block of n_i samples (dataset size
  // sum n_i); otherwise objective i uses the first n_i samples.
  bool disjoint_subsets = false;
  double delta = 0.1;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  // Empty: Hoeffding(|H|, M) for data-dependent objectives, TrivialZero for
  // data-independent ones.
  std::vector<TermSpec> terms;
  SweepSpec sweep;
  std::size_t threads = 0;  // 0: hardware concurrency
  RayCompletenessOptions ray{90, 0.02, true};
  bool keep_trials = true;

  void validate() const;
  std::vector<std::size_t> sample_counts() const;
  std::vector<TermSpec> resolved_terms() const;
};

// Outcome of one check in one trial. `event` is a violation for bound checks
// and a success for the impossibility demonstration. For inequalities
// lhs <= rhs the margin is lhs - rhs and event == (margin > 1e-12).
struct CheckRecord {
  std::string name;
  bool event = false;
  double margin = 0.0;
  std::vector<std::size_t> witness;
};

struct TrialReport {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<double> terms;
  std::vector<std::size_t> empirical_pareto;
  std::vector<std::size_t> true_pareto;
  std::vector<CheckRecord> checks;
  std::map<std::string, double> metrics;
};

enum class CheckStatus { Pass, Fail, NotApplicable };

const char* to_string(CheckStatus s);

// A frequency claim over trials. Upper claims pass when frequency <= threshold;
// lower claims pass when frequency >= threshold.
struct CheckSummary {
  std::string name;
  std::size_t trials = 0;
  std::size_t events = 0;
  double frequency = 0.0;
  double threshold = 0.0;
  bool upper_bound = true;
  double worst_margin = 0.0;
  CheckStatus status = CheckStatus::NotApplicable;
};

struct HarnessReport {
  std::string harness;
  std::uint64_t seed = 0;
  std::vector<CheckSummary> checks;
  std::vector<TrialReport> trials;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;

  // True when no check failed (NOT-APPLICABLE counts as not failed).
  bool passed() const;
  const CheckSummary& check(const std::string& name) const;
};

// |L_i(h) - L_hat_i(h)| <= C_i(n_i, H, delta') for all i, h.
HarnessReport verify_lemma1(const VerificationConfig& cfg);

// For every sampled scalarization U and every h:
// "scalarized-deviation": |L_U(h) - L_hat_U(h)| <= rhs(U)
// "scalarized-excess": L_U(m) <= L_U(h) + 2 rhs(U) for every empirical minimizer m.
HarnessReport verify_scalarization(const VerificationConfig& cfg);

// For every empirically Pareto-optimal h_hat and every h in H (stronger
// than only Pareto-optimal h): some i has L_i(h_hat) <= L_i(h) + 2 C_i.
HarnessReport verify_pareto_single(const VerificationConfig& cfg);

// For every truly Pareto-optimal h*, some empirically Pareto-optimal h_hat
// has L_i(h_hat) <= L_i(h*) + 2 C_i for all i.
HarnessReport verify_pareto_forward(const VerificationConfig& cfg);

struct BackwardPrecondition {
  bool applicable = false;
  double completeness = 0.0;
};

// Ray completeness of a true front under the configured grid and tolerance.
BackwardPrecondition backward_precondition(std::span<const ObjectiveVector> true_front,
                                           const RayCompletenessOptions& ray);

// For every empirically Pareto-optimal h_hat, some truly Pareto-optimal h*
// has L_i(h_hat) <= L_i(h*) + 2 C_i for all i. Reported NOT-APPLICABLE when
// the true front fails the ray-completeness precondition.
HarnessReport verify_pareto_backward(const VerificationConfig& cfg);

struct ImpossibilityConfig {
  std::size_t n = 200;
  std::size_t max_segments = 20;  // K
  double gap = 10.0;              // C
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  RayCompletenessOptions ray{90, 0.02, true};
  bool keep_trials = true;
};

// Success in a trial: some empirically Pareto-optimal segmentation has more
// than C jumps, while every truly Pareto-optimal hypothesis (the two
// constant classifiers, risk 1/2) has none. Passes at frequency >= 1/2.
HarnessReport demonstrate_impossibility(const ImpossibilityConfig& cfg);

struct LassoStudyConfig {
  std::size_t n = 100;
  std::size_t d = 10;
  LinearGroundTruth truth;  // empty coefficients: sparse default
  std::vector<double> lambda_grid;  // empty: default grid
  double solver_tolerance = 1e-12;
  double monotone_tolerance = 1e-8;
  double dominance_tolerance = 1e-6;
  std::uint64_t seed = 0;
};

struct LassoStudyPoint {
  double lambda = 0.0;
  double empirical_fit = 0.0;
  double true_fit = 0.0;
  double l1 = 0.0;
};

struct LassoStudy {
  LinearGroundTruth truth;
  std::vector<LassoStudyPoint> points;
  std::vector<std::size_t> empirical_front;
  bool monotone = false;
  bool all_on_front = false;
  bool realizable = false;
  bool starts_at_zero = false;
  bool vanishing_fit = false;
};

LassoStudy lasso_pareto_study(const LassoStudyConfig& cfg);
HarnessReport lasso_study_report(const LassoStudy& study, std::uint64_t seed);

struct CortesStudyConfig {
  CortesBoundParams params;
  std::vector<std::size_t> objective_counts{2, 4, 8, 16};
  double scaling_tolerance = 0.10;
};

struct CortesStudy {
  std::vector<BoundComparisonRow> rows;
  std::vector<double> confidence_over_sqrt_n;
  bool improved_tighter = false;
  bool scaling_constant = false;
};

CortesStudy cortes_study(const CortesStudyConfig& cfg);
HarnessReport cortes_study_report(const CortesStudy& study);

}  // namespace paretolab
