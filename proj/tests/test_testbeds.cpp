#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "paretolab/bounds.hpp"
#include "paretolab/error.hpp"
#include "paretolab/random.hpp"
#include "paretolab/testbeds.hpp"
#include "support.hpp"

using namespace paretolab;
using testing_support::exhaustive_errors_by_jumps;

namespace {

FiniteProblem constant_problem(double c) {
  return FiniteProblem(3, 4, 2, std::vector<double>(3 * 4 * 2, c), std::vector<double>(4, 0.25));
}

std::vector<SegSample> labelled(const std::vector<int>& labels) {
  std::vector<SegSample> s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    s.push_back({(static_cast<double>(i) + 0.5) / static_cast<double>(labels.size()), labels[i]});
  }
  return s;
}

std::size_t errors_of(const SegHypothesis& h, const std::vector<SegSample>& s) {
  std::size_t e = 0;
  for (const auto& v : s) e += h.predict(v.x) != v.label;
  return e;
}

double soft(double v, double t) { return v > t ? v - t : (v < -t ? v + t : 0.0); }

}  // namespace

TEST_CASE("finite problems validate their tables") {
  CHECK_THROWS_AS(FiniteProblem(0, 1, 1, {}, {}), ConfigError);
  CHECK_THROWS_AS(FiniteProblem(1, 2, 1, {0.1}, {0.5, 0.5}), DimensionError);
  CHECK_THROWS_AS(FiniteProblem(1, 2, 1, {0.1, 0.2}, {0.6, 0.6}), ConfigError);
  CHECK_THROWS_AS(FiniteProblem(1, 2, 1, {0.1, 1.2}, {0.5, 0.5}), ConfigError);
  CHECK_THROWS_AS(FiniteProblem(1, 2, 1, {0.1, 0.2}, {0.5, 0.5}, 1.0, {true}), DimensionError);
}

TEST_CASE("true objectives are exact expectations") {
  for (const auto& v : finite_true_objectives(constant_problem(0.7))) {
    CHECK(v[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(v[1] == doctest::Approx(0.7).epsilon(1e-15));
  }
  // Point mass on outcome 2.
  std::vector<double> losses(2 * 3 * 2);
  for (std::size_t k = 0; k < losses.size(); ++k) losses[k] = static_cast<double>(k) / 20.0;
  const FiniteProblem point(2, 3, 2, losses, {0.0, 0.0, 1.0});
  const auto t = finite_true_objectives(point);
  CHECK(t[1][0] == point.loss(1, 2, 0));
  CHECK(t[1][1] == point.loss(1, 2, 1));

  RandomProblemOptions opts{5, 4, 2, 1.0};
  const auto p = make_random_finite_problem(opts, 9);
  const auto truth = finite_true_objectives(p);
  for (std::size_t h = 0; h < 5; ++h) {
    for (std::size_t i = 0; i < 2; ++i) {
      double s = 0.0;
      for (std::size_t z = 0; z < 4; ++z) s += p.prob(z) * p.loss(h, z, i);
      CHECK(truth[h][i] == doctest::Approx(s).epsilon(1e-15));
    }
  }
}

TEST_CASE("random problems respect their options and seeds") {
  const RandomProblemOptions opts{100, 64, 3, 2.0};
  const auto a = make_random_finite_problem(opts, 4);
  const auto b = make_random_finite_problem(opts, 4);
  CHECK(a.hypotheses() == 100);
  CHECK(a.objectives() == 3);
  CHECK(std::equal(a.losses().begin(), a.losses().end(), b.losses().begin()));
  double total = 0.0;
  for (double p : a.outcome_probs()) total += p;
  CHECK(std::abs(total - 1.0) <= 1e-12);
  for (double v : a.losses()) {
    CHECK(v >= 0.0);
    CHECK(v <= 2.0);
  }
}

TEST_CASE("datasets are reproducible and respect the distribution support") {
  const std::vector<double> losses(2 * 3, 0.5);
  const FiniteProblem p(2, 3, 1, losses, {0.5, 0.0, 0.5});
  const auto d = sample_dataset(p, 1000, 5);
  CHECK(d.seed == 5);
  CHECK(d.outcomes.size() == 1000);
  CHECK(std::count(d.outcomes.begin(), d.outcomes.end(), 1) == 0);
  CHECK(sample_dataset(p, 1000, 5).outcomes == d.outcomes);
  CHECK_THROWS_AS(sample_dataset(p, 0, 5), ConfigError);
}

TEST_CASE("exact-frequency datasets reproduce the true objectives") {
  const auto p = make_random_finite_problem({20, 8, 2, 1.0}, 3);
  Dataset full;
  for (std::size_t z = 0; z < 8; ++z) full.outcomes.push_back(z);
  const auto emp = finite_empirical_objectives(p, full);
  const auto truth = finite_true_objectives(p);
  for (std::size_t h = 0; h < 20; ++h) {
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(emp[h][i] - truth[h][i]) <= 1e-12);
  }
}

TEST_CASE("trivial objectives are the same for every dataset") {
  const auto p = make_all_trivial_problem(30, 3, 8);
  const auto truth = finite_true_objectives(p);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CHECK(finite_empirical_objectives(p, sample_dataset(p, 17, seed)) == truth);
  }
}

TEST_CASE("per-objective subsets") {
  const std::vector<std::size_t> counts{2, 4};
  const auto subsets = prefix_subsets(counts);
  CHECK(subsets[0] == std::vector<std::size_t>{0, 1});
  CHECK(subsets[1] == std::vector<std::size_t>{0, 1, 2, 3});

  // Objective 0 sees outcomes {0, 1}; objective 1 all four.
  std::vector<double> losses(4 * 2);
  for (std::size_t z = 0; z < 4; ++z) {
    losses[z * 2] = static_cast<double>(z) / 4.0;
    losses[z * 2 + 1] = static_cast<double>(z) / 4.0;
  }
  const FiniteProblem p(1, 4, 2, losses, std::vector<double>(4, 0.25));
  const Dataset d{0, {0, 1, 2, 3}};
  const auto emp = finite_empirical_objectives(p, d, subsets);
  CHECK(emp[0][0] == doctest::Approx(0.125));
  CHECK(emp[0][1] == doctest::Approx(0.375));
  const std::vector<std::vector<std::size_t>> empty{{}, {0}};
  CHECK_THROWS_AS(finite_empirical_objectives(p, d, empty), ConfigError);
}

TEST_CASE("large samples stay within the hoeffding term") {
  const auto p = make_random_finite_problem({100, 64, 2, 1.0}, 77);
  const auto truth = finite_true_objectives(p);
  const double delta_prime = 0.01;
  const double term = evaluate_term(TermSpec::hoeffding(100, 1.0), 100000, delta_prime);
  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto emp = finite_empirical_objectives(p, sample_dataset(p, 100000, seed));
    double worst = 0.0;
    for (std::size_t h = 0; h < 100; ++h) {
      for (std::size_t i = 0; i < 2; ++i) worst = std::max(worst, std::abs(emp[h][i] - truth[h][i]));
    }
    within += worst <= term;
  }
  CHECK(within >= 99);
}

TEST_CASE("quarter circle problem has a dense ray-complete front") {
  const auto p = make_quarter_circle_problem({}, 3);
  const auto front = pareto_filter(finite_true_objectives(p)).front;
  CHECK(front.size() == 91);
  for (const auto& v : front) CHECK(std::hypot(v[0], v[1]) == doctest::Approx(0.5).epsilon(1e-12));
  const auto rep = ray_completeness_check(front, {90, 0.02, true});
  CHECK(rep.covered_fraction == 1.0);
  for (double v : p.losses()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("segmentation finite problem gives every labeling true risk one half") {
  const auto p = make_segmentation_finite_problem(6, 3);
  CHECK(p.is_trivial(0));
  CHECK_FALSE(p.is_trivial(1));
  // Labelings of 6 cells with at most 2 changes: 2 * (1 + 5 + 10).
  CHECK(p.hypotheses() == 2 * (1 + 5 + 10));
  // Summing twelve probabilities of 1/12 rounds, so equality is up to ulps.
  for (const auto& v : finite_true_objectives(p)) CHECK(v[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("segmentation examples") {
  const auto s = labelled({0, 1, 0, 1});
  CHECK(segmentation_erm(s, 0).errors == 2);
  CHECK(segmentation_erm(s, 1).errors == 1);
  CHECK(segmentation_erm(s, 3).errors == 0);
  CHECK(segmentation_erm(s, 3).hypothesis.jumps() == 3);
  CHECK(segmentation_erm(s, 0).error_rate == 0.5);
  CHECK_THROWS_AS(segmentation_erm(std::vector<SegSample>{}, 1), EmptyInputError);
}

TEST_CASE("segmentation fronts") {
  const auto same = segmentation_empirical_front(labelled({1, 1, 1, 1, 1}), 4);
  REQUIRE(same.pareto.size() == 1);
  CHECK(same.pareto[0].jumps == 0);
  CHECK(same.pareto[0].errors == 0);

  const auto alt = segmentation_empirical_front(labelled({0, 1, 0, 1, 0, 1}), 8);
  CHECK(alt.pareto.back().jumps == 5);
  CHECK(alt.pareto.back().errors == 0);
  CHECK(alt.pareto.size() == 4);  // 3, 2, 1, 0 errors at 0, 1, 3, 5 jumps
}

TEST_CASE("property: segmentation DP agrees with exhaustive search") {
  Rng rng(41);
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 1 + rng.uniform_index(12);
    const std::size_t k = rng.uniform_index(5);
    std::vector<SegSample> s(n);
    for (auto& v : s) v = {rng.uniform(), rng.coin() ? 1 : 0};
    const auto by_jumps = exhaustive_errors_by_jumps(s);
    std::size_t oracle = n + 1;
    for (std::size_t j = 0; j <= std::min(k, n - 1); ++j) oracle = std::min(oracle, by_jumps[j]);
    const auto fit = segmentation_erm(s, k);
    CHECK(fit.errors == oracle);
    CHECK(fit.hypothesis.jumps() <= k);
    CHECK(errors_of(fit.hypothesis, s) == fit.errors);

    const auto front = segmentation_empirical_front(s, k + 1);
    std::size_t running = n + 1;
    for (std::size_t j = 0; j <= k; ++j) {
      if (j < n) running = std::min(running, by_jumps[j]);
      CHECK(front.profile[j].errors == running);
    }
  }
}

TEST_CASE("property: segmentation error never increases with more jumps") {
  Rng rng(42);
  for (int inst = 0; inst < 100; ++inst) {
    const auto s = sample_segmentation_data(1 + rng.uniform_index(60), rng.next_u64());
    std::vector<SegSample> sorted = s;
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.x < b.x; });
    std::size_t runs = 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) runs += sorted[i].label != sorted[i - 1].label;
    std::size_t prev = s.size() + 1;
    for (std::size_t k = 0; k < runs + 2; ++k) {
      const std::size_t e = segmentation_erm(s, k).errors;
      CHECK(e <= prev);
      prev = e;
      if (k >= runs - 1) CHECK(e == 0);
    }
  }
}

TEST_CASE("lasso at lambda max is exactly zero") {
  const auto p = make_linear_problem(50, 5, {{1.0, -2.0, 0.0, 0.5, 0.0}, 0.3}, 1);
  const auto beta = lasso_coordinate_descent(p, lambda_max(p));
  for (double b : beta) CHECK(b == 0.0);
  const auto above = lasso_coordinate_descent(p, 2.0 * lambda_max(p));
  for (double b : above) CHECK(b == 0.0);
  CHECK(l1_norm(lasso_coordinate_descent(p, 0.99 * lambda_max(p))) > 0.0);
}

TEST_CASE("lasso with lambda zero recovers least squares") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 40, d = 6;
    const auto p = make_linear_problem(n, d, {std::vector<double>(d, 0.7), 1.0}, seed);
    Eigen::MatrixXd X(n, d);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y(i) = p.y(i);
      for (std::size_t j = 0; j < d; ++j) X(i, j) = p.x(i, j);
    }
    const Eigen::VectorXd ols = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    LassoOptions opts;
    opts.tolerance = 1e-13;
    const auto beta = lasso_coordinate_descent(p, 0.0, opts);
    for (std::size_t j = 0; j < d; ++j) CHECK(beta[j] == doctest::Approx(ols(j)).epsilon(1e-8));
  }
}

TEST_CASE("single constant feature has a closed-form lasso solution") {
  const std::vector<double> y{0.5, 1.5, 2.0, -0.4, 1.1};
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / 5.0;
  const LassoProblem p(5, 1, std::vector<double>(5, 1.0), y);
  for (double lambda : {0.0, 0.3, 1.0, 2.0 * mean, 5.0}) {
    CHECK(lasso_coordinate_descent(p, lambda)[0] == doctest::Approx(soft(mean, lambda / 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("property: coordinate descent never increases the lasso objective") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = make_linear_problem(60, 8, {{1, 0, -1, 0, 2, 0, 0, 0.5}, 0.5}, seed);
    const double lambda = lambda_max(p) * 0.1 * static_cast<double>(1 + seed % 5);
    std::vector<double> values;
    LassoOptions opts;
    opts.on_sweep = [&](std::span<const double> b) { values.push_back(lasso_objective(p, b, lambda)); };
    lasso_coordinate_descent(p, lambda, opts);
    REQUIRE(values.size() >= 1);
    CHECK(values.front() <= lasso_objective(p, std::vector<double>(8, 0.0), lambda) + 1e-12);
    for (std::size_t k = 1; k < values.size(); ++k) CHECK(values[k] <= values[k - 1] + 1e-12);
  }
}

TEST_CASE("lasso reports non-convergence with the last iterate") {
  const auto p = make_linear_problem(30, 4, {{1, 2, 3, 4}, 1.0}, 2);
  LassoOptions opts;
  opts.max_sweeps = 1;
  opts.tolerance = 1e-300;
  try {
    lasso_coordinate_descent(p, 0.01, opts);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.last_iterate().size() == 4);
  }
}

TEST_CASE("lasso path is monotone and starts at zero") {
  const auto p = make_linear_problem(100, 10, {{1.5, -2, 1, 0, 0, 0, 0, 0, 0, 0}, 0.5}, 3);
  const auto grid = default_lambda_grid(p);
  CHECK(grid.size() == 50);
  CHECK(grid.front() == lambda_max(p));
  CHECK(grid.back() == doctest::Approx(lambda_max(p) * 1e-3));
  const auto path = lasso_path(p, grid);
  CHECK(path.front().l1 == 0.0);
  double mean = 0.0, var = 0.0;
  for (std::size_t i = 0; i < 100; ++i) mean += p.y(i) / 100.0;
  for (std::size_t i = 0; i < 100; ++i) var += p.y(i) * p.y(i) / 100.0;
  CHECK(path.front().fit == doctest::Approx(var));
  for (std::size_t k = 1; k < path.size(); ++k) {
    CHECK(path[k - 1].l1 <= path[k].l1 + 1e-8);
    CHECK(path[k - 1].fit >= path[k].fit - 1e-8);
  }
  const std::vector<double> rising{0.1, 0.2};
  CHECK_THROWS_AS(lasso_path(p, rising), ParameterError);
}

TEST_CASE("true fit of the ground truth is the noise variance") {
  const LinearGroundTruth truth{{1.0, -1.0, 0.5}, 0.3};
  const auto p = make_linear_problem(80, 3, truth, 4);
  CHECK(lasso_true_fit(p, truth, truth.coefficients) == doctest::Approx(0.09));
  const std::vector<double> zero(3, 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < 80; ++i) {
    const double r = p.x(i, 0) - p.x(i, 1) + 0.5 * p.x(i, 2);
    s += r * r;
  }
  CHECK(lasso_true_fit(p, truth, zero) == doctest::Approx(s / 80.0 + 0.09));
}

TEST_CASE("group risks") {
  const std::vector<std::vector<double>> constant{{0.2, 0.2}, {0.2, 0.2, 0.2}};
  for (double r : term_group_risks(constant)) CHECK(r == doctest::Approx(0.2).epsilon(1e-15));
  const std::vector<std::vector<double>> single{{0.1}, {0.7}};
  CHECK(term_group_risks(single) == std::vector<double>{0.1, 0.7});
  const auto gp = make_term_groups_problem(3, 4, 25, 6);
  for (const auto& model : gp.model_losses) {
    const auto risks = term_group_risks(model);
    for (std::size_t g = 0; g < 4; ++g) {
      double s = 0.0;
      for (double v : model[g]) s += v;
      CHECK(risks[g] == doctest::Approx(s / 25.0).epsilon(1e-14));
    }
  }
}
