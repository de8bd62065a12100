#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "paretolab/error.hpp"
#include "paretolab/verify.hpp"

using namespace paretolab;

namespace {

VerificationConfig standard(std::size_t trials, std::uint64_t seed = 1) {
  VerificationConfig cfg;
  cfg.problem = std::make_shared<const FiniteProblem>(make_random_finite_problem({}, 1000 + seed));
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

// Terms far too small to hold: forces violations so witnesses can be checked.
std::vector<TermSpec> tiny_terms(std::size_t objectives, double value) {
  std::vector<TermSpec> out;
  for (std::size_t i = 0; i < objectives; ++i) out.push_back(TermSpec::user_table({{1, value}}, i));
  return out;
}

void require_same(const HarnessReport& a, const HarnessReport& b) {
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t k = 0; k < a.checks.size(); ++k) {
    CHECK(a.checks[k].events == b.checks[k].events);
    CHECK(a.checks[k].worst_margin == b.checks[k].worst_margin);
  }
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t t = 0; t < a.trials.size(); ++t) {
    CHECK(a.trials[t].seed == b.trials[t].seed);
    CHECK(a.trials[t].empirical_pareto == b.trials[t].empirical_pareto);
    REQUIRE(a.trials[t].checks.size() == b.trials[t].checks.size());
    for (std::size_t c = 0; c < a.trials[t].checks.size(); ++c) {
      CHECK(a.trials[t].checks[c].margin == b.trials[t].checks[c].margin);
      CHECK(a.trials[t].checks[c].witness == b.trials[t].checks[c].witness);
    }
  }
}

// Fewest errors using exactly j jumps on 4 evenly spaced samples.
std::size_t brute_errors(const std::vector<int>& labels, std::size_t jumps) {
  std::size_t best = labels.size() + 1;
  for (unsigned mask = 0; mask < (1u << labels.size()); ++mask) {
    std::size_t j = 0, e = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const int l = (mask >> i) & 1;
      e += l != labels[i];
      if (i > 0 && l != static_cast<int>((mask >> (i - 1)) & 1)) ++j;
    }
    if (j == jumps) best = std::min(best, e);
  }
  return best;
}

}  // namespace

TEST_CASE("binomial ceiling") {
  CHECK(binomial_ceiling(0.1, 1000) == doctest::Approx(0.1 + 2.0 * std::sqrt(0.09 / 1000.0)));
  CHECK(binomial_ceiling(0.5, 1) == doctest::Approx(1.5));
  CHECK_THROWS_AS(binomial_ceiling(0.1, 0), ParameterError);
}

TEST_CASE("sweeps are deterministic and cycle through the requested kinds") {
  SweepSpec spec;
  spec.count = 9;
  spec.kinds = {ScalarizationKind::Chebyshev, ScalarizationKind::Tilted, ScalarizationKind::WeightedPNorm};
  const auto a = sample_sweep(spec, 3, 5);
  CHECK(a == sample_sweep(spec, 3, 5));
  CHECK(a != sample_sweep(spec, 3, 6));
  REQUIRE(a.size() == 9);
  for (std::size_t k = 0; k < 9; ++k) CHECK(a[k].kind() == spec.kinds[k % 3]);
  for (const auto& s : a) {
    if (s.kind() == ScalarizationKind::Tilted) {
      CHECK(s.tilt() >= -10.0);
      CHECK(s.tilt() <= 10.0);
    }
  }
  spec.kinds.clear();
  CHECK_THROWS_AS(sample_sweep(spec, 3, 5), ConfigError);
}

TEST_CASE("verification configs are validated") {
  VerificationConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = standard(10);
  cfg.trials = 0;
  CHECK_THROWS_AS(verify_lemma1(cfg), ConfigError);
  cfg = standard(10);
  cfg.delta = 1.0;
  CHECK_THROWS_AS(verify_lemma1(cfg), ConfigError);
  cfg = standard(10);
  cfg.terms = {TermSpec::hoeffding(100, 1, 0)};
  CHECK_THROWS_AS(verify_pareto_forward(cfg), ConfigError);
  cfg = standard(10);
  cfg.per_objective_n = {10, 0};
  CHECK_THROWS_AS(verify_pareto_single(cfg), ConfigError);
}

TEST_CASE("default terms are hoeffding for data-dependent objectives and zero otherwise") {
  VerificationConfig cfg = standard(1);
  const auto terms = cfg.resolved_terms();
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].kind == TermKind::HoeffdingFinite);
  CHECK(terms[0].class_size == 100.0);
  cfg.problem = std::make_shared<const FiniteProblem>(make_segmentation_finite_problem(6, 3));
  CHECK(cfg.resolved_terms()[0].kind == TermKind::TrivialZero);
  CHECK(cfg.resolved_terms()[1].kind == TermKind::HoeffdingFinite);
}

TEST_CASE("all-trivial problems never violate any harness") {
  VerificationConfig cfg;
  cfg.problem = std::make_shared<const FiniteProblem>(make_all_trivial_problem(40, 3, 2));
  cfg.trials = 50;
  cfg.n = 20;
  for (const auto& rep : {verify_lemma1(cfg), verify_scalarization(cfg), verify_pareto_single(cfg),
                          verify_pareto_forward(cfg)}) {
    for (const auto& c : rep.checks) {
      CHECK(c.events == 0);
      CHECK(c.status == CheckStatus::Pass);
    }
  }
  // The empirical and true Pareto sets coincide, so forward witnesses are the points themselves.
  const auto fwd = verify_pareto_forward(cfg);
  for (const auto& t : fwd.trials) {
    CHECK(t.empirical_pareto == t.true_pareto);
    CHECK(t.checks[0].witness[0] == t.checks[0].witness[1]);
  }
}

TEST_CASE("all-trivial problem with a ray-complete front passes the backward check exactly") {
  // One hypothesis per degree on the unit quarter circle, all objectives trivial.
  const std::size_t H = 91;
  std::vector<double> table;
  for (std::size_t h = 0; h < H; ++h) {
    const double a = static_cast<double>(h) * 3.14159265358979323846 / 180.0;
    table.push_back(0.5 * std::cos(a));
    table.push_back(0.5 * std::sin(a));
  }
  VerificationConfig cfg;
  cfg.problem = std::make_shared<const FiniteProblem>(
      FiniteProblem(H, 1, 2, std::vector<double>(H * 2, 0.0), {1.0}, 1.0, {true, true}, table));
  cfg.trials = 20;
  cfg.n = 5;
  const auto rep = verify_pareto_backward(cfg);
  CHECK(rep.check("pareto-backward").status == CheckStatus::Pass);
  CHECK(rep.check("pareto-backward").events == 0);
  CHECK(rep.metrics.at("ray_completeness") == 1.0);
}

TEST_CASE("standard configuration stays below the ceiling") {
  const auto cfg = standard(200);
  for (const auto& rep : {verify_lemma1(cfg), verify_scalarization(cfg), verify_pareto_single(cfg),
                          verify_pareto_forward(cfg)}) {
    CHECK(rep.passed());
    for (const auto& c : rep.checks) CHECK(c.frequency <= binomial_ceiling(0.1, 200));
  }
}

TEST_CASE("doubling n shrinks the largest deviation by about one over root two") {
  auto cfg = standard(300, 7);
  cfg.keep_trials = false;
  cfg.n = 500;
  const double at500 = verify_lemma1(cfg).metrics.at("mean_max_deviation");
  cfg.n = 1000;
  const double at1000 = verify_lemma1(cfg).metrics.at("mean_max_deviation");
  CHECK(at1000 / at500 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("reports do not depend on the thread count") {
  auto cfg = standard(64, 3);
  cfg.terms = tiny_terms(2, 0.01);
  cfg.threads = 1;
  const auto serial = verify_pareto_forward(cfg);
  cfg.threads = 4;
  const auto parallel = verify_pareto_forward(cfg);
  require_same(serial, parallel);
  cfg.threads = 3;
  require_same(verify_scalarization(cfg), [&] {
    auto c = cfg;
    c.threads = 1;
    return verify_scalarization(c);
  }());
}

TEST_CASE("violation witnesses replay from the trial seed") {
  auto cfg = standard(30, 4);
  cfg.terms = tiny_terms(2, 1e-4);
  const auto rep = verify_lemma1(cfg);
  CHECK(rep.check("uniform-deviation").events > 0);
  const auto truth = finite_true_objectives(*cfg.problem);
  for (const auto& t : rep.trials) {
    CHECK(t.seed == derive_seed(cfg.seed, t.trial));
    const auto emp = finite_empirical_objectives(*cfg.problem, sample_dataset(*cfg.problem, cfg.n, t.seed));
    const auto& c = t.checks[0];
    const std::size_t h = c.witness[0], i = c.witness[1];
    CHECK(c.margin == std::abs(truth[h][i] - emp[h][i]) - 1e-4);
    CHECK(c.event == (c.margin > kViolationTolerance));
  }
}

TEST_CASE("single hypothesis class satisfies the excess bound trivially") {
  VerificationConfig cfg;
  cfg.problem = std::make_shared<const FiniteProblem>(make_random_finite_problem({1, 16, 2, 1.0}, 5));
  cfg.trials = 50;
  cfg.terms = tiny_terms(2, 1e-9);
  const auto rep = verify_scalarization(cfg);
  CHECK(rep.check("scalarized-excess").events == 0);
  CHECK(rep.check("scalarized-deviation").events > 0);
}

TEST_CASE("with one objective the single-front check is the classical excess bound") {
  VerificationConfig cfg;
  cfg.problem = std::make_shared<const FiniteProblem>(make_random_finite_problem({50, 32, 1, 1.0}, 8));
  cfg.trials = 100;
  cfg.n = 40;
  cfg.terms = tiny_terms(1, 0.002);
  const auto rep = verify_pareto_single(cfg);
  const auto truth = finite_true_objectives(*cfg.problem);
  double best = INFINITY;
  for (const auto& v : truth) best = std::min(best, v[0]);
  for (const auto& t : rep.trials) {
    const auto emp = finite_empirical_objectives(*cfg.problem, sample_dataset(*cfg.problem, cfg.n, t.seed));
    double emp_best = INFINITY;
    for (const auto& v : emp) emp_best = std::min(emp_best, v[0]);
    double worst_excess = -INFINITY;
    for (std::size_t h = 0; h < emp.size(); ++h) {
      if (emp[h][0] == emp_best) worst_excess = std::max(worst_excess, truth[h][0] - best - 0.004);
    }
    CHECK(t.checks[0].margin == doctest::Approx(worst_excess).epsilon(1e-12));
  }
}

TEST_CASE("larger terms never add forward violations") {
  auto cfg = standard(100, 9);
  cfg.terms = tiny_terms(2, 0.005);
  const auto small = verify_pareto_forward(cfg);
  cfg.terms = tiny_terms(2, 0.010);
  const auto large = verify_pareto_forward(cfg);
  CHECK(small.check("pareto-forward").events > 0);
  for (std::size_t t = 0; t < small.trials.size(); ++t) {
    if (large.trials[t].checks[0].event) CHECK(small.trials[t].checks[0].event);
  }
  CHECK(large.check("pareto-forward").events <= small.check("pareto-forward").events);
}

TEST_CASE("backward check runs on the quarter circle and is not applicable without ray completeness") {
  VerificationConfig cfg;
  cfg.problem = std::make_shared<const FiniteProblem>(make_quarter_circle_problem({}, 2));
  cfg.trials = 100;
  const auto rep = verify_pareto_backward(cfg);
  CHECK(rep.metrics.at("ray_completeness") == 1.0);
  CHECK(rep.check("pareto-backward").status == CheckStatus::Pass);

  cfg.problem = std::make_shared<const FiniteProblem>(make_segmentation_finite_problem(8, 4));
  const auto na = verify_pareto_backward(cfg);
  CHECK(na.check("pareto-backward").status == CheckStatus::NotApplicable);
  CHECK(na.metrics.at("ray_completeness") < 0.1);
  CHECK(na.passed());
  CHECK(na.trials.empty());
}

TEST_CASE("impossibility needs room for a hypothesis beyond the gap") {
  ImpossibilityConfig cfg;
  cfg.max_segments = 5;
  cfg.gap = 4.0;
  CHECK_THROWS_AS(demonstrate_impossibility(cfg), ConfigError);
  cfg.gap = 3.0;
  cfg.trials = 5;
  CHECK_NOTHROW(demonstrate_impossibility(cfg));
}

TEST_CASE("impossibility at the standard size succeeds almost always") {
  ImpossibilityConfig cfg;
  cfg.seed = 5;
  const auto rep = demonstrate_impossibility(cfg);
  CHECK(rep.passed());
  CHECK(rep.check("impossibility").frequency >= 0.9);
  CHECK(rep.metrics.at("true_front_ray_completeness") == doctest::Approx(1.0 / 90.0));
  REQUIRE(rep.notes.size() == 1);
  CHECK(rep.notes[0].find("NOT-APPLICABLE") != std::string::npos);
}

TEST_CASE("four samples and one allowed jump: success iff one jump removes an error") {
  std::size_t successes = 0;
  for (unsigned pattern = 0; pattern < 16; ++pattern) {
    std::vector<int> labels(4);
    std::vector<SegSample> s(4);
    for (std::size_t i = 0; i < 4; ++i) {
      labels[i] = (pattern >> i) & 1;
      s[i] = {0.1 + 0.2 * static_cast<double>(i), labels[i]};
    }
    const bool oracle = brute_errors(labels, 1) < brute_errors(labels, 0);
    const auto front = segmentation_empirical_front(s, 2);
    CHECK((front.pareto.back().jumps > 0) == oracle);
    successes += oracle;
  }
  // Labels are fair coins, so every pattern is equally likely.
  ImpossibilityConfig cfg;
  cfg.n = 4;
  cfg.max_segments = 2;
  cfg.gap = 0.0;
  cfg.trials = 4000;
  cfg.keep_trials = false;
  const double expected = static_cast<double>(successes) / 16.0;
  const double freq = demonstrate_impossibility(cfg).check("impossibility").frequency;
  CHECK(std::abs(freq - expected) <= 4.0 * std::sqrt(expected * (1 - expected) / 4000.0));
}

TEST_CASE("a gap of at least n cannot be exceeded") {
  ImpossibilityConfig cfg;
  cfg.n = 10;
  cfg.max_segments = 14;
  cfg.gap = 10.0;
  cfg.trials = 50;
  const auto rep = demonstrate_impossibility(cfg);
  CHECK(rep.check("impossibility").events == 0);
  CHECK(rep.check("impossibility").status == CheckStatus::Fail);
}

TEST_CASE("lasso study on a realizable design") {
  LassoStudyConfig cfg;
  cfg.seed = 3;
  const auto study = lasso_pareto_study(cfg);
  CHECK(study.realizable);
  CHECK(study.monotone);
  CHECK(study.all_on_front);
  CHECK(study.starts_at_zero);
  CHECK(study.vanishing_fit);
  CHECK(study.points.front().l1 == 0.0);
  CHECK(study.points.back().empirical_fit < 1e-4 * study.points.front().empirical_fit);
  CHECK(lasso_study_report(study, 3).passed());
}

TEST_CASE("lasso study with noise marks the endpoint check not applicable") {
  LassoStudyConfig cfg;
  cfg.truth = {{1, 0, 0, 2, 0, 0, -1, 0, 0, 0}, 0.5};
  const auto study = lasso_pareto_study(cfg);
  CHECK_FALSE(study.realizable);
  const auto rep = lasso_study_report(study, 0);
  CHECK(rep.check("realizable-endpoints").status == CheckStatus::NotApplicable);
  CHECK(rep.check("path-monotone").status == CheckStatus::Pass);
  // True fit never drops below the noise floor.
  for (const auto& p : study.points) CHECK(p.true_fit >= 0.25 - 1e-12);
}

TEST_CASE("cortes study") {
  CortesStudyConfig cfg;
  cfg.params.n = 1000;
  cfg.params.epsilon = 0.01;
  const auto study = cortes_study(cfg);
  CHECK(study.rows.size() == 4);
  CHECK(study.improved_tighter);
  CHECK(study.scaling_constant);
  CHECK(cortes_study_report(study).passed());
}
