#include "paretolab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "paretolab/error.hpp"
#include "paretolab/random.hpp"

namespace paretolab {

namespace {

constexpr std::uint64_t kSweepStream = 0x5eed5eed5eed5eedULL;

std::size_t resolve_threads(std::size_t requested, std::size_t work) {
  std::size_t t = requested;
  if (t == 0) t = std::max(1U, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(t, work));
}

// Runs body(t) for t in [0, trials) and returns the reports in trial order,
// independent of scheduling.
template <class Body>
std::vector<TrialReport> run_trials(std::size_t trials, std::size_t threads, Body body) {
  std::vector<TrialReport> out(trials);
  const std::size_t workers = resolve_threads(threads, trials);
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) out[t] = body(t);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t t = next++; t < trials && !failed; t = next++) out[t] = body(t);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

CheckSummary summarize(const std::string& name, std::span<const TrialReport> trials,
                       double threshold, bool upper_bound) {
  CheckSummary s;
  s.name = name;
  s.trials = trials.size();
  s.threshold = threshold;
  s.upper_bound = upper_bound;
  s.worst_margin = -std::numeric_limits<double>::infinity();
  for (const auto& tr : trials) {
    for (const auto& c : tr.checks) {
      if (c.name != name) continue;
      s.events += c.event ? 1 : 0;
      s.worst_margin = std::max(s.worst_margin, c.margin);
    }
  }
  if (s.trials == 0) {
    s.worst_margin = 0.0;
    s.status = CheckStatus::NotApplicable;
    return s;
  }
  s.frequency = static_cast<double>(s.events) / static_cast<double>(s.trials);
  const bool ok = upper_bound ? s.frequency <= threshold : s.frequency >= threshold;
  s.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  return s;
}

CheckSummary deterministic_check(const std::string& name, bool ok, CheckStatus forced = CheckStatus::Pass) {
  CheckSummary s;
  s.name = name;
  s.trials = 1;
  s.events = ok ? 0 : 1;
  s.frequency = static_cast<double>(s.events);
  s.threshold = 0.0;
  s.upper_bound = true;
  s.status = forced == CheckStatus::NotApplicable ? forced : (ok ? CheckStatus::Pass : CheckStatus::Fail);
  return s;
}

CheckRecord inequality(std::string name, double margin, std::vector<std::size_t> witness) {
  CheckRecord r;
  r.name = std::move(name);
  r.margin = margin;
  r.event = margin > kViolationTolerance;
  r.witness = std::move(witness);
  return r;
}

// State shared by every trial of a finite-problem harness.
struct Setup {
  const FiniteProblem* problem = nullptr;
  std::vector<ObjectiveVector> truth;
  ParetoSet true_set;
  std::vector<std::vector<std::size_t>> subsets;
  std::size_t dataset_size = 0;
  std::vector<double> terms;
};

Setup prepare(const VerificationConfig& cfg) {
  cfg.validate();
  Setup s;
  s.problem = cfg.problem.get();
  s.truth = finite_true_objectives(*cfg.problem);
  s.true_set = pareto_filter(s.truth);
  const auto counts = cfg.sample_counts();
  if (cfg.disjoint_subsets) {
    std::size_t offset = 0;
    for (std::size_t c : counts) {
      std::vector<std::size_t> block(c);
      for (std::size_t k = 0; k < c; ++k) block[k] = offset + k;
      offset += c;
      s.subsets.push_back(std::move(block));
    }
    s.dataset_size = offset;
  } else {
    s.subsets = prefix_subsets(counts);
    s.dataset_size = *std::max_element(counts.begin(), counts.end());
  }
  const auto specs = cfg.resolved_terms();
  s.terms = multi_objective_terms(specs, counts, cfg.delta);
  return s;
}

struct TrialData {
  std::uint64_t seed = 0;
  std::vector<ObjectiveVector> empirical;
  ParetoSet empirical_set;
};

TrialData draw_trial(const Setup& s, const VerificationConfig& cfg, std::size_t t) {
  TrialData d;
  d.seed = derive_seed(cfg.seed, t);
  const auto data = sample_dataset(*s.problem, s.dataset_size, d.seed);
  d.empirical = finite_empirical_objectives(*s.problem, data, s.subsets);
  d.empirical_set = pareto_filter(d.empirical);
  return d;
}

TrialReport base_report(const Setup& s, const TrialData& d, std::size_t t) {
  TrialReport r;
  r.trial = t;
  r.seed = d.seed;
  r.terms = s.terms;
  r.empirical_pareto = d.empirical_set.member_ids;
  r.true_pareto = s.true_set.member_ids;
  return r;
}

HarnessReport finish(std::string harness, const VerificationConfig& cfg,
                     std::vector<TrialReport> trials, std::initializer_list<const char*> checks) {
  HarnessReport rep;
  rep.harness = std::move(harness);
  rep.seed = cfg.seed;
  const double ceiling = binomial_ceiling(cfg.delta, cfg.trials);
  for (const char* c : checks) rep.checks.push_back(summarize(c, trials, ceiling, true));
  if (cfg.keep_trials) rep.trials = std::move(trials);
  return rep;
}

// max_i (L_i(a) - L_i(b) - 2 c_i): positive iff a exceeds b + 2c somewhere.
double joint_excess(const ObjectiveVector& a, const ObjectiveVector& b, std::span<const double> c) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, a[i] - b[i] - 2.0 * c[i]);
  return m;
}

double mean_metric(std::span<const TrialReport> trials, const std::string& key) {
  double s = 0.0;
  std::size_t count = 0;
  for (const auto& t : trials) {
    const auto it = t.metrics.find(key);
    if (it == t.metrics.end()) continue;
    s += it->second;
    ++count;
  }
  return count == 0 ? 0.0 : s / static_cast<double>(count);
}

}  // namespace

double binomial_ceiling(double delta, std::size_t trials) {
  if (trials == 0) throw ParameterError("binomial_ceiling: trials must be >= 1");
  return delta + 2.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::NotApplicable:
      return "NOT-APPLICABLE";
  }
  return "?";
}

bool HarnessReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckSummary& c) { return c.status == CheckStatus::Fail; });
}

const CheckSummary& HarnessReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw DataError("report " + harness + " has no check named " + name);
}

std::vector<Scalarization> sample_sweep(const SweepSpec& spec, std::size_t objectives,
                                        std::uint64_t seed) {
  if (spec.kinds.empty()) throw ConfigError("sweep: no scalarization kinds");
  if (spec.tilt_min > spec.tilt_max) throw ConfigError("sweep: tilt_min exceeds tilt_max");
  Rng rng(seed);
  std::vector<Scalarization> out;
  out.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    switch (spec.kinds[k % spec.kinds.size()]) {
      case ScalarizationKind::Chebyshev:
        out.push_back(Scalarization::chebyshev(sample_simplex_weights(objectives, rng)));
        break;
      case ScalarizationKind::Linear:
        out.push_back(Scalarization::linear(sample_simplex_weights(objectives, rng)));
        break;
      case ScalarizationKind::WeightedPNorm:
        out.push_back(Scalarization::weighted_p_norm(spec.p, sample_simplex_weights(objectives, rng)));
        break;
      case ScalarizationKind::Tilted:
        out.push_back(Scalarization::tilted(rng.uniform(spec.tilt_min, spec.tilt_max)));
        break;
    }
  }
  return out;
}

void VerificationConfig::validate() const {
  if (!problem) throw ConfigError("verification: no problem");
  if (trials == 0) throw ConfigError("verification: trials must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("verification: delta must lie in (0, 1)");
  if (n == 0 && per_objective_n.empty()) throw ConfigError("verification: n must be >= 1");
  if (!per_objective_n.empty() && per_objective_n.size() != problem->objectives()) {
    throw ConfigError("verification: per_objective_n needs one entry per objective");
  }
  for (std::size_t c : per_objective_n) {
    if (c == 0) throw ConfigError("verification: per-objective sample counts must be >= 1");
  }
  if (!terms.empty() && terms.size() != problem->objectives()) {
    throw ConfigError("verification: term specs must cover every objective");
  }
  for (const auto& t : terms) t.validate();
}

std::vector<std::size_t> VerificationConfig::sample_counts() const {
  if (!per_objective_n.empty()) return per_objective_n;
  return std::vector<std::size_t>(problem->objectives(), n);
}

std::vector<TermSpec> VerificationConfig::resolved_terms() const {
  if (!terms.empty()) return terms;
  std::vector<TermSpec> out;
  for (std::size_t i = 0; i < problem->objectives(); ++i) {
    out.push_back(problem->is_trivial(i)
                      ? TermSpec::trivial(i)
                      : TermSpec::hoeffding(static_cast<double>(problem->hypotheses()),
                                            problem->loss_bound(), i));
  }
  return out;
}

HarnessReport verify_lemma1(const VerificationConfig& cfg) {
  const Setup s = prepare(cfg);
  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    const TrialData d = draw_trial(s, cfg, t);
    TrialReport r = base_report(s, d, t);
    double worst = -std::numeric_limits<double>::infinity();
    double max_dev = 0.0;
    std::vector<std::size_t> witness{0, 0};
    for (std::size_t h = 0; h < s.truth.size(); ++h) {
      for (std::size_t i = 0; i < s.terms.size(); ++i) {
        const double dev = std::abs(s.truth[h][i] - d.empirical[h][i]);
        max_dev = std::max(max_dev, dev);
        if (dev - s.terms[i] > worst) {
          worst = dev - s.terms[i];
          witness = {h, i};
        }
      }
    }
    r.checks.push_back(inequality("uniform-deviation", worst, witness));
    r.metrics["max_deviation"] = max_dev;
    return r;
  });
  const double mean_dev = mean_metric(trials, "max_deviation");
  HarnessReport rep = finish("lemma1", cfg, std::move(trials), {"uniform-deviation"});
  rep.metrics["mean_max_deviation"] = mean_dev;
  return rep;
}

HarnessReport verify_scalarization(const VerificationConfig& cfg) {
  const Setup s = prepare(cfg);
  const auto sweep = sample_sweep(cfg.sweep, cfg.problem->objectives(), derive_seed(cfg.seed, kSweepStream));
  if (sweep.empty()) throw ConfigError("scalarization: sweep must contain at least one member");

  // True-value quantities do not depend on the dataset.
  const std::size_t hyps = s.truth.size();
  std::vector<double> rhs(sweep.size());
  std::vector<std::vector<double>> true_vals(sweep.size(), std::vector<double>(hyps));
  std::vector<double> true_min(sweep.size());
  for (std::size_t u = 0; u < sweep.size(); ++u) {
    rhs[u] = scalarization_rhs(sweep[u], s.terms);
    for (std::size_t h = 0; h < hyps; ++h) true_vals[u][h] = scalarize(sweep[u], s.truth[h]);
    true_min[u] = *std::min_element(true_vals[u].begin(), true_vals[u].end());
  }

  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    const TrialData d = draw_trial(s, cfg, t);
    TrialReport r = base_report(s, d, t);
    double worst_a = -std::numeric_limits<double>::infinity();
    double worst_b = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> wit_a{0, 0};
    std::vector<std::size_t> wit_b{0, 0};
    std::vector<double> emp(hyps);
    for (std::size_t u = 0; u < sweep.size(); ++u) {
      double emp_min = std::numeric_limits<double>::infinity();
      for (std::size_t h = 0; h < hyps; ++h) {
        emp[h] = scalarize(sweep[u], d.empirical[h]);
        emp_min = std::min(emp_min, emp[h]);
        const double margin = std::abs(true_vals[u][h] - emp[h]) - rhs[u];
        if (margin > worst_a) {
          worst_a = margin;
          wit_a = {u, h};
        }
      }
      // Every exact empirical minimizer against the best true value.
      for (std::size_t h = 0; h < hyps; ++h) {
        if (emp[h] != emp_min) continue;
        const double margin = true_vals[u][h] - true_min[u] - 2.0 * rhs[u];
        if (margin > worst_b) {
          worst_b = margin;
          wit_b = {u, h};
        }
      }
    }
    r.checks.push_back(inequality("scalarized-deviation", worst_a, wit_a));
    r.checks.push_back(inequality("scalarized-excess", worst_b, wit_b));
    return r;
  });
  HarnessReport rep = finish("scalarization", cfg, std::move(trials), {"scalarized-deviation", "scalarized-excess"});
  rep.metrics["sweep_size"] = static_cast<double>(sweep.size());
  return rep;
}

HarnessReport verify_pareto_single(const VerificationConfig& cfg) {
  const Setup s = prepare(cfg);
  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    const TrialData d = draw_trial(s, cfg, t);
    TrialReport r = base_report(s, d, t);
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> witness{0, 0};
    for (std::size_t e : d.empirical_set.member_ids) {
      for (std::size_t h = 0; h < s.truth.size(); ++h) {
        // Smallest per-objective excess: the pair is fine if any is <= 0.
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < s.terms.size(); ++i) {
          best = std::min(best, s.truth[e][i] - s.truth[h][i] - 2.0 * s.terms[i]);
        }
        if (best > worst) {
          worst = best;
          witness = {e, h};
        }
      }
    }
    r.checks.push_back(inequality("pareto-single", worst, witness));
    return r;
  });
  return finish("pareto-single", cfg, std::move(trials), {"pareto-single"});
}

HarnessReport verify_pareto_forward(const VerificationConfig& cfg) {
  const Setup s = prepare(cfg);
  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    const TrialData d = draw_trial(s, cfg, t);
    TrialReport r = base_report(s, d, t);
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> witness{0, 0};
    for (std::size_t star : s.true_set.member_ids) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_e = 0;
      for (std::size_t e : d.empirical_set.member_ids) {
        const double m = joint_excess(s.truth[e], s.truth[star], s.terms);
        if (m < best) {
          best = m;
          best_e = e;
        }
      }
      if (best > worst) {
        worst = best;
        witness = {star, best_e};
      }
    }
    r.checks.push_back(inequality("pareto-forward", worst, witness));
    return r;
  });
  return finish("pareto-forward", cfg, std::move(trials), {"pareto-forward"});
}

BackwardPrecondition backward_precondition(std::span<const ObjectiveVector> true_front,
                                           const RayCompletenessOptions& ray) {
  const auto report = ray_completeness_check(true_front, ray);
  return {report.covered_fraction == 1.0, report.covered_fraction};
}

HarnessReport verify_pareto_backward(const VerificationConfig& cfg) {
  const Setup s = prepare(cfg);
  const auto pre = backward_precondition(s.true_set.front, cfg.ray);
  if (!pre.applicable) {
    HarnessReport rep;
    rep.harness = "pareto-backward";
    rep.seed = cfg.seed;
    CheckSummary c;
    c.name = "pareto-backward";
    c.threshold = binomial_ceiling(cfg.delta, cfg.trials);
    c.status = CheckStatus::NotApplicable;
    rep.checks.push_back(c);
    rep.metrics["ray_completeness"] = pre.completeness;
    std::ostringstream note;
    note << "true front is not ray complete at tolerance " << cfg.ray.angular_tolerance
         << " rad (covered fraction " << pre.completeness << ")";
    rep.notes.push_back(note.str());
    return rep;
  }

  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    const TrialData d = draw_trial(s, cfg, t);
    TrialReport r = base_report(s, d, t);
    double worst = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> witness{0, 0};
    for (std::size_t e : d.empirical_set.member_ids) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_star = 0;
      for (std::size_t star : s.true_set.member_ids) {
        const double m = joint_excess(s.truth[e], s.truth[star], s.terms);
        if (m < best) {
          best = m;
          best_star = star;
        }
      }
      if (best > worst) {
        worst = best;
        witness = {e, best_star};
      }
    }
    r.checks.push_back(inequality("pareto-backward", worst, witness));
    r.metrics["ray_intersection"] =
        ray_intersection_fraction(d.empirical_set.front, s.true_set.front, cfg.ray.angular_tolerance);
    return r;
  });
  const double mean_ray = mean_metric(trials, "ray_intersection");
  HarnessReport rep = finish("pareto-backward", cfg, std::move(trials), {"pareto-backward"});
  rep.metrics["ray_completeness"] = pre.completeness;
  rep.metrics["mean_ray_intersection"] = mean_ray;
  return rep;
}

HarnessReport demonstrate_impossibility(const ImpossibilityConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("impossibility: trials must be >= 1");
  if (cfg.n == 0) throw ConfigError("impossibility: n must be >= 1");
  if (!(cfg.gap >= 0.0)) throw ConfigError("impossibility: C must be >= 0");
  if (static_cast<double>(cfg.max_segments) < cfg.gap + 2.0) {
    throw ConfigError("impossibility: need K >= C + 2 so a hypothesis with more than C jumps exists");
  }

  auto trials = run_trials(cfg.trials, cfg.threads, [&](std::size_t t) {
    TrialReport r;
    r.trial = t;
    r.seed = derive_seed(cfg.seed, t);
    const auto samples = sample_segmentation_data(cfg.n, r.seed);
    const auto front = segmentation_empirical_front(samples, cfg.max_segments);
    const SegFrontPoint& last = front.pareto.back();
    for (const auto& p : front.pareto) r.empirical_pareto.push_back(p.jumps);
    CheckRecord c;
    c.name = "impossibility";
    c.margin = static_cast<double>(last.jumps) - cfg.gap;
    c.event = static_cast<double>(last.jumps) > cfg.gap;
    c.witness = {last.jumps, last.errors};
    r.checks.push_back(c);
    r.metrics["max_pareto_jumps"] = static_cast<double>(last.jumps);
    r.metrics["pareto_size"] = static_cast<double>(front.pareto.size());
    return r;
  });

  HarnessReport rep;
  rep.harness = "impossibility";
  rep.seed = cfg.seed;
  rep.checks.push_back(summarize("impossibility", trials, 0.5, false));
  rep.metrics["mean_max_pareto_jumps"] = mean_metric(trials, "max_pareto_jumps");

  // Every hypothesis has true 0/1 risk 1/2, so the true front is the single
  // point (0 jumps, 1/2), which meets only the rays next to one axis.
  const std::vector<ObjectiveVector> true_front{ObjectiveVector{0.0, 0.5}};
  const auto pre = backward_precondition(true_front, cfg.ray);
  rep.metrics["true_front_ray_completeness"] = pre.completeness;
  rep.notes.push_back(std::string("pareto-backward on this problem: ") +
                      (pre.applicable ? "applicable" : "NOT-APPLICABLE (true front not ray complete)"));
  if (cfg.keep_trials) rep.trials = std::move(trials);
  return rep;
}

LassoStudy lasso_pareto_study(const LassoStudyConfig& cfg) {
  LassoStudy study;
  study.truth = cfg.truth;
  if (study.truth.coefficients.empty()) {
    study.truth.coefficients.assign(cfg.d, 0.0);
    const double defaults[] = {1.5, -2.0, 1.0};
    for (std::size_t j = 0; j < std::min<std::size_t>(3, cfg.d); ++j) study.truth.coefficients[j] = defaults[j];
  }
  const LassoProblem p = make_linear_problem(cfg.n, cfg.d, study.truth, cfg.seed);
  const std::vector<double> grid = cfg.lambda_grid.empty() ? default_lambda_grid(p) : cfg.lambda_grid;
  LassoOptions opts;
  opts.tolerance = cfg.solver_tolerance;
  const auto path = lasso_path(p, grid, opts);

  std::vector<ObjectiveVector> objective_points;
  for (const auto& pt : path) {
    study.points.push_back({pt.lambda, pt.fit, lasso_true_fit(p, study.truth, pt.beta), pt.l1});
    objective_points.push_back(ObjectiveVector{pt.fit, pt.l1});
  }
  study.monotone = true;
  for (std::size_t k = 1; k < path.size(); ++k) {
    study.monotone = study.monotone && path[k - 1].l1 <= path[k].l1 + cfg.monotone_tolerance &&
                     path[k - 1].fit >= path[k].fit - cfg.monotone_tolerance;
  }
  study.empirical_front = pareto_filter(objective_points, {cfg.dominance_tolerance}).member_ids;
  study.all_on_front = study.empirical_front.size() == path.size();
  study.realizable = study.truth.noise_sd == 0.0;
  study.starts_at_zero = path.front().l1 == 0.0;
  study.vanishing_fit = path.back().fit <= 1e-4 * path.front().fit;
  return study;
}

HarnessReport lasso_study_report(const LassoStudy& study, std::uint64_t seed) {
  HarnessReport rep;
  rep.harness = "lasso";
  rep.seed = seed;
  rep.checks.push_back(deterministic_check("path-monotone", study.monotone));
  rep.checks.push_back(deterministic_check("front-retains-path", study.all_on_front));
  rep.checks.push_back(deterministic_check("realizable-endpoints", study.starts_at_zero && study.vanishing_fit,
                                           study.realizable ? CheckStatus::Pass : CheckStatus::NotApplicable));
  rep.metrics["path_points"] = static_cast<double>(study.points.size());
  rep.metrics["front_points"] = static_cast<double>(study.empirical_front.size());
  if (!study.points.empty()) {
    rep.metrics["first_fit"] = study.points.front().empirical_fit;
    rep.metrics["last_fit"] = study.points.back().empirical_fit;
    rep.metrics["last_true_fit"] = study.points.back().true_fit;
  }
  return rep;
}

CortesStudy cortes_study(const CortesStudyConfig& cfg) {
  CortesStudy study;
  study.rows = compare_bounds(cfg.params, cfg.objective_counts);
  for (std::size_t count : cfg.objective_counts) {
    CortesBoundParams p = cfg.params;
    p.objectives = count;
    study.confidence_over_sqrt_n.push_back(cortes_confidence_term(p) / std::sqrt(static_cast<double>(count)));
  }
  study.improved_tighter = std::all_of(study.rows.begin(), study.rows.end(),
                                       [](const BoundComparisonRow& r) { return r.improved < r.cortes; });
  double mean = 0.0;
  for (double v : study.confidence_over_sqrt_n) mean += v;
  mean /= static_cast<double>(std::max<std::size_t>(1, study.confidence_over_sqrt_n.size()));
  study.scaling_constant = std::all_of(
      study.confidence_over_sqrt_n.begin(), study.confidence_over_sqrt_n.end(),
      [&](double v) { return std::abs(v - mean) <= cfg.scaling_tolerance * mean; });
  return study;
}

HarnessReport cortes_study_report(const CortesStudy& study) {
  HarnessReport rep;
  rep.harness = "cortes";
  rep.checks.push_back(deterministic_check("improved-tighter", study.improved_tighter));
  rep.checks.push_back(deterministic_check("confidence-scaling", study.scaling_constant));
  for (const auto& r : study.rows) {
    rep.metrics["ratio_N" + std::to_string(r.objectives)] = r.ratio;
  }
  return rep;
}

}  // namespace paretolab
