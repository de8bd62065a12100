#include "paretolab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "paretolab/error.hpp"
#include "paretolab/random.hpp"
#include "paretolab/serialization.hpp"
#include "paretolab/verify.hpp"

namespace paretolab {

namespace {

namespace fs = std::filesystem;

constexpr std::array<ExperimentInfo, 9> kRegistry{{
    {"lemma1", "verify", "every objective's empirical value stays within its generalization term"},
    {"scalarization", "verify", "uniform deviation and excess bound for a sweep of scalarizations"},
    {"pareto-single", "verify", "each empirical Pareto point is near-optimal in some objective"},
    {"pareto-forward", "verify", "each true Pareto point is matched by an empirical one"},
    {"pareto-backward", "verify", "each empirical Pareto point is matched by a true one (ray-complete fronts)"},
    {"impossibility", "demo", "without a ray-complete front, empirical Pareto points can be arbitrarily bad"},
    {"lasso", "study", "LASSO regularization path as a two-objective Pareto front"},
    {"cortes", "study", "multi-objective bound comparison as the number of objectives grows"},
    {"term", "study", "tilted risk properties and uniformity over a sweep of tilts"},
}};

// Seeds for generated problems live on their own stream so they never
// coincide with trial seeds derive_seed(seed, t).
constexpr std::uint64_t kProblemStream = 0xb0b0b0b0b0b0b0b0ULL;

struct Flags {
  std::string command;
  std::string target;
  std::string config;
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::size_t trials = 0;
  std::size_t n = 0;
  std::size_t K = 0;
  double C = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  std::vector<std::size_t> n_list;
  std::set<std::string> given;

  bool has(const std::string& name) const { return given.count(name) > 0; }
};

// Settings shared by every command after flags and config are merged.
struct Run {
  Json config = Json::object();
  fs::path config_dir;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::optional<fs::path> out;
  std::string format = "json";
};

struct Outcome {
  HarnessReport report;
  Json data;            // study tables, appended to the JSON report
  std::string csv;      // replaces the summary CSV when non-empty
  std::string display;  // printed after the check lines
};

const std::set<std::string> kConfigKeys = {
    "schema", "experiment", "harness", "seed", "threads", "trials", "output", "problem", "n",
    "per_objective_n", "delta", "terms", "sweep", "disjoint_subsets", "ray", "keep_trials", "K", "C",
    "d", "noise_sd", "coefficients", "lambda_grid", "params", "N_list", "scaling_tolerance", "epsilon",
    "models", "groups", "samples_per_group", "tilts", "inner_tilt"};

[[noreturn]] void bad(const std::string& path, const std::string& why) { throw ConfigError(path + ": " + why); }

const Json* find(const Json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::size_t count_field(const Json& j, const char* key, std::size_t fallback) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer() || v->get<std::int64_t>() < 0) {
    bad(std::string("config.") + key, "expected a non-negative integer");
  }
  return v->get<std::size_t>();
}

double number_field(const Json& j, const char* key, double fallback) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number()) bad(std::string("config.") + key, "expected a number");
  return v->get<double>();
}

bool bool_field(const Json& j, const char* key, bool fallback) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) bad(std::string("config.") + key, "expected true or false");
  return v->get<bool>();
}

std::vector<double> numbers_field(const Json& j, const char* key) {
  const Json* v = find(j, key);
  if (!v) return {};
  const std::string path = std::string("config.") + key;
  if (!v->is_array()) bad(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number()) bad(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back((*v)[i].get<double>());
  }
  return out;
}

std::vector<std::size_t> counts_field(const Json& j, const char* key) {
  const Json* v = find(j, key);
  if (!v) return {};
  const std::string path = std::string("config.") + key;
  if (!v->is_array()) bad(path, "expected an array of non-negative integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    const Json& e = (*v)[i];
    if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
      bad(path + "[" + std::to_string(i) + "]", "expected a non-negative integer");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

std::uint64_t parse_env_seed(const char* text) {
  std::uint64_t v = 0;
  std::istringstream is(text);
  if (!(is >> v) || !is.eof()) throw ConfigError(std::string("PARETO_LAB_SEED: not an unsigned integer: ") + text);
  return v;
}

Run resolve_run(const Flags& f) {
  Run r;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("--config: cannot open " + f.config);
    try {
      r.config = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ConfigError("config: invalid JSON: " + std::string(e.what()));
    }
    if (!r.config.is_object()) bad("config", "expected a JSON object");
    const Json* schema = find(r.config, "schema");
    if (!schema) bad("config.schema", "missing");
    if (!schema->is_number_integer() || schema->get<std::int64_t>() != kConfigSchema) {
      bad("config.schema", "unsupported version (expected " + std::to_string(kConfigSchema) + ")");
    }
    for (const auto& [key, value] : r.config.items()) {
      if (!kConfigKeys.count(key)) bad("config." + key, "unknown field");
    }
    if (const Json* h = find(r.config, "harness")) {
      if (!h->is_string() || h->get<std::string>() != f.target) {
        bad("config.harness", "does not match the requested experiment '" + f.target + "'");
      }
    }
    r.config_dir = fs::path(f.config).parent_path();
  }
  const Json& c = r.config;

  if (f.has("--seed")) {
    r.seed = f.seed;
  } else if (const Json* s = find(c, "seed")) {
    if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<std::int64_t>() >= 0)) {
      bad("config.seed", "expected an unsigned 64-bit integer");
    }
    r.seed = s->get<std::uint64_t>();
  } else if (const char* env = std::getenv("PARETO_LAB_SEED"); env && *env) {
    r.seed = parse_env_seed(env);
  }

  r.threads = f.has("--threads") ? f.threads : count_field(c, "threads", 0);

  if (const Json* o = find(c, "output")) {
    if (!o->is_object()) bad("config.output", "expected an object");
    for (const auto& [key, value] : o->items()) {
      if (key != "dir" && key != "format") bad("config.output." + key, "unknown field");
    }
    if (const Json* d = find(*o, "dir")) {
      if (!d->is_string()) bad("config.output.dir", "expected a string");
      r.out = fs::path(d->get<std::string>());
    }
    if (const Json* fm = find(*o, "format")) {
      if (!fm->is_string()) bad("config.output.format", "expected a string");
      r.format = fm->get<std::string>();
    }
  }
  if (f.has("--out")) r.out = fs::path(f.out);
  if (f.has("--format")) r.format = f.format;
  if (r.format != "json" && r.format != "csv") bad("config.output.format", "must be json or csv");
  return r;
}

std::size_t trials_setting(const Flags& f, const Json& c, std::size_t fallback) {
  const std::size_t t = f.has("--trials") ? f.trials : count_field(c, "trials", fallback);
  if (t == 0) bad("config.trials", "must be >= 1");
  return t;
}

RayCompletenessOptions ray_setting(const Json& c) {
  RayCompletenessOptions ray{90, 0.02, true};
  if (const Json* r = find(c, "ray")) {
    if (!r->is_object()) bad("config.ray", "expected an object");
    for (const auto& [key, value] : r->items()) {
      if (key == "grid_resolution") {
        if (!value.is_number_integer() || value.get<std::int64_t>() < 1) {
          bad("config.ray.grid_resolution", "expected a positive integer");
        }
        ray.grid_resolution = value.get<std::size_t>();
      } else if (key == "angular_tolerance") {
        if (!value.is_number() || !(value.get<double>() > 0.0)) {
          bad("config.ray.angular_tolerance", "expected a positive number");
        }
        ray.angular_tolerance = value.get<double>();
      } else if (key == "allow_axis_points") {
        if (!value.is_boolean()) bad("config.ray.allow_axis_points", "expected true or false");
        ray.allow_axis_points = value.get<bool>();
      } else {
        bad("config.ray." + key, "unknown field");
      }
    }
  }
  return ray;
}

SweepSpec sweep_setting(const Json& c, SweepSpec spec) {
  const Json* s = find(c, "sweep");
  if (!s) return spec;
  if (!s->is_object()) bad("config.sweep", "expected an object");
  for (const auto& [key, value] : s->items()) {
    const std::string path = "config.sweep." + key;
    if (key == "count") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 1) bad(path, "expected a positive integer");
      spec.count = value.get<std::size_t>();
    } else if (key == "kinds") {
      if (!value.is_array() || value.empty()) bad(path, "expected a non-empty array of kind names");
      spec.kinds.clear();
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string ep = path + "[" + std::to_string(i) + "]";
        if (!value[i].is_string()) bad(ep, "expected a string");
        spec.kinds.push_back(scalarization_kind_from_string(value[i].get<std::string>(), ep));
      }
    } else if (key == "p" || key == "tilt_min" || key == "tilt_max") {
      if (!value.is_number()) bad(path, "expected a number");
      const double v = value.get<double>();
      if (key == "p") {
        if (!(v > 1.0)) bad(path, "must exceed 1");
        spec.p = v;
      } else if (key == "tilt_min") {
        spec.tilt_min = v;
      } else {
        spec.tilt_max = v;
      }
    } else {
      bad(path, "unknown field");
    }
  }
  if (spec.tilt_min > spec.tilt_max) bad("config.sweep.tilt_min", "exceeds tilt_max");
  return spec;
}

std::shared_ptr<const FiniteProblem> problem_setting(const Run& run, const std::string& harness) {
  if (const Json* p = find(run.config, "problem")) {
    return std::make_shared<const FiniteProblem>(problem_from_json(*p, "config.problem", run.config_dir));
  }
  const std::uint64_t seed = derive_seed(run.seed, kProblemStream);
  if (harness == "pareto-backward") {
    return std::make_shared<const FiniteProblem>(make_quarter_circle_problem({}, seed));
  }
  return std::make_shared<const FiniteProblem>(make_random_finite_problem({}, seed));
}

VerificationConfig verification_setting(const Flags& f, const Run& run, const std::string& harness) {
  const Json& c = run.config;
  VerificationConfig cfg;
  cfg.problem = problem_setting(run, harness);
  cfg.seed = run.seed;
  cfg.threads = run.threads;
  cfg.trials = trials_setting(f, c, harness == "pareto-backward" ? 500 : 1000);
  cfg.n = f.has("--n") ? f.n : count_field(c, "n", cfg.n);
  if (cfg.n == 0) bad("config.n", "must be >= 1");
  cfg.per_objective_n = counts_field(c, "per_objective_n");
  if (!cfg.per_objective_n.empty() && f.has("--n")) cfg.per_objective_n.clear();
  cfg.delta = f.has("--delta") ? f.delta : number_field(c, "delta", cfg.delta);
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) bad("config.delta", "must lie in (0, 1)");
  cfg.disjoint_subsets = bool_field(c, "disjoint_subsets", false);
  cfg.keep_trials = bool_field(c, "keep_trials", true);
  if (const Json* t = find(c, "terms")) {
    if (!t->is_array()) bad("config.terms", "expected an array of term specs");
    for (std::size_t i = 0; i < t->size(); ++i) {
      cfg.terms.push_back(term_spec_from_json((*t)[i], "config.terms[" + std::to_string(i) + "]"));
    }
  }
  cfg.sweep = sweep_setting(c, cfg.sweep);
  cfg.ray = ray_setting(c);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    bad("config", e.what());
  }
  return cfg;
}

Outcome run_verify(const Flags& f, const Run& run) {
  const VerificationConfig cfg = verification_setting(f, run, f.target);
  Outcome o;
  if (f.target == "lemma1") {
    o.report = verify_lemma1(cfg);
  } else if (f.target == "scalarization") {
    o.report = verify_scalarization(cfg);
  } else if (f.target == "pareto-single") {
    o.report = verify_pareto_single(cfg);
  } else if (f.target == "pareto-forward") {
    o.report = verify_pareto_forward(cfg);
  } else {
    o.report = verify_pareto_backward(cfg);
  }
  return o;
}

Outcome run_impossibility(const Flags& f, const Run& run) {
  const Json& c = run.config;
  ImpossibilityConfig cfg;
  cfg.seed = run.seed;
  cfg.threads = run.threads;
  cfg.trials = trials_setting(f, c, cfg.trials);
  cfg.n = f.has("--n") ? f.n : count_field(c, "n", cfg.n);
  cfg.max_segments = f.has("--K") ? f.K : count_field(c, "K", cfg.max_segments);
  cfg.gap = f.has("--C") ? f.C : number_field(c, "C", cfg.gap);
  cfg.ray = ray_setting(c);
  cfg.keep_trials = bool_field(c, "keep_trials", true);
  Outcome o;
  o.report = demonstrate_impossibility(cfg);
  return o;
}

Outcome run_lasso(const Flags& f, const Run& run) {
  const Json& c = run.config;
  LassoStudyConfig cfg;
  cfg.seed = run.seed;
  cfg.n = f.has("--n") ? f.n : count_field(c, "n", cfg.n);
  cfg.d = count_field(c, "d", cfg.d);
  cfg.truth.coefficients = numbers_field(c, "coefficients");
  cfg.truth.noise_sd = number_field(c, "noise_sd", 0.0);
  cfg.lambda_grid = numbers_field(c, "lambda_grid");
  if (!cfg.truth.coefficients.empty() && cfg.truth.coefficients.size() != cfg.d) {
    bad("config.coefficients", "expected d = " + std::to_string(cfg.d) + " entries");
  }
  const LassoStudy study = lasso_pareto_study(cfg);

  Outcome o;
  o.report = lasso_study_report(study, run.seed);
  std::ostringstream csv;
  csv << std::setprecision(17) << "lambda,empirical_fit,true_fit,l1,on_front\n";
  Json points = Json::array();
  for (std::size_t k = 0; k < study.points.size(); ++k) {
    const auto& p = study.points[k];
    const bool on_front = std::count(study.empirical_front.begin(), study.empirical_front.end(), k) > 0;
    csv << p.lambda << ',' << p.empirical_fit << ',' << p.true_fit << ',' << p.l1 << ',' << (on_front ? 1 : 0) << '\n';
    points.push_back({{"lambda", p.lambda},
                      {"empirical_fit", p.empirical_fit},
                      {"true_fit", p.true_fit},
                      {"l1", p.l1},
                      {"on_front", on_front}});
  }
  o.data["points"] = points;
  o.data["coefficients"] = study.truth.coefficients;
  o.data["noise_sd"] = study.truth.noise_sd;
  o.csv = csv.str();
  return o;
}

Outcome run_cortes(const Flags& f, const Run& run) {
  const Json& c = run.config;
  CortesStudyConfig cfg;
  cfg.params.n = 1000;
  cfg.params.rademacher = 0.1;
  if (const Json* p = find(c, "params")) cfg.params = cortes_params_from_json(*p, "config.params", cfg.params);
  if (f.has("--n")) cfg.params.n = f.n;
  else if (find(c, "n")) cfg.params.n = count_field(c, "n", cfg.params.n);
  cfg.params.delta = f.has("--delta") ? f.delta : number_field(c, "delta", cfg.params.delta);
  cfg.params.epsilon = f.has("--epsilon") ? f.epsilon : number_field(c, "epsilon", cfg.params.epsilon);
  if (f.has("--N-list")) {
    cfg.objective_counts = f.n_list;
  } else if (find(c, "N_list")) {
    cfg.objective_counts = counts_field(c, "N_list");
  }
  if (cfg.objective_counts.empty()) bad("config.N_list", "must list at least one objective count");
  for (std::size_t count : cfg.objective_counts) {
    if (count < 1) bad("config.N_list", "objective counts must be >= 1");
  }
  cfg.scaling_tolerance = number_field(c, "scaling_tolerance", cfg.scaling_tolerance);
  try {
    cfg.params.validate();
  } catch (const Error& e) {
    bad("config.params", e.what());
  }
  const CortesStudy study = cortes_study(cfg);

  Outcome o;
  o.report = cortes_study_report(study);
  o.report.seed = run.seed;
  o.csv = bound_comparison_csv(study.rows);
  o.display = o.csv;
  Json rows = Json::array();
  for (std::size_t k = 0; k < study.rows.size(); ++k) {
    const auto& r = study.rows[k];
    rows.push_back({{"N", r.objectives},
                    {"n", r.n},
                    {"epsilon", r.epsilon},
                    {"cortes_rhs", r.cortes},
                    {"improved_rhs", r.improved},
                    {"ratio", r.ratio},
                    {"cortes_confidence_over_sqrt_N", study.confidence_over_sqrt_n[k]}});
  }
  o.data["params"] = cortes_params_to_json(cfg.params);
  o.data["rows"] = rows;
  return o;
}

Outcome run_term(const Flags& f, const Run& run) {
  const Json& c = run.config;
  const std::size_t models = count_field(c, "models", 5);
  const std::size_t groups = count_field(c, "groups", 4);
  const std::size_t samples = count_field(c, "samples_per_group", 50);
  const double inner = number_field(c, "inner_tilt", 0.0);
  std::vector<double> tilts = numbers_field(c, "tilts");
  if (tilts.empty()) {
    for (int k = 0; k < 20; ++k) tilts.push_back(-10.0 + 20.0 * k / 19.0);
  }
  if (!std::is_sorted(tilts.begin(), tilts.end())) bad("config.tilts", "must be sorted ascending");
  if (groups == 0) bad("config.groups", "must be >= 1");
  const auto gp = make_term_groups_problem(models, groups, samples, derive_seed(run.seed, kProblemStream));

  // Tilted risk over groups: bounded by the extreme group risks and
  // non-decreasing in the tilt.
  constexpr double kTol = 1e-9;
  bool bounded = true;
  bool monotone = true;
  std::ostringstream csv;
  csv << std::setprecision(17) << "model,t,tilted_risk,min_group,max_group\n";
  Json table = Json::array();
  const std::vector<double> taus(groups, inner);
  for (std::size_t m = 0; m < models; ++m) {
    std::vector<double> inner_risks(groups);
    for (std::size_t g = 0; g < groups; ++g) inner_risks[g] = tilted_risk(inner, gp.model_losses[m][g]);
    const double lo = *std::min_element(inner_risks.begin(), inner_risks.end());
    const double hi = *std::max_element(inner_risks.begin(), inner_risks.end());
    double prev = -std::numeric_limits<double>::infinity();
    for (double t : tilts) {
      const double v = term_hierarchical(t, taus, gp.model_losses[m]);
      bounded = bounded && v >= lo - kTol && v <= hi + kTol;
      monotone = monotone && v >= prev - kTol;
      prev = v;
      csv << m << ',' << t << ',' << v << ',' << lo << ',' << hi << '\n';
      table.push_back({{"model", m}, {"t", t}, {"tilted_risk", v}, {"min_group", lo}, {"max_group", hi}});
    }
  }

  // Uniformity over tilts: groups are objectives, each estimated from its
  // own samples.
  VerificationConfig cfg;
  RandomProblemOptions po;
  po.objectives = groups;
  cfg.problem = std::make_shared<const FiniteProblem>(
      make_random_finite_problem(po, derive_seed(run.seed, kProblemStream + 1)));
  cfg.seed = run.seed;
  cfg.threads = run.threads;
  cfg.trials = trials_setting(f, c, 200);
  cfg.n = f.has("--n") ? f.n : count_field(c, "n", 250);
  cfg.delta = f.has("--delta") ? f.delta : number_field(c, "delta", cfg.delta);
  cfg.disjoint_subsets = true;
  cfg.keep_trials = bool_field(c, "keep_trials", false);
  SweepSpec sweep;
  sweep.kinds = {ScalarizationKind::Tilted};
  cfg.sweep = sweep_setting(c, sweep);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    bad("config", e.what());
  }
  HarnessReport uniform = verify_scalarization(cfg);

  Outcome o;
  o.report.harness = "term";
  o.report.seed = run.seed;
  auto deterministic = [](const std::string& name, bool ok) {
    CheckSummary s;
    s.name = name;
    s.trials = 1;
    s.events = ok ? 0 : 1;
    s.frequency = ok ? 0.0 : 1.0;
    s.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    return s;
  };
  o.report.checks.push_back(deterministic("tilted-bounded", bounded));
  o.report.checks.push_back(deterministic("tilted-monotone", monotone));
  for (const auto& s : uniform.checks) o.report.checks.push_back(s);
  o.report.metrics = uniform.metrics;
  o.report.trials = std::move(uniform.trials);
  o.data["tilted_risks"] = table;
  o.csv = csv.str();
  return o;
}

std::string format_check(const std::string& harness, const CheckSummary& c) {
  std::ostringstream os;
  os << to_string(c.status) << ' ' << harness << '/' << c.name;
  if (c.status == CheckStatus::NotApplicable) return os.str();
  os << std::fixed << std::setprecision(4) << " frequency=" << c.frequency << ' '
     << (c.upper_bound ? "<=" : ">=") << ' ' << c.threshold << " events=" << c.events << '/' << c.trials;
  return os.str();
}

void write_outputs(const Run& run, const Outcome& o) {
  if (!run.out) return;
  std::error_code ec;
  fs::create_directories(*run.out, ec);
  if (ec) throw ConfigError("--out: cannot create " + run.out->string() + ": " + ec.message());
  const fs::path file = *run.out / (o.report.harness + "-" + std::to_string(run.seed) + "." + run.format);
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("--out: cannot write " + file.string());
  if (run.format == "json") {
    Json j = report_to_json(o.report);
    if (!o.data.is_null()) j["data"] = o.data;
    out << j.dump(2) << '\n';
  } else {
    out << (o.csv.empty() ? report_csv(o.report) : o.csv);
  }
}

void add_common_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "JSON config file (\"schema\": 1)");
  app.add_option("--seed", f.seed, "master seed (fallback: PARETO_LAB_SEED, then 0)");
  app.add_option("--out", f.out, "directory for <harness>-<seed>.<format> reports");
  app.add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", f.threads, "worker threads for trials (0: all cores)");
  app.add_option("--trials", f.trials, "number of trials");
  app.add_option("--n", f.n, "sample size");
  app.add_option("--K", f.K, "segment budget for the impossibility demo");
  app.add_option("--C", f.C, "jump-count gap for the impossibility demo");
  app.add_option("--delta", f.delta, "confidence parameter");
  app.add_option("--epsilon", f.epsilon, "cover radius for the bound comparison");
  app.add_option("--N-list,--N", f.n_list, "objective counts, e.g. 2,4,8,16")->delimiter(',');
}

}  // namespace

std::span<const ExperimentInfo> experiment_registry() { return kRegistry; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Generalization checks for multi-objective learning", "paretolab"};
  app.require_subcommand(1);
  add_common_flags(app, f);

  auto* verify = app.add_subcommand("verify", "run a verification harness")->fallthrough();
  verify->add_option("harness", f.target, "lemma1, scalarization, pareto-single, pareto-forward, pareto-backward")
      ->required()
      ->check(CLI::IsMember({"lemma1", "scalarization", "pareto-single", "pareto-forward", "pareto-backward"}));
  auto* demo = app.add_subcommand("demo", "run a demonstration")->fallthrough();
  demo->add_option("name", f.target, "impossibility")->required()->check(CLI::IsMember({"impossibility"}));
  auto* study = app.add_subcommand("study", "run a study")->fallthrough();
  study->add_option("name", f.target, "lasso, cortes, term")
      ->required()
      ->check(CLI::IsMember({"lasso", "cortes", "term"}));
  app.add_subcommand("list", "list registered experiments");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun 'paretolab --help' for usage\n";
    return kExitUsage;
  }
  for (const auto* opt : app.get_options()) {
    if (opt->count() > 0) f.given.insert(opt->get_name());
  }
  f.command = app.get_subcommands().front()->get_name();

  if (f.command == "list") {
    for (const auto& e : kRegistry) {
      out << std::left << std::setw(16) << e.id << std::setw(8) << e.command << e.description << '\n';
    }
    return kExitPass;
  }

  try {
    const Run run = resolve_run(f);
    Outcome o;
    if (f.command == "verify") {
      o = run_verify(f, run);
    } else if (f.command == "demo") {
      o = run_impossibility(f, run);
    } else if (f.target == "lasso") {
      o = run_lasso(f, run);
    } else if (f.target == "cortes") {
      o = run_cortes(f, run);
    } else {
      o = run_term(f, run);
    }
    for (const auto& c : o.report.checks) out << format_check(o.report.harness, c) << '\n';
    for (const auto& [k, v] : o.report.metrics) out << "  " << k << " = " << v << '\n';
    for (const auto& note : o.report.notes) out << "  note: " << note << '\n';
    if (!o.display.empty()) out << o.display;
    write_outputs(run, o);
    return o.report.passed() ? kExitPass : kExitCheckFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace paretolab
