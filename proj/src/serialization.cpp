#include "paretolab/serialization.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>

#include "paretolab/error.hpp"

namespace paretolab {

namespace {

std::string field(const std::string& path, const std::string& key) { return path + "." + key; }

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw ConfigError(path + ": " + why);
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
}

const Json& require(const Json& j, const char* key, const std::string& path) {
  require_object(j, path);
  const auto it = j.find(key);
  if (it == j.end()) bad(field(path, key), "missing");
  return *it;
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "must be finite");
  return v;
}

std::size_t as_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) bad(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<double> as_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], element(path, i)));
  return out;
}

double number_or(const Json& j, const char* key, const std::string& path, double fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : as_number(*it, field(path, key));
}

std::size_t count_or(const Json& j, const char* key, const std::string& path, std::size_t fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : as_count(*it, field(path, key));
}

std::uint64_t seed_or(const Json& j, const char* key, const std::string& path, std::uint64_t fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
    bad(field(path, key), "expected an unsigned 64-bit integer");
  }
  return it->get<std::uint64_t>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

// Library errors raised while building an object are reported against the
// object's path.
template <class F>
auto at_path(const std::string& path, F make) {
  try {
    return make();
  } catch (const Error& e) {
    // Errors raised by this file already carry a path below this one.
    if (dynamic_cast<const ConfigError*>(&e) && std::string_view(e.what()).starts_with(path)) throw;
    bad(path, e.what());
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(ScalarizationKind k) {
  switch (k) {
    case ScalarizationKind::WeightedPNorm:
      return "pnorm";
    case ScalarizationKind::Chebyshev:
      return "chebyshev";
    case ScalarizationKind::Linear:
      return "linear";
    case ScalarizationKind::Tilted:
      return "tilted";
  }
  return "?";
}

ScalarizationKind scalarization_kind_from_string(const std::string& s, const std::string& path) {
  if (s == "pnorm") return ScalarizationKind::WeightedPNorm;
  if (s == "chebyshev") return ScalarizationKind::Chebyshev;
  if (s == "linear") return ScalarizationKind::Linear;
  if (s == "tilted") return ScalarizationKind::Tilted;
  bad(path, "unknown scalarization kind '" + s + "' (pnorm, chebyshev, linear, tilted)");
}

Json scalarization_to_json(const Scalarization& s) {
  Json j;
  j["kind"] = to_string(s.kind());
  if (s.kind() == ScalarizationKind::Tilted) {
    j["t"] = s.tilt();
    return j;
  }
  if (s.kind() == ScalarizationKind::WeightedPNorm) j["p"] = s.p();
  const auto w = s.weights()->values();
  j["weights"] = std::vector<double>(w.begin(), w.end());
  if (s.weights()->on_simplex()) j["simplex"] = true;
  return j;
}

Scalarization scalarization_from_json(const Json& j, const std::string& path) {
  const auto kind = scalarization_kind_from_string(as_string(require(j, "kind", path), field(path, "kind")), field(path, "kind"));
  return at_path(path, [&] {
    if (kind == ScalarizationKind::Tilted) {
      return Scalarization::tilted(as_number(require(j, "t", path), field(path, "t")));
    }
    bool simplex = false;
    if (j.contains("simplex")) {
      if (!j["simplex"].is_boolean()) bad(field(path, "simplex"), "expected a boolean");
      simplex = j["simplex"].get<bool>();
    }
    WeightVector w(as_numbers(require(j, "weights", path), field(path, "weights")), simplex);
    switch (kind) {
      case ScalarizationKind::WeightedPNorm:
        return Scalarization::weighted_p_norm(as_number(require(j, "p", path), field(path, "p")), std::move(w));
      case ScalarizationKind::Chebyshev:
        return Scalarization::chebyshev(std::move(w));
      default:
        return Scalarization::linear(std::move(w));
    }
  });
}

Json term_spec_to_json(const TermSpec& t) {
  Json j;
  j["objective"] = t.objective_index;
  switch (t.kind) {
    case TermKind::HoeffdingFinite:
      j["kind"] = "hoeffding";
      j["class_size"] = t.class_size;
      j["loss_bound"] = t.loss_bound;
      break;
    case TermKind::TrivialZero:
      j["kind"] = "trivial";
      break;
    case TermKind::UserTable: {
      j["kind"] = "table";
      Json rows = Json::array();
      for (const auto& [n, v] : t.table) rows.push_back(Json::array({n, v}));
      j["table"] = rows;
      break;
    }
  }
  return j;
}

TermSpec term_spec_from_json(const Json& j, const std::string& path) {
  const std::string kind = as_string(require(j, "kind", path), field(path, "kind"));
  const std::size_t objective = count_or(j, "objective", path, 0);
  TermSpec t;
  if (kind == "hoeffding") {
    t = TermSpec::hoeffding(as_number(require(j, "class_size", path), field(path, "class_size")),
                            number_or(j, "loss_bound", path, 1.0), objective);
  } else if (kind == "trivial") {
    t = TermSpec::trivial(objective);
  } else if (kind == "table") {
    const Json& rows = require(j, "table", path);
    const std::string rp = field(path, "table");
    if (!rows.is_array()) bad(rp, "expected an array of [n, value] rows");
    std::vector<std::pair<std::size_t, double>> table;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != 2) bad(element(rp, i), "expected [n, value]");
      table.emplace_back(as_count(rows[i][0], element(rp, i) + "[0]"), as_number(rows[i][1], element(rp, i) + "[1]"));
    }
    t = at_path(path, [&] { return TermSpec::user_table(std::move(table), objective); });
  } else {
    bad(field(path, "kind"), "unknown term kind '" + kind + "' (hoeffding, trivial, table)");
  }
  at_path(path, [&] {
    t.validate();
    return 0;
  });
  return t;
}

Json cortes_params_to_json(const CortesBoundParams& p) {
  Json j;
  j["beta"] = p.beta;
  j["diameter"] = p.diameter;
  j["loss_bound"] = p.loss_bound;
  j["n"] = p.n;
  j["objectives"] = p.objectives;
  j["epsilon"] = p.epsilon;
  j["rademacher"] = p.rademacher;
  j["delta"] = p.delta;
  return j;
}

CortesBoundParams cortes_params_from_json(const Json& j, const std::string& path, CortesBoundParams base) {
  require_object(j, path);
  base.beta = number_or(j, "beta", path, base.beta);
  base.diameter = number_or(j, "diameter", path, base.diameter);
  base.loss_bound = number_or(j, "loss_bound", path, base.loss_bound);
  base.n = count_or(j, "n", path, base.n);
  base.objectives = count_or(j, "objectives", path, base.objectives);
  base.epsilon = number_or(j, "epsilon", path, base.epsilon);
  base.rademacher = number_or(j, "rademacher", path, base.rademacher);
  base.delta = number_or(j, "delta", path, base.delta);
  at_path(path, [&] {
    base.validate();
    return 0;
  });
  return base;
}

namespace {

Json header_fields(const FiniteProblem& p) {
  Json j;
  j["hypotheses"] = p.hypotheses();
  j["outcomes"] = p.outcomes();
  j["objectives"] = p.objectives();
  j["loss_bound"] = p.loss_bound();
  const auto probs = p.outcome_probs();
  j["probs"] = std::vector<double>(probs.begin(), probs.end());
  j["trivial"] = std::vector<bool>(p.trivial_mask().begin(), p.trivial_mask().end());
  bool any_trivial = false;
  for (bool b : p.trivial_mask()) any_trivial = any_trivial || b;
  if (any_trivial) {
    Json rows = Json::array();
    for (std::size_t h = 0; h < p.hypotheses(); ++h) {
      std::vector<double> row(p.objectives());
      for (std::size_t i = 0; i < p.objectives(); ++i) row[i] = p.trivial_value(h, i);
      rows.push_back(row);
    }
    j["trivial_values"] = rows;
  }
  return j;
}

std::vector<double> flatten_losses(const Json& j, std::size_t H, std::size_t Z, std::size_t N,
                                   const std::string& path) {
  if (!j.is_array() || j.size() != H) bad(path, "expected " + std::to_string(H) + " hypothesis rows");
  std::vector<double> out;
  out.reserve(H * Z * N);
  for (std::size_t h = 0; h < H; ++h) {
    const std::string ph = element(path, h);
    if (!j[h].is_array() || j[h].size() != Z) bad(ph, "expected " + std::to_string(Z) + " outcome rows");
    for (std::size_t z = 0; z < Z; ++z) {
      const std::string pz = element(ph, z);
      if (!j[h][z].is_array() || j[h][z].size() != N) bad(pz, "expected " + std::to_string(N) + " losses");
      for (std::size_t i = 0; i < N; ++i) out.push_back(as_number(j[h][z][i], element(pz, i)));
    }
  }
  return out;
}

FiniteProblem generated_problem(const Json& j, const std::string& path) {
  const std::string kind = as_string(j["generator"], field(path, "generator"));
  const std::uint64_t seed = seed_or(j, "seed", path, 0);
  return at_path(path, [&]() -> FiniteProblem {
    if (kind == "random") {
      RandomProblemOptions o;
      o.hypotheses = count_or(j, "hypotheses", path, o.hypotheses);
      o.outcomes = count_or(j, "outcomes", path, o.outcomes);
      o.objectives = count_or(j, "objectives", path, o.objectives);
      o.loss_bound = number_or(j, "loss_bound", path, o.loss_bound);
      return make_random_finite_problem(o, seed);
    }
    if (kind == "quarter_circle") {
      QuarterCircleOptions o;
      o.front_points = count_or(j, "front_points", path, o.front_points);
      o.radius = number_or(j, "radius", path, o.radius);
      o.dominated_per_point = count_or(j, "dominated_per_point", path, o.dominated_per_point);
      o.outcomes = count_or(j, "outcomes", path, o.outcomes);
      o.loss_bound = number_or(j, "loss_bound", path, o.loss_bound);
      return make_quarter_circle_problem(o, seed);
    }
    if (kind == "all_trivial") {
      return make_all_trivial_problem(count_or(j, "hypotheses", path, 100), count_or(j, "objectives", path, 2), seed);
    }
    if (kind == "segmentation") {
      return make_segmentation_finite_problem(count_or(j, "cells", path, 8), count_or(j, "max_segments", path, 4));
    }
    bad(field(path, "generator"), "unknown generator '" + kind + "' (random, quarter_circle, all_trivial, segmentation)");
  });
}

}  // namespace

Json problem_to_json(const FiniteProblem& p) {
  Json j = header_fields(p);
  Json losses = Json::array();
  for (std::size_t h = 0; h < p.hypotheses(); ++h) {
    Json rows = Json::array();
    for (std::size_t z = 0; z < p.outcomes(); ++z) {
      std::vector<double> row(p.objectives());
      for (std::size_t i = 0; i < p.objectives(); ++i) row[i] = p.loss(h, z, i);
      rows.push_back(row);
    }
    losses.push_back(rows);
  }
  j["losses"] = losses;
  return j;
}

Json problem_to_json_with_binary(const FiniteProblem& p, const std::filesystem::path& binary_path) {
  write_losses_binary(binary_path, p.losses());
  Json j = header_fields(p);
  j["losses_file"] = binary_path.filename().string();
  j["shape"] = {p.hypotheses(), p.outcomes(), p.objectives()};
  return j;
}

FiniteProblem problem_from_json(const Json& j, const std::string& path,
                                const std::filesystem::path& base_dir) {
  require_object(j, path);
  if (j.contains("generator")) return generated_problem(j, path);

  std::size_t H = 0, Z = 0, N = 0;
  std::vector<double> losses;
  if (j.contains("losses_file")) {
    const Json& shape = require(j, "shape", path);
    const std::string sp = field(path, "shape");
    if (!shape.is_array() || shape.size() != 3) bad(sp, "expected [hypotheses, outcomes, objectives]");
    H = as_count(shape[0], element(sp, 0));
    Z = as_count(shape[1], element(sp, 1));
    N = as_count(shape[2], element(sp, 2));
    std::filesystem::path file = as_string(j["losses_file"], field(path, "losses_file"));
    if (file.is_relative()) file = base_dir / file;
    try {
      losses = read_losses_binary(file, H * Z * N);
    } catch (const Error& e) {
      bad(field(path, "losses_file"), e.what());
    }
  } else {
    H = as_count(require(j, "hypotheses", path), field(path, "hypotheses"));
    Z = as_count(require(j, "outcomes", path), field(path, "outcomes"));
    N = as_count(require(j, "objectives", path), field(path, "objectives"));
    losses = flatten_losses(require(j, "losses", path), H, Z, N, field(path, "losses"));
  }

  std::vector<double> probs = j.contains("probs") ? as_numbers(j["probs"], field(path, "probs"))
                                                  : std::vector<double>(Z, Z == 0 ? 0.0 : 1.0 / static_cast<double>(Z));
  const double bound = number_or(j, "loss_bound", path, 1.0);
  std::vector<bool> mask;
  if (j.contains("trivial")) {
    const Json& t = j["trivial"];
    if (!t.is_array()) bad(field(path, "trivial"), "expected an array of booleans");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_boolean()) bad(element(field(path, "trivial"), i), "expected a boolean");
      mask.push_back(t[i].get<bool>());
    }
  }
  std::vector<double> table;
  if (j.contains("trivial_values")) {
    const Json& rows = j["trivial_values"];
    const std::string rp = field(path, "trivial_values");
    if (!rows.is_array() || rows.size() != H) bad(rp, "expected one row per hypothesis");
    for (std::size_t h = 0; h < H; ++h) {
      const auto row = as_numbers(rows[h], element(rp, h));
      if (row.size() != N) bad(element(rp, h), "expected one value per objective");
      table.insert(table.end(), row.begin(), row.end());
    }
  }
  return at_path(path, [&] {
    return FiniteProblem(H, Z, N, std::move(losses), std::move(probs), bound, std::move(mask), std::move(table));
  });
}

void write_losses_binary(const std::filesystem::path& file, std::span<const double> values) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot open " + file.string() + " for writing");
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>(bits >> (8 * b));
    out.write(reinterpret_cast<const char*>(bytes), 8);
  }
  if (!out) throw DataError("write to " + file.string() + " failed");
}

std::vector<double> read_losses_binary(const std::filesystem::path& file, std::size_t count) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot open " + file.string());
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
      throw DataError(file.string() + " holds fewer than " + std::to_string(count) + " values");
    }
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    out[k] = std::bit_cast<double>(bits);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw DataError(file.string() + " holds more than " + std::to_string(count) + " values");
  }
  return out;
}

Json dataset_to_json(const Dataset& d) {
  Json j;
  j["seed"] = d.seed;
  j["n"] = d.outcomes.size();
  j["indices"] = d.outcomes;
  return j;
}

Dataset dataset_from_json(const Json& j, const std::string& path) {
  Dataset d;
  d.seed = seed_or(j, "seed", path, 0);
  const Json& idx = require(j, "indices", path);
  const std::string ip = field(path, "indices");
  if (!idx.is_array()) bad(ip, "expected an array of outcome indices");
  for (std::size_t k = 0; k < idx.size(); ++k) d.outcomes.push_back(as_count(idx[k], element(ip, k)));
  if (j.contains("n") && as_count(j["n"], field(path, "n")) != d.outcomes.size()) {
    bad(field(path, "n"), "does not match the number of indices");
  }
  return d;
}

Json report_to_json(const HarnessReport& r) {
  Json j;
  j["harness"] = r.harness;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"status", to_string(c.status)},
                      {"trials", c.trials},
                      {"events", c.events},
                      {"frequency", c.frequency},
                      {"threshold", c.threshold},
                      {"claim", c.upper_bound ? "at_most" : "at_least"},
                      {"worst_margin", c.worst_margin}});
  }
  j["checks"] = checks;
  j["metrics"] = Json::object();
  for (const auto& [k, v] : r.metrics) j["metrics"][k] = v;
  j["notes"] = r.notes;
  Json trials = Json::array();
  for (const auto& t : r.trials) {
    Json tj;
    tj["trial"] = t.trial;
    tj["seed"] = t.seed;
    tj["terms"] = t.terms;
    tj["empirical_pareto"] = t.empirical_pareto;
    tj["true_pareto"] = t.true_pareto;
    Json cs = Json::array();
    for (const auto& c : t.checks) {
      cs.push_back({{"name", c.name}, {"event", c.event}, {"margin", c.margin}, {"witness", c.witness}});
    }
    tj["checks"] = cs;
    tj["metrics"] = Json::object();
    for (const auto& [k, v] : t.metrics) tj["metrics"][k] = v;
    trials.push_back(tj);
  }
  j["trials"] = trials;
  return j;
}

std::string report_csv(const HarnessReport& r) {
  std::ostringstream os;
  os << "harness,check,trials,events,frequency,ceiling,status\n";
  for (const auto& c : r.checks) {
    os << r.harness << ',' << c.name << ',' << c.trials << ',' << c.events << ','
       << format_double(c.frequency) << ',' << format_double(c.threshold) << ',' << to_string(c.status)
       << '\n';
  }
  return os.str();
}

}  // namespace paretolab
