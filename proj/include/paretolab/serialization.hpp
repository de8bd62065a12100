#pragma once

// JSON and CSV forms of the library types. Readers take a field path so a
// ConfigError names the offending field, e.g. "config.problem.shape[1]".

#include <filesystem>
#include <string>

#include <json.hpp>

#include "paretolab/bounds.hpp"
#include "paretolab/scalarize.hpp"
#include "paretolab/testbeds.hpp"
#include "paretolab/verify.hpp"

namespace paretolab {

using Json = nlohmann::ordered_json;

inline constexpr int kConfigSchema = 1;

// {"kind": "chebyshev" | "linear" | "pnorm" | "tilted", "weights": [...], "p": 2, "t": 1}
Json scalarization_to_json(const Scalarization& s);
Scalarization scalarization_from_json(const Json& j, const std::string& path);

// {"kind": "hoeffding" | "trivial" | "table", "objective": i, ...}
Json term_spec_to_json(const TermSpec& t);
TermSpec term_spec_from_json(const Json& j, const std::string& path);

Json cortes_params_to_json(const CortesBoundParams& p);
// Missing fields keep the values already in `base`.
CortesBoundParams cortes_params_from_json(const Json& j, const std::string& path,
                                          CortesBoundParams base = {});

// Inline form: {"hypotheses", "outcomes", "objectives", "loss_bound",
// "losses": H x Z x N nested arrays, "probs", "trivial", "trivial_values"}.
Json problem_to_json(const FiniteProblem& p);

// Writes the loss tensor as little-endian float64 to `binary_path` and
// returns a header referencing it: {"losses_file": name, "shape": [H, Z, N]}.
Json problem_to_json_with_binary(const FiniteProblem& p, const std::filesystem::path& binary_path);

// Accepts the inline form, the binary-file form (relative paths resolve
// against base_dir) or a generator: {"generator": "random" | "quarter_circle"
// | "all_trivial" | "segmentation", "seed": s, ...options}.
FiniteProblem problem_from_json(const Json& j, const std::string& path,
                                const std::filesystem::path& base_dir = {});

void write_losses_binary(const std::filesystem::path& file, std::span<const double> values);
std::vector<double> read_losses_binary(const std::filesystem::path& file, std::size_t count);

// {"seed": s, "n": n, "indices": [...]}
Json dataset_to_json(const Dataset& d);
Dataset dataset_from_json(const Json& j, const std::string& path);

Json report_to_json(const HarnessReport& r);

// Header plus one summary row per check:
// harness,check,trials,events,frequency,ceiling,status
std::string report_csv(const HarnessReport& r);

const char* to_string(ScalarizationKind k);
ScalarizationKind scalarization_kind_from_string(const std::string& s, const std::string& path);

}  // namespace paretolab
