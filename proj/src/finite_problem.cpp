#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "paretolab/random.hpp"
#include "paretolab/testbeds.hpp"

namespace paretolab {

FiniteProblem::FiniteProblem(std::size_t hypotheses, std::size_t outcomes, std::size_t objectives,
                             std::vector<double> losses, std::vector<double> outcome_probs,
                             double loss_bound, std::vector<bool> trivial_mask,
                             std::vector<double> trivial_table)
    : hypotheses_(hypotheses),
      outcomes_(outcomes),
      objectives_(objectives),
      losses_(std::move(losses)),
      probs_(std::move(outcome_probs)),
      loss_bound_(loss_bound),
      trivial_mask_(std::move(trivial_mask)),
      trivial_table_(std::move(trivial_table)) {
  if (hypotheses_ == 0 || outcomes_ == 0 || objectives_ == 0) {
    throw ConfigError("FiniteProblem: hypotheses, outcomes and objectives must be >= 1");
  }
  if (!(loss_bound_ > 0.0) || !std::isfinite(loss_bound_)) {
    throw ConfigError("FiniteProblem: loss bound must be positive and finite");
  }
  if (losses_.size() != hypotheses_ * outcomes_ * objectives_) {
    throw DimensionError("FiniteProblem: loss tensor has " + std::to_string(losses_.size()) +
                         " entries, expected " +
                         std::to_string(hypotheses_ * outcomes_ * objectives_));
  }
  if (probs_.size() != outcomes_) throw DimensionError("FiniteProblem: one probability per outcome");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("FiniteProblem: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("FiniteProblem: probabilities must sum to 1");
  if (trivial_mask_.empty()) trivial_mask_.assign(objectives_, false);
  if (trivial_mask_.size() != objectives_) throw DimensionError("FiniteProblem: trivial mask size");
  const bool any_trivial = std::find(trivial_mask_.begin(), trivial_mask_.end(), true) != trivial_mask_.end();
  if (any_trivial && trivial_table_.size() != hypotheses_ * objectives_) {
    throw DimensionError("FiniteProblem: trivial objectives need an |H| x N value table");
  }
  for (double v : trivial_table_) {
    if (!std::isfinite(v)) throw ConfigError("FiniteProblem: non-finite trivial value");
  }
  for (std::size_t h = 0; h < hypotheses_; ++h) {
    for (std::size_t z = 0; z < outcomes_; ++z) {
      for (std::size_t i = 0; i < objectives_; ++i) {
        if (trivial_mask_[i]) continue;
        const double l = loss(h, z, i);
        if (!(l >= 0.0 && l <= loss_bound_)) {
          throw ConfigError("FiniteProblem: loss outside [0, M] at (" + std::to_string(h) + ", " +
                            std::to_string(z) + ", " + std::to_string(i) + ")");
        }
      }
    }
  }
}

FiniteProblem make_random_finite_problem(const RandomProblemOptions& opts, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> losses(opts.hypotheses * opts.outcomes * opts.objectives);
  for (double& l : losses) l = opts.loss_bound * rng.uniform();
  std::vector<double> probs(opts.outcomes, 1.0 / static_cast<double>(opts.outcomes));
  return FiniteProblem(opts.hypotheses, opts.outcomes, opts.objectives, std::move(losses),
                       std::move(probs), opts.loss_bound);
}

FiniteProblem make_all_trivial_problem(std::size_t hypotheses, std::size_t objectives,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> table(hypotheses * objectives);
  for (double& v : table) v = rng.uniform();
  std::vector<double> losses = table;  // one outcome; tensor mirrors the table
  return FiniteProblem(hypotheses, 1, objectives, std::move(losses), {1.0}, 1.0,
                       std::vector<bool>(objectives, true), std::move(table));
}

FiniteProblem make_quarter_circle_problem(const QuarterCircleOptions& opts, std::uint64_t seed) {
  if (opts.front_points < 2) throw ConfigError("quarter circle: need at least 2 front points");
  if (opts.outcomes < 2 || opts.outcomes % 2 != 0) {
    throw ConfigError("quarter circle: outcome count must be even and >= 2");
  }
  const double outer = opts.radius * (1.0 + 0.25 * static_cast<double>(opts.dominated_per_point));
  if (!(opts.radius > 0.0) || outer > opts.loss_bound) {
    throw ConfigError("quarter circle: radii must fit inside [0, M]");
  }

  std::vector<std::array<double, 2>> targets;
  for (std::size_t k = 0; k < opts.front_points; ++k) {
    std::array<double, 2> v{};
    if (k == 0) {
      v = {opts.radius, 0.0};
    } else if (k + 1 == opts.front_points) {
      v = {0.0, opts.radius};
    } else {
      const double theta = (std::numbers::pi / 2.0) * static_cast<double>(k) /
                           static_cast<double>(opts.front_points - 1);
      v = {opts.radius * std::cos(theta), opts.radius * std::sin(theta)};
    }
    targets.push_back(v);
    for (std::size_t j = 0; j < opts.dominated_per_point; ++j) {
      const double scale = 1.0 + 0.25 * static_cast<double>(j + 1);
      targets.push_back({v[0] * scale, v[1] * scale});
    }
  }

  Rng rng(seed);
  const std::size_t hyps = targets.size();
  const std::size_t z_count = opts.outcomes;
  std::vector<double> losses(hyps * z_count * 2);
  std::vector<double> pattern(z_count);
  for (std::size_t h = 0; h < hyps; ++h) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t z = 0; z < z_count; ++z) pattern[z] = z < z_count / 2 ? 1.0 : -1.0;
      for (std::size_t z = z_count - 1; z > 0; --z) {
        std::swap(pattern[z], pattern[rng.uniform_index(z + 1)]);
      }
      const double v = targets[h][i];
      const double spread = std::min(v, opts.loss_bound - v);
      for (std::size_t z = 0; z < z_count; ++z) {
        losses[(h * z_count + z) * 2 + i] = std::clamp(v + spread * pattern[z], 0.0, opts.loss_bound);
      }
    }
  }
  std::vector<double> probs(z_count, 1.0 / static_cast<double>(z_count));
  return FiniteProblem(hyps, z_count, 2, std::move(losses), std::move(probs), opts.loss_bound);
}

FiniteProblem make_segmentation_finite_problem(std::size_t cells, std::size_t max_segments) {
  if (cells == 0 || cells > 20) throw ConfigError("segmentation problem: cells must lie in [1, 20]");
  if (max_segments == 0) throw ConfigError("segmentation problem: max_segments must be >= 1");

  std::vector<std::uint32_t> labelings;
  std::vector<std::size_t> jump_counts;
  for (std::uint32_t bits = 0; bits < (1U << cells); ++bits) {
    std::size_t jumps = 0;
    for (std::size_t c = 1; c < cells; ++c) jumps += ((bits >> c) & 1U) != ((bits >> (c - 1)) & 1U);
    if (jumps + 1 <= max_segments) {
      labelings.push_back(bits);
      jump_counts.push_back(jumps);
    }
  }

  // Outcome z = 2 * cell + y.
  const std::size_t hyps = labelings.size();
  const std::size_t z_count = 2 * cells;
  std::vector<double> losses(hyps * z_count * 2);
  std::vector<double> table(hyps * 2, 0.0);
  for (std::size_t h = 0; h < hyps; ++h) {
    table[h * 2] = static_cast<double>(jump_counts[h]);
    for (std::size_t z = 0; z < z_count; ++z) {
      const std::uint32_t predicted = (labelings[h] >> (z / 2)) & 1U;
      losses[(h * z_count + z) * 2] = table[h * 2];
      losses[(h * z_count + z) * 2 + 1] = predicted == (z % 2) ? 0.0 : 1.0;
    }
  }
  std::vector<double> probs(z_count, 1.0 / static_cast<double>(z_count));
  return FiniteProblem(hyps, z_count, 2, std::move(losses), std::move(probs), 1.0, {true, false},
                       std::move(table));
}

std::vector<ObjectiveVector> finite_true_objectives(const FiniteProblem& p) {
  std::vector<ObjectiveVector> out;
  out.reserve(p.hypotheses());
  std::vector<double> row(p.objectives());
  for (std::size_t h = 0; h < p.hypotheses(); ++h) {
    for (std::size_t i = 0; i < p.objectives(); ++i) {
      if (p.is_trivial(i)) {
        row[i] = p.trivial_value(h, i);
        continue;
      }
      double s = 0.0;
      for (std::size_t z = 0; z < p.outcomes(); ++z) s += p.prob(z) * p.loss(h, z, i);
      row[i] = s;
    }
    out.emplace_back(row);
  }
  return out;
}

Dataset sample_dataset(const FiniteProblem& p, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("sample_dataset: n must be >= 1");
  std::vector<double> cdf(p.outcomes());
  double acc = 0.0;
  for (std::size_t z = 0; z < p.outcomes(); ++z) {
    acc += p.prob(z);
    cdf[z] = acc;
  }
  Rng rng(seed);
  Dataset d;
  d.seed = seed;
  d.outcomes.resize(n);
  for (auto& o : d.outcomes) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    o = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), p.outcomes() - 1);
  }
  return d;
}

std::vector<ObjectiveVector> finite_empirical_objectives(
    const FiniteProblem& p, const Dataset& data, std::span<const std::vector<std::size_t>> subsets) {
  if (!subsets.empty() && subsets.size() != p.objectives()) {
    throw ConfigError("finite_empirical_objectives: one subset per objective required");
  }
  for (std::size_t z : data.outcomes) {
    if (z >= p.outcomes()) throw ConfigError("finite_empirical_objectives: outcome index out of range");
  }
  for (std::size_t i = 0; i < p.objectives(); ++i) {
    if (p.is_trivial(i)) continue;
    if (subsets.empty() ? data.outcomes.empty() : subsets[i].empty()) {
      throw ConfigError("finite_empirical_objectives: empty sample subset for objective " +
                        std::to_string(i));
    }
    if (!subsets.empty()) {
      for (std::size_t pos : subsets[i]) {
        if (pos >= data.outcomes.size()) {
          throw ConfigError("finite_empirical_objectives: subset position out of range");
        }
      }
    }
  }

  // Outcome counts per objective turn the per-hypothesis mean into a sum
  // over distinct outcomes.
  std::vector<std::vector<double>> weights(p.objectives(), std::vector<double>(p.outcomes(), 0.0));
  for (std::size_t i = 0; i < p.objectives(); ++i) {
    if (p.is_trivial(i)) continue;
    if (subsets.empty()) {
      for (std::size_t z : data.outcomes) weights[i][z] += 1.0;
    } else {
      for (std::size_t pos : subsets[i]) weights[i][data.outcomes[pos]] += 1.0;
    }
  }

  std::vector<ObjectiveVector> out;
  out.reserve(p.hypotheses());
  std::vector<double> row(p.objectives());
  for (std::size_t h = 0; h < p.hypotheses(); ++h) {
    for (std::size_t i = 0; i < p.objectives(); ++i) {
      if (p.is_trivial(i)) {
        row[i] = p.trivial_value(h, i);
        continue;
      }
      double s = 0.0;
      double count = 0.0;
      for (std::size_t z = 0; z < p.outcomes(); ++z) {
        s += weights[i][z] * p.loss(h, z, i);
        count += weights[i][z];
      }
      row[i] = s / count;
    }
    out.emplace_back(row);
  }
  return out;
}

std::vector<std::vector<std::size_t>> prefix_subsets(std::span<const std::size_t> per_objective_n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t n : per_objective_n) {
    std::vector<std::size_t> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = k;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<EvaluatedHypothesis> evaluated_hypotheses(std::span<const ObjectiveVector> true_values,
                                                      std::span<const ObjectiveVector> empirical) {
  const std::size_t count = std::max(true_values.size(), empirical.size());
  if (!true_values.empty() && !empirical.empty() && true_values.size() != empirical.size()) {
    throw DimensionError("evaluated_hypotheses: true and empirical rows differ in count");
  }
  std::vector<EvaluatedHypothesis> out(count);
  for (std::size_t h = 0; h < count; ++h) {
    out[h].hypothesis_id = h;
    if (!true_values.empty()) out[h].true_values = true_values[h];
    if (!empirical.empty()) out[h].empirical_values = empirical[h];
    out[h].validate();
  }
  return out;
}

TermGroupsProblem make_term_groups_problem(std::size_t models, std::size_t groups,
                                           std::size_t samples_per_group, std::uint64_t seed) {
  Rng rng(seed);
  TermGroupsProblem p;
  p.groups = groups;
  p.samples_per_group = samples_per_group;
  p.model_losses.assign(models, std::vector<std::vector<double>>(groups,
                                                                 std::vector<double>(samples_per_group)));
  for (auto& model : p.model_losses) {
    for (auto& group : model) {
      // Group-specific difficulty so the risks actually differ.
      const double level = rng.uniform();
      for (double& l : group) l = level * rng.uniform() * 2.0;
    }
  }
  p.validate();
  return p;
}

void TermGroupsProblem::validate() const {
  if (groups == 0 || samples_per_group == 0) throw ConfigError("TERM groups: empty group");
  for (const auto& model : model_losses) {
    if (model.size() != groups) throw DimensionError("TERM groups: wrong group count");
    for (const auto& g : model) {
      if (g.size() != samples_per_group) throw DimensionError("TERM groups: groups must have equal size");
    }
  }
}

std::vector<double> term_group_risks(std::span<const std::vector<double>> group_losses) {
  std::vector<double> out;
  out.reserve(group_losses.size());
  for (const auto& g : group_losses) {
    if (g.empty()) throw ConfigError("term_group_risks: empty group");
    double s = 0.0;
    for (double l : g) s += l;
    out.push_back(s / static_cast<double>(g.size()));
  }
  return out;
}

}  // namespace paretolab
