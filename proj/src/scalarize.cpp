#include "paretolab/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paretolab/error.hpp"

namespace paretolab {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(want) +
                         " objectives, got " + std::to_string(got));
  }
}

// (sum_i |w_i x_i|^p)^(1/p), scaled by the largest entry so the powers
// cannot overflow.
double weighted_p_norm_value(double p, std::span<const double> w, std::span<const double> x) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(w[i] * x[i]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(w[i] * x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

}  // namespace

WeightVector::WeightVector(std::vector<double> weights, bool on_simplex)
    : weights_(std::move(weights)), on_simplex_(on_simplex) {
  if (weights_.empty()) throw DimensionError("WeightVector: empty");
  bool any_positive = false;
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw ParameterError("WeightVector: weights must be >= 0");
    any_positive = any_positive || w > 0.0;
    sum += w;
  }
  if (!any_positive) throw ParameterError("WeightVector: at least one weight must be > 0");
  if (on_simplex_ && std::abs(sum - 1.0) > 1e-12) {
    throw ParameterError("WeightVector: simplex weights must sum to 1");
  }
}

WeightVector WeightVector::uniform(std::size_t dimension) {
  return WeightVector(std::vector<double>(dimension, 1.0 / static_cast<double>(dimension)), true);
}

WeightVector sample_simplex_weights(std::size_t dimension, Rng& rng) {
  if (dimension == 0) throw DimensionError("sample_simplex_weights: dimension must be >= 1");
  std::vector<double> w(dimension);
  double sum = 0.0;
  for (double& x : w) {
    x = rng.exponential();
    sum += x;
  }
  for (double& x : w) x /= sum;
  // Renormalizing can leave the sum a few ulps away from 1; push the
  // residual into the largest weight.
  double total = 0.0;
  for (double x : w) total += x;
  auto largest = std::max_element(w.begin(), w.end());
  *largest += 1.0 - total;
  return WeightVector(std::move(w), true);
}

double MonotonicNorm::operator()(std::span<const double> x) const {
  switch (kind) {
    case NormKind::Max: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return m;
    }
    case NormKind::WeightedMax: {
      require_dim(x.size(), weights.size(), "MonotonicNorm");
      double m = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(weights[i] * x[i]));
      return m;
    }
    case NormKind::WeightedL1: {
      require_dim(x.size(), weights.size(), "MonotonicNorm");
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * std::abs(x[i]);
      return s;
    }
    case NormKind::WeightedP:
      require_dim(x.size(), weights.size(), "MonotonicNorm");
      return weighted_p_norm_value(p, weights, x);
  }
  return 0.0;
}

Scalarization Scalarization::weighted_p_norm(double p, WeightVector w) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw ParameterError("weighted p-norm needs p in (1, inf); use linear or chebyshev");
  }
  Scalarization s;
  s.kind_ = ScalarizationKind::WeightedPNorm;
  s.p_ = p;
  s.weights_ = std::move(w);
  return s;
}

Scalarization Scalarization::chebyshev(WeightVector w) {
  Scalarization s;
  s.kind_ = ScalarizationKind::Chebyshev;
  s.weights_ = std::move(w);
  return s;
}

Scalarization Scalarization::linear(WeightVector w) {
  Scalarization s;
  s.kind_ = ScalarizationKind::Linear;
  s.weights_ = std::move(w);
  return s;
}

Scalarization Scalarization::tilted(double t) {
  if (!std::isfinite(t)) throw ParameterError("tilted scalarization needs a finite tilt");
  Scalarization s;
  s.kind_ = ScalarizationKind::Tilted;
  s.t_ = t;
  return s;
}

MonotonicNorm Scalarization::norm() const {
  MonotonicNorm n;
  switch (kind_) {
    case ScalarizationKind::WeightedPNorm:
      n.kind = NormKind::WeightedP;
      n.p = p_;
      break;
    case ScalarizationKind::Chebyshev:
      n.kind = NormKind::WeightedMax;
      break;
    case ScalarizationKind::Linear:
      n.kind = NormKind::WeightedL1;
      break;
    case ScalarizationKind::Tilted:
      n.kind = NormKind::Max;
      return n;
  }
  const auto w = weights_->values();
  n.weights.assign(w.begin(), w.end());
  return n;
}

double Scalarization::operator()(std::span<const double> x) const {
  if (kind_ == ScalarizationKind::Tilted) return tilted_risk(t_, x);
  require_dim(x.size(), weights_->size(), "scalarize");
  const WeightVector& w = *weights_;
  switch (kind_) {
    case ScalarizationKind::Linear: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i];
      return s;
    }
    case ScalarizationKind::Chebyshev: {
      double m = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(w[i] * x[i]));
      return m;
    }
    default:
      return weighted_p_norm_value(p_, w.values(), x);
  }
}

double scalarize(const Scalarization& s, const ObjectiveVector& x) { return s(x.values()); }

double tilted_risk(double t, std::span<const double> x) {
  if (x.empty()) throw DimensionError("tilted_risk: needs at least one value");
  const double n = static_cast<double>(x.size());
  if (t == 0.0) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / n;
  }
  double top = -std::numeric_limits<double>::infinity();
  for (double v : x) top = std::max(top, t * v);
  // log(mean(exp(t x - top))) = log1p(mean(expm1(t x - top))); the expm1
  // form keeps full precision when all t*x are close together.
  double acc = 0.0;
  for (double v : x) acc += std::expm1(t * v - top);
  return (top + std::log1p(acc / n)) / t;
}

std::vector<std::size_t> argmin_scalarized(const Scalarization& s,
                                           std::span<const EvaluatedHypothesis> hs,
                                           ValueSource source, double tie_tolerance) {
  if (hs.empty()) throw EmptyInputError("argmin_scalarized: no hypotheses");
  if (tie_tolerance < 0.0) throw ParameterError("argmin_scalarized: negative tie tolerance");
  std::vector<double> values;
  values.reserve(hs.size());
  for (const auto& h : hs) {
    const auto& v = source == ValueSource::True ? h.true_values : h.empirical_values;
    if (!v) {
      throw DataError("argmin_scalarized: hypothesis " + std::to_string(h.hypothesis_id) +
                      " lacks " + (source == ValueSource::True ? "true" : "empirical") +
                      " values");
    }
    values.push_back(scalarize(s, *v));
  }
  const double best = *std::min_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (values[i] - best <= tie_tolerance) out.push_back(hs[i].hypothesis_id);
  }
  return out;
}

WeightVector chebyshev_weights_for(const ObjectiveVector& v) {
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw PositivityError("chebyshev_weights_for: objective " + std::to_string(i) +
                            " is not strictly positive");
    }
    w[i] = 1.0 / v[i];
  }
  return WeightVector(std::move(w));
}

double scalarization_rhs(const Scalarization& s, std::span<const double> terms) {
  for (double c : terms) {
    if (!(c >= 0.0)) throw ParameterError("scalarization_rhs: terms must be >= 0");
  }
  return s.lipschitz_constant() * s.norm()(terms);
}

double term_hierarchical(double t, std::span<const double> taus,
                         std::span<const std::vector<double>> group_losses) {
  if (taus.size() != group_losses.size()) {
    throw DimensionError("term_hierarchical: one tilt per group required");
  }
  std::vector<double> inner(group_losses.size());
  for (std::size_t k = 0; k < group_losses.size(); ++k) {
    inner[k] = tilted_risk(taus[k], group_losses[k]);
  }
  return tilted_risk(t, inner);
}

ObjectiveVector ShiftConstruction::apply(const ObjectiveVector& v) const {
  return additive_shift(v, shift_constants);
}

ShiftConstruction shift_construction(const ObjectiveVector& empirical_ref,
                                     std::span<const double> terms,
                                     std::span<const double> class_minima) {
  const std::size_t n = empirical_ref.size();
  require_dim(terms.size(), n, "shift_construction");
  require_dim(class_minima.size(), n, "shift_construction");
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(terms[j] > 0.0)) throw PositivityError("shift_construction: terms must be > 0");
    if (class_minima[j] > empirical_ref[j]) {
      throw ConsistencyError("shift_construction: class minimum exceeds reference value");
    }
    worst = std::max(worst, (empirical_ref[j] - class_minima[j]) / terms[j]);
  }
  ShiftConstruction out;
  out.scale = 2.0 + worst;
  out.shift_constants.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.shift_constants[i] = out.scale * terms[i] - empirical_ref[i];
  }
  return out;
}

}  // namespace paretolab
