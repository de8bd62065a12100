#pragma once

// Scalarization family: weighted p-norms, Chebyshev (weighted max), linear
// (weighted sum) and tilted (exponentially weighted) scalarizations, with
// the Lipschitz constant and monotonic norm each one is paired with.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "paretolab/core.hpp"
#include "paretolab/random.hpp"

namespace paretolab {

class WeightVector {
 public:
  // Weights must be finite, >= 0, and not all zero. With on_simplex set they
  // must additionally sum to 1 within 1e-12.
  explicit WeightVector(std::vector<double> weights, bool on_simplex = false);

  static WeightVector uniform(std::size_t dimension);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> values() const noexcept { return weights_; }
  bool on_simplex() const noexcept { return on_simplex_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> weights_;
  bool on_simplex_ = false;
};

// Uniform draw from the probability simplex (flat Dirichlet).
WeightVector sample_simplex_weights(std::size_t dimension, Rng& rng);

enum class NormKind { WeightedP, WeightedMax, WeightedL1, Max };

// Monotonic norm a scalarization is Lipschitz against. Applied to |x|.
struct MonotonicNorm {
  NormKind kind = NormKind::Max;
  double p = 0.0;               // WeightedP only
  std::vector<double> weights;  // empty for Max

  double operator()(std::span<const double> x) const;
};

enum class ScalarizationKind { WeightedPNorm, Chebyshev, Linear, Tilted };

class Scalarization {
 public:
  // (sum_i |w_i x_i|^p)^(1/p); p must lie in (1, inf).
  static Scalarization weighted_p_norm(double p, WeightVector w);
  // max_i |w_i x_i|
  static Scalarization chebyshev(WeightVector w);
  // sum_i w_i x_i
  static Scalarization linear(WeightVector w);
  // (1/t) log((1/N) sum_i exp(t x_i)); t = 0 is the arithmetic mean.
  static Scalarization tilted(double t);

  ScalarizationKind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  double tilt() const noexcept { return t_; }
  const std::optional<WeightVector>& weights() const noexcept { return weights_; }

  // 1 for every implemented kind: each is 1-Lipschitz against norm().
  double lipschitz_constant() const noexcept { return 1.0; }
  MonotonicNorm norm() const;

  double operator()(std::span<const double> x) const;

  friend bool operator==(const Scalarization&, const Scalarization&) = default;

 private:
  Scalarization() = default;

  ScalarizationKind kind_ = ScalarizationKind::Linear;
  double p_ = 1.0;
  double t_ = 0.0;
  std::optional<WeightVector> weights_;
};

double scalarize(const Scalarization& s, const ObjectiveVector& x);

// Tilted risk J_t(x), evaluated with a max-shifted log-sum-exp.
double tilted_risk(double t, std::span<const double> x);

enum class ValueSource { True, Empirical };

// Every hypothesis_id attaining the minimum scalarized value. Values within
// tie_tolerance of the minimum count as ties (0 = exact ties only).
std::vector<std::size_t> argmin_scalarized(const Scalarization& s,
                                           std::span<const EvaluatedHypothesis> hs,
                                           ValueSource source, double tie_tolerance = 0.0);

// Weights w_i = 1 / v_i, so the Chebyshev scalarization equals 1 at v.
WeightVector chebyshev_weights_for(const ObjectiveVector& v);

// L * ||(c_1, ..., c_N)|| for the norm the scalarization is paired with.
// The excess-bound right-hand side is twice this value.
double scalarization_rhs(const Scalarization& s, std::span<const double> terms);

// Outer tilt t applied to the inner tilted risks J_{tau_k}(group_k).
double term_hierarchical(double t, std::span<const double> taus,
                         std::span<const std::vector<double>> group_losses);

// Shift constants that make every objective's scaled empirical term equal:
// C = 2 + max_j (ref_j - min_j) / c_j and K_i = C c_i - ref_i.
struct ShiftConstruction {
  double scale = 0.0;
  std::vector<double> shift_constants;

  ObjectiveVector apply(const ObjectiveVector& v) const;
};

ShiftConstruction shift_construction(const ObjectiveVector& empirical_ref,
                                     std::span<const double> terms,
                                     std::span<const double> class_minima);

}  // namespace paretolab
