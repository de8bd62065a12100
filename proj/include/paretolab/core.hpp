#pragma once

// Dominance relations, Pareto filtering, additive shifts and a finite
// approximation of ray completeness over collections of objective vectors.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace paretolab {

// N objective values of one hypothesis (true or empirical). Entries must be
// finite and N >= 1. Negative entries are allowed so that additively
// shifted vectors remain representable.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;
  explicit ObjectiveVector(std::vector<double> values);
  ObjectiveVector(std::initializer_list<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& to_vector() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;

 private:
  std::vector<double> values_;
};

// A hypothesis together with whichever objective values are known for it.
struct EvaluatedHypothesis {
  std::size_t hypothesis_id = 0;
  std::optional<ObjectiveVector> true_values;
  std::optional<ObjectiveVector> empirical_values;

  // Throws DataError if neither vector is present, DimensionError if both
  // are present with different lengths.
  void validate() const;
};

// Indices (into the filtered collection) of the non-dominated points, in
// increasing order, and their objective vectors.
struct ParetoSet {
  std::vector<std::size_t> member_ids;
  std::vector<ObjectiveVector> front;
};

// Positive direction in objective space.
class Ray {
 public:
  explicit Ray(std::vector<double> direction);
  std::span<const double> direction() const noexcept { return direction_; }
  std::size_t size() const noexcept { return direction_.size(); }

 private:
  std::vector<double> direction_;
};

// Dominance is exact by default. With tolerance > 0, coordinates with
// |a_i - b_i| <= tolerance are treated as equal.
struct DominanceOptions {
  double tolerance = 0.0;
};

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b,
                      DominanceOptions opts = {});
bool strongly_dominates(const ObjectiveVector& a, const ObjectiveVector& b,
                        DominanceOptions opts = {});

// Indices of all points not strongly dominated by any other point.
// Duplicates of a non-dominated point are all kept.
ParetoSet pareto_filter(std::span<const ObjectiveVector> points, DominanceOptions opts = {});

ObjectiveVector additive_shift(const ObjectiveVector& v, std::span<const double> shifts);

struct RayCompletenessOptions {
  std::size_t grid_resolution = 90;  // rays per angular coordinate
  double angular_tolerance = 0.02;   // radians
  // When false, every front point must be strictly positive. When true,
  // points on a coordinate hyperplane participate in the angular match.
  bool allow_axis_points = false;
};

struct RayCompletenessReport {
  double covered_fraction = 0.0;
  std::size_t total_rays = 0;
  std::vector<Ray> uncovered;
};

// Deterministic ray grid over the positive orthant: N-1 hyperspherical
// angles, each at the midpoints of `resolution` equal cells of (0, pi/2).
std::vector<Ray> positive_orthant_ray_grid(std::size_t dimension, std::size_t resolution);

// Angle in radians between a point (as a direction from the origin) and a ray.
double angle_to_ray(const ObjectiveVector& point, const Ray& ray);

RayCompletenessReport ray_completeness_check(std::span<const ObjectiveVector> front,
                                             RayCompletenessOptions opts = {});

// Fraction of points in `source` whose direction lies within
// angular_tolerance of the direction of some point in `target`. Records the
// dataset-dependent "rays through the empirical front hit the true front"
// condition; no pass criterion is attached to it.
double ray_intersection_fraction(std::span<const ObjectiveVector> source,
                                 std::span<const ObjectiveVector> target,
                                 double angular_tolerance);

}  // namespace paretolab
