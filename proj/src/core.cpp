#include "paretolab/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "paretolab/error.hpp"

namespace paretolab {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

ObjectiveVector::ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("ObjectiveVector: needs at least one objective");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("ObjectiveVector: non-finite entry");
  }
}

ObjectiveVector::ObjectiveVector(std::initializer_list<double> values)
    : ObjectiveVector(std::vector<double>(values)) {}

void EvaluatedHypothesis::validate() const {
  if (!true_values && !empirical_values) {
    throw DataError("EvaluatedHypothesis " + std::to_string(hypothesis_id) +
                    ": no objective values");
  }
  if (true_values && empirical_values) {
    require_same_size(true_values->size(), empirical_values->size(), "EvaluatedHypothesis");
  }
}

Ray::Ray(std::vector<double> direction) : direction_(std::move(direction)) {
  if (direction_.empty()) throw DimensionError("Ray: empty direction");
  for (double d : direction_) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw ParameterError("Ray: direction components must be finite and > 0");
    }
  }
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b, DominanceOptions opts) {
  require_same_size(a.size(), b.size(), "weakly_dominates");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + opts.tolerance) return false;
  }
  return true;
}

bool strongly_dominates(const ObjectiveVector& a, const ObjectiveVector& b, DominanceOptions opts) {
  require_same_size(a.size(), b.size(), "strongly_dominates");
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + opts.tolerance) return false;
    if (a[i] < b[i] - opts.tolerance) strict = true;
  }
  return strict;
}

ParetoSet pareto_filter(std::span<const ObjectiveVector> points, DominanceOptions opts) {
  if (points.empty()) throw EmptyInputError("pareto_filter: empty input");
  const std::size_t dim = points.front().size();
  for (const auto& p : points) require_same_size(p.size(), dim, "pareto_filter");

  std::vector<std::size_t> members;
  if (opts.tolerance > 0.0) {
    // Tolerant dominance is not transitive, so compare against every point.
    for (std::size_t i = 0; i < points.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
        dominated = j != i && strongly_dominates(points[j], points[i], opts);
      }
      if (!dominated) members.push_back(i);
    }
  } else {
    // Any strong dominator of p is lexicographically smaller than p, and
    // exact strong dominance is transitive, so sweeping in lexicographic
    // order and testing against the current front suffices.
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(points[a].begin(), points[a].end(), points[b].begin(),
                                          points[b].end());
    });
    for (std::size_t idx : order) {
      const bool dominated = std::any_of(members.begin(), members.end(), [&](std::size_t m) {
        return strongly_dominates(points[m], points[idx]);
      });
      if (!dominated) members.push_back(idx);
    }
    std::sort(members.begin(), members.end());
  }

  ParetoSet out;
  out.member_ids = std::move(members);
  out.front.reserve(out.member_ids.size());
  for (std::size_t id : out.member_ids) out.front.push_back(points[id]);
  return out;
}

ObjectiveVector additive_shift(const ObjectiveVector& v, std::span<const double> shifts) {
  require_same_size(v.size(), shifts.size(), "additive_shift");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + shifts[i];
  return ObjectiveVector(std::move(out));
}

std::vector<Ray> positive_orthant_ray_grid(std::size_t dimension, std::size_t resolution) {
  if (dimension == 0) throw DimensionError("ray grid: dimension must be >= 1");
  if (resolution == 0) throw ParameterError("ray grid: resolution must be positive");
  if (dimension == 1) return {Ray({1.0})};

  const std::size_t angles = dimension - 1;
  std::size_t total = 1;
  for (std::size_t a = 0; a < angles; ++a) total *= resolution;

  const double cell = (std::numbers::pi / 2.0) / static_cast<double>(resolution);
  std::vector<Ray> grid;
  grid.reserve(total);
  std::vector<std::size_t> digits(angles, 0);
  for (std::size_t r = 0; r < total; ++r) {
    std::size_t rest = r;
    for (std::size_t a = 0; a < angles; ++a) {
      digits[a] = rest % resolution;
      rest /= resolution;
    }
    std::vector<double> dir(dimension);
    double sin_prod = 1.0;
    for (std::size_t a = 0; a < angles; ++a) {
      const double phi = (static_cast<double>(digits[a]) + 0.5) * cell;
      dir[a] = sin_prod * std::cos(phi);
      sin_prod *= std::sin(phi);
    }
    dir[angles] = sin_prod;
    grid.emplace_back(std::move(dir));
  }
  return grid;
}

double angle_to_ray(const ObjectiveVector& point, const Ray& ray) {
  require_same_size(point.size(), ray.size(), "angle_to_ray");
  const double pn = norm2(point.values());
  if (pn == 0.0) return std::numeric_limits<double>::infinity();
  const auto dir = ray.direction();
  const double dn = norm2(dir);
  // atan2 of the perpendicular and parallel parts stays accurate near 0,
  // where acos of the cosine loses half the digits.
  double dot = 0.0;
  for (std::size_t i = 0; i < dir.size(); ++i) dot += point[i] * dir[i] / dn;
  double perp = 0.0;
  for (std::size_t i = 0; i < dir.size(); ++i) {
    const double r = point[i] - dot * dir[i] / dn;
    perp += r * r;
  }
  return std::atan2(std::sqrt(perp), dot);
}

RayCompletenessReport ray_completeness_check(std::span<const ObjectiveVector> front,
                                             RayCompletenessOptions opts) {
  if (!(opts.angular_tolerance > 0.0)) {
    throw ParameterError("ray_completeness_check: angular tolerance must be > 0");
  }
  if (front.empty()) throw EmptyInputError("ray_completeness_check: empty front");
  const std::size_t dim = front.front().size();
  for (const auto& p : front) {
    require_same_size(p.size(), dim, "ray_completeness_check");
    if (!opts.allow_axis_points) {
      for (double v : p) {
        if (!(v > 0.0)) {
          throw ParameterError(
              "ray_completeness_check: front point with non-positive entry; set "
              "allow_axis_points to include it");
        }
      }
    }
  }

  RayCompletenessReport report;
  const auto grid = positive_orthant_ray_grid(dim, opts.grid_resolution);
  report.total_rays = grid.size();
  std::size_t covered = 0;
  for (const auto& ray : grid) {
    const bool hit = std::any_of(front.begin(), front.end(), [&](const ObjectiveVector& p) {
      return angle_to_ray(p, ray) <= opts.angular_tolerance;
    });
    if (hit) {
      ++covered;
    } else {
      report.uncovered.push_back(ray);
    }
  }
  report.covered_fraction = static_cast<double>(covered) / static_cast<double>(grid.size());
  return report;
}

double ray_intersection_fraction(std::span<const ObjectiveVector> source,
                                 std::span<const ObjectiveVector> target,
                                 double angular_tolerance) {
  if (!(angular_tolerance > 0.0)) {
    throw ParameterError("ray_intersection_fraction: angular tolerance must be > 0");
  }
  if (source.empty()) return 1.0;
  std::size_t hits = 0;
  for (const auto& s : source) {
    const double sn = norm2(s.values());
    bool hit = false;
    for (const auto& t : target) {
      require_same_size(s.size(), t.size(), "ray_intersection_fraction");
      const double tn = norm2(t.values());
      if (sn == 0.0 || tn == 0.0) {
        hit = sn == tn;
      } else {
        double dot = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) dot += s[i] * t[i];
        hit = std::acos(std::clamp(dot / (sn * tn), -1.0, 1.0)) <= angular_tolerance;
      }
      if (hit) break;
    }
    if (hit) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(source.size());
}

}  // namespace paretolab
