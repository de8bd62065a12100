#pragma once

// Seeded generators and brute-force oracles shared by the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "paretolab/bounds.hpp"
#include "paretolab/core.hpp"
#include "paretolab/random.hpp"
#include "paretolab/testbeds.hpp"

namespace testing_support {

using paretolab::ObjectiveVector;
using paretolab::Rng;

// Values on a coarse grid so that ties and duplicates actually occur.
inline std::vector<ObjectiveVector> random_points(Rng& rng, std::size_t count, std::size_t dim,
                                                  bool coarse) {
  std::vector<ObjectiveVector> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> v(dim);
    for (double& x : v) x = coarse ? static_cast<double>(rng.uniform_index(6)) : rng.uniform();
    pts.emplace_back(std::move(v));
  }
  return pts;
}

// All-pairs definition: kept iff no other point is <= everywhere and < somewhere.
inline std::vector<std::size_t> naive_pareto(const std::vector<ObjectiveVector>& pts) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < pts.size() && !dominated; ++b) {
      bool all_le = true;
      bool some_lt = false;
      for (std::size_t i = 0; i < pts[a].size(); ++i) {
        all_le = all_le && pts[b][i] <= pts[a][i];
        some_lt = some_lt || pts[b][i] < pts[a][i];
      }
      dominated = all_le && some_lt;
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

// Fewest training errors using exactly j label changes, over every labeling
// of the sorted samples (index j); unreachable counts stay at n + 1.
inline std::vector<std::size_t> exhaustive_errors_by_jumps(std::vector<paretolab::SegSample> s) {
  std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  const std::size_t n = s.size();
  std::vector<std::size_t> best(n, n + 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t jumps = 0, errors = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int l = static_cast<int>((mask >> i) & 1);
      errors += l != s[i].label;
      if (i > 0 && l != static_cast<int>((mask >> (i - 1)) & 1)) ++jumps;
    }
    best[jumps] = std::min(best[jumps], errors);
  }
  return best;
}

// Average over sign vectors of the largest correlation, signs taken from the
// bits of a counter.
inline double rademacher_oracle(const paretolab::LossMatrix& m) {
  const std::size_t n = m.samples;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double best = -INFINITY;
    for (std::size_t h = 0; h < m.hypotheses; ++h) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += ((mask >> i) & 1 ? 1.0 : -1.0) * m(h, i);
      best = std::max(best, s / static_cast<double>(n));
    }
    total += best;
  }
  return total / static_cast<double>(std::uint64_t{1} << n);
}

inline paretolab::LossMatrix random_losses(std::size_t hyps, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  paretolab::LossMatrix m{hyps, n, std::vector<double>(hyps * n)};
  for (double& v : m.values) v = rng.uniform();
  return m;
}

}  // namespace testing_support
