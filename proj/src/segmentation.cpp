#include <algorithm>
#include <cstdint>
#include <limits>

#include "paretolab/random.hpp"
#include "paretolab/testbeds.hpp"

namespace paretolab {

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max() / 2;

std::vector<SegSample> sorted_copy(std::span<const SegSample> samples) {
  std::vector<SegSample> s(samples.begin(), samples.end());
  // Duplicate x values (a measure-zero event under the data model) keep
  // their input order.
  std::stable_sort(s.begin(), s.end(), [](const SegSample& a, const SegSample& b) { return a.x < b.x; });
  for (const auto& v : s) {
    if (v.label != 0 && v.label != 1) throw ConfigError("segmentation: labels must be 0 or 1");
  }
  return s;
}

// errors[i][j][l]: fewest errors on samples 0..i using exactly j label
// changes with sample i predicted as l. from_switch records whether the
// optimum at (i, j, l) entered through a label change at i.
struct SegTable {
  std::size_t n = 0;
  std::size_t max_jumps = 0;
  std::vector<std::size_t> errors;
  std::vector<std::uint8_t> from_switch;

  std::size_t index(std::size_t i, std::size_t j, int l) const {
    return (i * (max_jumps + 1) + j) * 2 + static_cast<std::size_t>(l);
  }
};

SegTable run_dp(const std::vector<SegSample>& s, std::size_t max_jumps) {
  SegTable t;
  t.n = s.size();
  t.max_jumps = std::min(max_jumps, s.empty() ? std::size_t{0} : s.size() - 1);
  t.errors.assign(t.n * (t.max_jumps + 1) * 2, kUnreachable);
  t.from_switch.assign(t.errors.size(), 0);
  if (t.n == 0) return t;
  for (int l = 0; l < 2; ++l) t.errors[t.index(0, 0, l)] = s[0].label != l;
  for (std::size_t i = 1; i < t.n; ++i) {
    for (std::size_t j = 0; j <= t.max_jumps; ++j) {
      for (int l = 0; l < 2; ++l) {
        const std::size_t stay = t.errors[t.index(i - 1, j, l)];
        const std::size_t change = j > 0 ? t.errors[t.index(i - 1, j - 1, 1 - l)] : kUnreachable;
        const bool take_change = change < stay;
        const std::size_t best = take_change ? change : stay;
        if (best >= kUnreachable) continue;
        t.errors[t.index(i, j, l)] = best + (s[i].label != l);
        t.from_switch[t.index(i, j, l)] = take_change;
      }
    }
  }
  return t;
}

SegHypothesis reconstruct(const SegTable& t, const std::vector<SegSample>& s, std::size_t j, int l) {
  std::vector<int> labels(t.n);
  for (std::size_t i = t.n; i-- > 0;) {
    labels[i] = l;
    if (i > 0 && t.from_switch[t.index(i, j, l)]) {
      --j;
      l = 1 - l;
    }
  }
  SegHypothesis h;
  h.segment_labels.push_back(labels[0]);
  for (std::size_t i = 1; i < t.n; ++i) {
    if (labels[i] != labels[i - 1]) {
      h.jump_positions.push_back(0.5 * (s[i - 1].x + s[i].x));
      h.segment_labels.push_back(labels[i]);
    }
  }
  return h;
}

}  // namespace

int SegHypothesis::predict(double x) const {
  const auto it = std::upper_bound(jump_positions.begin(), jump_positions.end(), x);
  return segment_labels[static_cast<std::size_t>(it - jump_positions.begin())];
}

std::vector<SegSample> sample_segmentation_data(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SegSample> out(n);
  for (auto& s : out) {
    s.x = rng.uniform();
    s.label = rng.coin() ? 1 : 0;
  }
  return out;
}

SegFit segmentation_erm(std::span<const SegSample> samples, std::size_t max_jumps) {
  if (samples.empty()) throw EmptyInputError("segmentation_erm: no samples");
  const auto s = sorted_copy(samples);
  const auto t = run_dp(s, max_jumps);

  std::size_t best = kUnreachable;
  std::size_t best_j = 0;
  int best_l = 0;
  for (std::size_t j = 0; j <= t.max_jumps; ++j) {
    for (int l = 0; l < 2; ++l) {
      const std::size_t e = t.errors[t.index(t.n - 1, j, l)];
      if (e < best) {
        best = e;
        best_j = j;
        best_l = l;
      }
    }
  }
  SegFit fit;
  fit.hypothesis = reconstruct(t, s, best_j, best_l);
  fit.errors = best;
  fit.error_rate = static_cast<double>(best) / static_cast<double>(t.n);
  return fit;
}

SegmentationFront segmentation_empirical_front(std::span<const SegSample> samples,
                                               std::size_t max_segments) {
  if (samples.empty()) throw EmptyInputError("segmentation_empirical_front: no samples");
  if (max_segments == 0) throw ConfigError("segmentation_empirical_front: max_segments must be >= 1");
  const auto s = sorted_copy(samples);
  const auto t = run_dp(s, max_segments - 1);

  SegmentationFront front;
  std::size_t running = kUnreachable;
  for (std::size_t k = 0; k < max_segments; ++k) {
    if (k <= t.max_jumps) {
      for (int l = 0; l < 2; ++l) running = std::min(running, t.errors[t.index(t.n - 1, k, l)]);
    }
    SegFrontPoint p{k, running, static_cast<double>(running) / static_cast<double>(t.n)};
    front.profile.push_back(p);
    if (k == 0 || running < front.profile[k - 1].errors) front.pareto.push_back(p);
  }
  return front;
}

}  // namespace paretolab
