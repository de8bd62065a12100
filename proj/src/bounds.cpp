#include "paretolab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "paretolab/error.hpp"
#include "paretolab/random.hpp"

namespace paretolab {

namespace {

void require_delta(double delta, const char* what) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError(std::string(what) + ": confidence must lie in (0, 1)");
  }
}

void validate_matrix(const LossMatrix& m) {
  if (m.hypotheses == 0 || m.samples == 0) throw EmptyInputError("rademacher: empty loss matrix");
  if (m.values.size() != m.hypotheses * m.samples) {
    throw DimensionError("rademacher: loss matrix size does not match its shape");
  }
}

double sup_correlation(const LossMatrix& m, std::span<const double> signs) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < m.hypotheses; ++h) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.samples; ++i) s += signs[i] * m(h, i);
    best = std::max(best, s);
  }
  return best / static_cast<double>(m.samples);
}

}  // namespace

TermSpec TermSpec::hoeffding(double class_size, double loss_bound, std::size_t objective) {
  TermSpec s;
  s.kind = TermKind::HoeffdingFinite;
  s.class_size = class_size;
  s.loss_bound = loss_bound;
  s.objective_index = objective;
  s.validate();
  return s;
}

TermSpec TermSpec::trivial(std::size_t objective) {
  TermSpec s;
  s.objective_index = objective;
  return s;
}

TermSpec TermSpec::user_table(std::vector<std::pair<std::size_t, double>> rows,
                              std::size_t objective) {
  TermSpec s;
  s.kind = TermKind::UserTable;
  s.table = std::move(rows);
  s.objective_index = objective;
  s.validate();
  return s;
}

void TermSpec::validate() const {
  switch (kind) {
    case TermKind::HoeffdingFinite:
      if (!(class_size >= 1.0)) throw ParameterError("hoeffding term: class_size must be >= 1");
      if (!(loss_bound > 0.0)) throw ParameterError("hoeffding term: loss bound must be > 0");
      break;
    case TermKind::UserTable:
      if (table.empty()) throw ParameterError("user table term: no rows");
      for (std::size_t r = 0; r < table.size(); ++r) {
        if (table[r].first == 0 || !(table[r].second >= 0.0)) {
          throw ParameterError("user table term: rows need n >= 1 and value >= 0");
        }
        if (r > 0 && table[r].first <= table[r - 1].first) {
          throw ParameterError("user table term: n must be strictly increasing");
        }
      }
      break;
    case TermKind::TrivialZero:
      break;
  }
}

double evaluate_term(const TermSpec& spec, std::size_t n, double delta_prime) {
  require_delta(delta_prime, "evaluate_term");
  if (n == 0) throw ParameterError("evaluate_term: n must be >= 1");
  switch (spec.kind) {
    case TermKind::TrivialZero:
      return 0.0;
    case TermKind::HoeffdingFinite:
      spec.validate();
      return spec.loss_bound *
             std::sqrt(std::log(2.0 * spec.class_size / delta_prime) / (2.0 * static_cast<double>(n)));
    case TermKind::UserTable: {
      spec.validate();
      auto it = std::upper_bound(spec.table.begin(), spec.table.end(), n,
                                 [](std::size_t v, const auto& row) { return v < row.first; });
      if (it == spec.table.begin()) {
        throw ParameterError("user table term: n below the smallest tabulated sample count");
      }
      return std::prev(it)->second;
    }
  }
  return 0.0;
}

ConfidenceBudget split_confidence(double delta, std::span<const TermSpec> specs) {
  require_delta(delta, "split_confidence");
  ConfidenceBudget b;
  b.delta = delta;
  b.nontrivial_count = static_cast<std::size_t>(
      std::count_if(specs.begin(), specs.end(), [](const TermSpec& s) { return !s.is_trivial(); }));
  b.delta_prime = delta / static_cast<double>(std::max<std::size_t>(b.nontrivial_count, 1));
  return b;
}

std::vector<double> multi_objective_terms(std::span<const TermSpec> specs,
                                          std::span<const std::size_t> per_objective_n,
                                          double delta) {
  if (specs.size() != per_objective_n.size()) {
    throw DimensionError("multi_objective_terms: one sample count per objective required");
  }
  const auto budget = split_confidence(delta, specs);
  std::vector<double> out(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out[i] = evaluate_term(specs[i], per_objective_n[i], budget.delta_prime);
  }
  return out;
}

RademacherEstimate empirical_rademacher_exact(const LossMatrix& losses) {
  validate_matrix(losses);
  const std::size_t n = losses.samples;
  if (n > kRademacherExactLimit) {
    throw SizeError("rademacher: exact enumeration limited to n <= 20");
  }
  const std::uint64_t patterns = std::uint64_t{1} << n;
  std::vector<double> signs(n);
  double total = 0.0;
  for (std::uint64_t bits = 0; bits < patterns; ++bits) {
    for (std::size_t i = 0; i < n; ++i) signs[i] = ((bits >> i) & 1U) ? 1.0 : -1.0;
    total += sup_correlation(losses, signs);
  }
  return {total / static_cast<double>(patterns), 0.0};
}

RademacherEstimate empirical_rademacher_monte_carlo(const LossMatrix& losses, std::size_t draws,
                                                    std::uint64_t seed) {
  validate_matrix(losses);
  if (draws < 2) throw ParameterError("rademacher: Monte Carlo needs at least 2 draws");
  std::vector<double> signs(losses.samples);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    Rng rng(derive_seed(seed, d));
    for (double& s : signs) s = rng.sign();
    const double v = sup_correlation(losses, signs);
    const double delta = v - mean;
    mean += delta / static_cast<double>(d + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(draws - 1);
  return {mean, std::sqrt(var / static_cast<double>(draws))};
}

void CortesBoundParams::validate() const {
  if (!(beta > 0.0) || !(diameter > 0.0) || !(loss_bound > 0.0)) {
    throw ParameterError("bound params: beta, D and M must be > 0");
  }
  if (n == 0 || objectives == 0) throw ParameterError("bound params: n and N must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ParameterError("bound params: epsilon must lie in (0, 1]");
  if (!(rademacher >= 0.0)) throw ParameterError("bound params: Rademacher estimate must be >= 0");
  require_delta(delta, "bound params");
}

double log_cover_size(const CortesBoundParams& p) {
  p.validate();
  const double exponent = static_cast<double>(p.objectives - 1);
  const double count = std::pow(1.0 / p.epsilon, exponent);
  // The ceiling only matters while the count has a fractional part; the
  // small relative slack absorbs rounding in pow (100^1 must stay 100).
  if (count < 0x1.0p52) return std::log(std::ceil(count * (1.0 - 1e-12)));
  return exponent * std::log(1.0 / p.epsilon);
}

double cortes_confidence_term(const CortesBoundParams& p) {
  const double log_w = log_cover_size(p);
  return 3.0 * p.beta * p.diameter *
         std::sqrt((std::log(2.0 / p.delta) + log_w) / (2.0 * static_cast<double>(p.n)));
}

double improved_confidence_term(const CortesBoundParams& p) {
  p.validate();
  return 3.0 * p.beta * p.diameter *
         std::sqrt(std::log(2.0 * static_cast<double>(p.objectives) / p.delta) /
                   (2.0 * static_cast<double>(p.n)));
}

double cortes_rhs(const CortesBoundParams& p) {
  return 2.0 * p.beta * p.rademacher + p.loss_bound * p.epsilon + cortes_confidence_term(p);
}

double improved_rhs(const CortesBoundParams& p) {
  return 2.0 * p.beta * p.rademacher + improved_confidence_term(p);
}

std::vector<BoundComparisonRow> compare_bounds(const CortesBoundParams& base,
                                               std::span<const std::size_t> objective_counts) {
  std::vector<BoundComparisonRow> rows;
  for (std::size_t count : objective_counts) {
    CortesBoundParams p = base;
    p.objectives = count;
    BoundComparisonRow r;
    r.objectives = count;
    r.n = p.n;
    r.epsilon = p.epsilon;
    r.cortes = cortes_rhs(p);
    r.improved = improved_rhs(p);
    r.ratio = r.improved / r.cortes;
    rows.push_back(r);
  }
  return rows;
}

std::string bound_comparison_csv(std::span<const BoundComparisonRow> rows) {
  std::ostringstream out;
  out.precision(17);
  out << "N,n,epsilon,cortes_rhs,improved_rhs,ratio\n";
  for (const auto& r : rows) {
    out << r.objectives << ',' << r.n << ',' << r.epsilon << ',' << r.cortes << ',' << r.improved
        << ',' << r.ratio << '\n';
  }
  return out.str();
}

}  // namespace paretolab
