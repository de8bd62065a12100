#pragma once

// Generalization-term calculus: per-objective terms, the union-bound split of
// the confidence budget, empirical Rademacher complexity, and the two
// bounds for the max-over-convex-combinations scalarization.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace paretolab {

enum class TermKind { HoeffdingFinite, TrivialZero, UserTable };

struct TermSpec {
  TermKind kind = TermKind::TrivialZero;
  std::size_t objective_index = 0;
  // HoeffdingFinite
  double class_size = 1.0;
  double loss_bound = 1.0;
  // UserTable: (n, term) rows sorted by strictly increasing n.
  std::vector<std::pair<std::size_t, double>> table;

  static TermSpec hoeffding(double class_size, double loss_bound, std::size_t objective = 0);
  static TermSpec trivial(std::size_t objective = 0);
  static TermSpec user_table(std::vector<std::pair<std::size_t, double>> rows,
                             std::size_t objective = 0);

  bool is_trivial() const noexcept { return kind == TermKind::TrivialZero; }
  void validate() const;
};

// HoeffdingFinite: M * sqrt(ln(2 |H| / delta') / (2 n)). TrivialZero: 0.
// UserTable: the value at the largest tabulated n' <= n (terms are
// non-increasing in n, so this stays an upper bound); the table is taken as
// already calibrated at the caller's delta', which is only range-checked.
double evaluate_term(const TermSpec& spec, std::size_t n, double delta_prime);

struct ConfidenceBudget {
  double delta = 0.0;
  std::size_t nontrivial_count = 0;
  double delta_prime = 0.0;
};

// delta' = delta / (number of non-trivial objectives); delta if there are none.
ConfidenceBudget split_confidence(double delta, std::span<const TermSpec> specs);

// C_i(n_i, H, delta') for every objective under the split budget.
std::vector<double> multi_objective_terms(std::span<const TermSpec> specs,
                                          std::span<const std::size_t> per_objective_n,
                                          double delta);

// Row-major |H| x n matrix of per-sample losses.
struct LossMatrix {
  std::size_t hypotheses = 0;
  std::size_t samples = 0;
  std::vector<double> values;

  double operator()(std::size_t h, std::size_t i) const { return values[h * samples + i]; }
};

struct RademacherEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // zero in exact mode
};

inline constexpr std::size_t kRademacherExactLimit = 20;

// E_sigma[ sup_h (1/n) sum_i sigma_i loss(h, i) ] by enumerating all 2^n
// sign vectors. Throws SizeError for n > 20.
RademacherEstimate empirical_rademacher_exact(const LossMatrix& losses);

// Monte Carlo estimate over `draws` sign vectors. Draw d uses its own stream
// derived from (seed, d), so the result does not depend on evaluation order.
RademacherEstimate empirical_rademacher_monte_carlo(const LossMatrix& losses, std::size_t draws,
                                                    std::uint64_t seed);

struct CortesBoundParams {
  double beta = 1.0;        // bound on sum_i w_i M_i over W
  double diameter = 1.0;    // D
  double loss_bound = 1.0;  // M
  std::size_t n = 1;
  std::size_t objectives = 2;  // N
  double epsilon = 0.01;       // cover radius
  double rademacher = 0.0;     // empirical Rademacher estimate
  double delta = 0.05;

  void validate() const;
};

// ln |W_eps| with |W_eps| = ceil((1/eps)^(N-1)) for W the full simplex.
double log_cover_size(const CortesBoundParams& p);

// 3 beta D sqrt(ln(2 |W_eps| / delta) / (2 n))
double cortes_confidence_term(const CortesBoundParams& p);
// 3 beta D sqrt(ln(2 N / delta) / (2 n))
double improved_confidence_term(const CortesBoundParams& p);

// Gap between the bound and the empirical value L_hat_W(h):
// cortes:   2 beta R + M eps + cortes_confidence_term
// improved: 2 beta R + improved_confidence_term
double cortes_rhs(const CortesBoundParams& p);
double improved_rhs(const CortesBoundParams& p);

struct BoundComparisonRow {
  std::size_t objectives = 0;
  std::size_t n = 0;
  double epsilon = 0.0;
  double cortes = 0.0;
  double improved = 0.0;
  double ratio = 0.0;  // improved / cortes
};

std::vector<BoundComparisonRow> compare_bounds(const CortesBoundParams& base,
                                               std::span<const std::size_t> objective_counts);

// CSV with header N,n,epsilon,cortes_rhs,improved_rhs,ratio.
std::string bound_comparison_csv(std::span<const BoundComparisonRow> rows);

}  // namespace paretolab
