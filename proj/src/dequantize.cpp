#include "maxtree/dequantize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxtree/digraph.hpp"

namespace maxtree {
namespace {

constexpr int kMaxP = 1 << 30;

void require_max_stochastic(const NonnegMatrix& a, Tolerance tol) {
  a.require_square("dequantization");
  if (!is_max_stochastic(a, tol)) throw DomainError("matrix is not max-stochastic");
}

bool is_unit(double v, Tolerance tol) { return tol.equal(v, 1.0); }

/// v^p, through exp(p log v) once p is large enough for v^p to underflow.
double power(double v, int p) {
  if (p <= kLogDomainPowerThreshold) return std::pow(v, p);
  return v == 0.0 ? 0.0 : std::exp(static_cast<double>(p) * std::log(v));
}

double subunit_power_sum(std::span<const double> row, int p, Tolerance tol) {
  double s = 0.0;
  for (double v : row)
    if (!is_unit(v, tol)) s += power(v, p);
  return s;
}

int row_threshold(std::span<const double> row, Tolerance tol) {
  const auto fits = [&](int p) { return subunit_power_sum(row, p, tol) <= 1.0; };
  if (fits(1)) return 1;
  int hi = 2;
  while (!fits(hi)) {
    if (hi >= kMaxP / 2) throw DomainError("P0 exceeds 2^30; row has entries too close to 1");
    hi *= 2;
  }
  int lo = hi / 2;  // fails
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (fits(mid) ? hi : lo) = mid;
  }
  return hi;
}

double matrix_gap(const NonnegMatrix& a, const NonnegMatrix& ap) {
  double gap = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) gap = std::max(gap, a.data()[k] - ap.data()[k]);
  return gap;
}

std::vector<std::size_t> tree_counts(const NonnegMatrix& a, std::size_t cap) {
  const WeightedDigraph g = WeightedDigraph::from_matrix(a);
  std::vector<std::size_t> m(a.n());
  for (Node i = 0; i < a.n(); ++i) m[i] = count_itrees(g, i, cap);
  return m;
}

double bound_from(const std::vector<std::size_t>& counts, double gap, int p, double gap_factor) {
  double tree_term = 0.0;
  for (std::size_t m : counts)
    tree_term = std::max(tree_term, std::pow(static_cast<double>(m), 1.0 / p) - 1.0);
  return tree_term + gap_factor * gap;
}

}  // namespace

int p0_threshold(const NonnegMatrix& a, Tolerance tol) {
  require_max_stochastic(a, tol);
  int p0 = 1;
  for (std::size_t i = 0; i < a.n(); ++i) p0 = std::max(p0, row_threshold(a.row(i), tol));
  return p0;
}

NonnegMatrix build_Ap(const NonnegMatrix& a, int p, Tolerance tol) {
  const int p0 = p0_threshold(a, tol);
  if (p < p0) {
    throw DomainError("p = " + std::to_string(p) + " is below P0 = " + std::to_string(p0));
  }
  const std::size_t n = a.n();
  std::vector<double> out(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    const auto units = std::count_if(row.begin(), row.end(), [&](double v) { return is_unit(v, tol); });
    const double slack = std::max(0.0, 1.0 - subunit_power_sum(row, p, tol));
    const double delta = std::pow(slack / static_cast<double>(units), 1.0 / p);
    for (std::size_t j = 0; j < n; ++j)
      if (is_unit(row[j], tol)) out[i * n + j] = delta;
  }
  return NonnegMatrix(n, n, std::move(out));
}

std::vector<int> default_p_sweep(int p0, int cap) {
  std::vector<int> sweep{p0};
  while (sweep.back() <= cap / 2) sweep.push_back(sweep.back() * 2);
  return sweep;
}

ConvergenceRun convergence_run(const NonnegMatrix& a, std::vector<int> p_values, Tolerance tol,
                               std::size_t cap) {
  ConvergenceRun run;
  run.p0 = p0_threshold(a, tol);
  std::sort(p_values.begin(), p_values.end());
  p_values.erase(std::unique(p_values.begin(), p_values.end()), p_values.end());
  if (!p_values.empty() && p_values.front() < run.p0) {
    throw DomainError("p = " + std::to_string(p_values.front()) + " is below P0 = " +
                      std::to_string(run.p0));
  }
  run.w_max = max_rst_vector(a).vector;
  const auto counts = tree_counts(a, cap);

  for (int p : p_values) {
    DequantStep step;
    step.p = p;
    step.Ap = build_Ap(a, p, tol);
    step.wp = p_rst_vector(step.Ap, p, cap).vector;
    step.err_matrix = matrix_gap(a, step.Ap);
    for (std::size_t i = 0; i < a.n(); ++i)
      step.err_vector = std::max(step.err_vector, std::fabs(step.wp[i] - run.w_max[i]));
    step.bound = bound_from(counts, step.err_matrix, p, 1.0);
    if (!run.steps.empty()) {
      const DequantStep& prev = run.steps.back();
      if (!tol.less_equal(step.err_matrix, prev.err_matrix)) run.err_matrix_nonincreasing = false;
      if (!tol.less_equal(step.err_vector, prev.err_vector)) run.err_vector_nonincreasing = false;
    }
    run.steps.push_back(std::move(step));
  }
  return run;
}

double theoretical_error_bound(const NonnegMatrix& a, int p, Tolerance tol, std::size_t cap) {
  const NonnegMatrix ap = build_Ap(a, p, tol);
  return bound_from(tree_counts(a, cap), matrix_gap(a, ap), p, 1.0);
}

double rigorous_error_bound(const NonnegMatrix& a, int p, Tolerance tol, std::size_t cap) {
  const NonnegMatrix ap = build_Ap(a, p, tol);
  const double factor = a.n() > 1 ? static_cast<double>(a.n() - 1) : 0.0;
  return bound_from(tree_counts(a, cap), matrix_gap(a, ap), p, factor);
}

}  // namespace maxtree
