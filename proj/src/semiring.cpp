#include "maxtree/semiring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxtree/kernels.hpp"

namespace maxtree {
namespace {

void check_entry(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError("entries must be finite and nonnegative, got " + std::to_string(v));
  }
}

void require_dims(bool ok, const char* what) {
  if (!ok) throw DomainError(std::string("dimension mismatch in ") + what);
}

}  // namespace

Tolerance::Tolerance(double rel_eps) : rel_eps_(rel_eps) {
  if (!(rel_eps > 0.0) || !std::isfinite(rel_eps)) {
    throw DomainError("tolerance must be positive and finite");
  }
}

bool Tolerance::equal(double x, double y) const {
  const double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= rel_eps_ * scale;
}

NonnegVector::NonnegVector(std::size_t n, double fill) : values_(n, fill) { check_entry(fill); }

NonnegVector::NonnegVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) check_entry(v);
}

NonnegVector::NonnegVector(std::initializer_list<double> values)
    : NonnegVector(std::vector<double>(values)) {}

NonnegMatrix::NonnegMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DomainError("matrix dimension must be at least 1");
  if (entries_.size() != rows * cols) throw DomainError("entry count does not match shape");
  for (double v : entries_) check_entry(v);
}

NonnegMatrix::NonnegMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  *this = from_rows(copy);
}

NonnegMatrix NonnegMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DomainError("matrix must have at least one row");
  const std::size_t cols = rows.front().size();
  std::vector<double> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DomainError("ragged matrix rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return NonnegMatrix(rows.size(), cols, std::move(entries));
}

NonnegMatrix NonnegMatrix::zeros(std::size_t rows, std::size_t cols) {
  return NonnegMatrix(rows, cols, std::vector<double>(rows * cols, 0.0));
}

NonnegMatrix NonnegMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return NonnegMatrix(n, n, std::move(e));
}

NonnegMatrix NonnegMatrix::filled(std::size_t n, double value) {
  return NonnegMatrix(n, n, std::vector<double>(n * n, value));
}

void NonnegMatrix::require_square(const char* what) const {
  if (!is_square()) throw DomainError(std::string(what) + " requires a square matrix");
}

NonnegMatrix NonnegMatrix::transpose() const {
  std::vector<double> out(entries_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = entries_[i * cols_ + j];
  return NonnegMatrix(cols_, rows_, std::move(out));
}

NonnegMatrix NonnegMatrix::scaled(double factor) const {
  check_entry(factor);
  return map([factor](double v) { return v * factor; });
}

NonnegMatrix max_matmul(const NonnegMatrix& a, const NonnegMatrix& b) {
  require_dims(a.cols() == b.rows(), "max_matmul");
  std::vector<double> out(a.rows() * b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::span<double> dst(out.data() + i * b.cols(), b.cols());
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik > 0.0) kernels::max_scale_accumulate(dst, b.row(k), aik);
    }
  }
  return NonnegMatrix(a.rows(), b.cols(), std::move(out));
}

NonnegVector max_matvec(const NonnegMatrix& a, const NonnegVector& x) {
  require_dims(a.cols() == x.size(), "max_matvec");
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = kernels::max_product_reduce(a.row(i), x.values());
  return NonnegVector(std::move(y));
}

NonnegVector max_transpose_matvec(const NonnegMatrix& a, const NonnegVector& x) {
  require_dims(a.rows() == x.size(), "max_transpose_matvec");
  std::vector<double> y(a.cols(), 0.0);
  for (std::size_t j = 0; j < a.rows(); ++j) {
    if (x[j] > 0.0) kernels::max_scale_accumulate(y, a.row(j), x[j]);
  }
  return NonnegVector(std::move(y));
}

NonnegVector row_maxima(const NonnegMatrix& a) {
  std::vector<double> d(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) d[i] = kernels::max_reduce(a.row(i));
  return NonnegVector(std::move(d));
}

NonnegVector column_maxima(const NonnegMatrix& a) {
  std::vector<double> d(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) kernels::max_scale_accumulate(d, a.row(i), 1.0);
  return NonnegVector(std::move(d));
}

bool is_max_stochastic(const NonnegMatrix& a, Tolerance tol) {
  const NonnegVector d = row_maxima(a);
  return std::all_of(d.values().begin(), d.values().end(),
                     [&](double m) { return tol.equal(m, 1.0); });
}

Normalized normalize_max_stochastic(const NonnegMatrix& a) {
  const NonnegVector d = row_maxima(a);
  std::vector<double> out(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (d[i] == 0.0) {
      throw DomainError("row " + std::to_string(i + 1) + " is zero; D is singular");
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
      double& v = out[i * a.cols() + j];
      // x / x is exactly 1 in IEEE arithmetic, so argmax entries land on 1.
      v = v / d[i];
    }
  }
  return {NonnegMatrix(a.rows(), a.cols(), std::move(out)), d};
}

double p_add(double a, double b, int p) {
  if (p < 1) throw DomainError("p must be >= 1");
  if (a < 0.0 || b < 0.0) throw DomainError("p_add takes nonnegative arguments");
  if (p == 1) return a + b;
  const double m = std::max(a, b);
  if (m == 0.0) return 0.0;
  const double lo = std::min(a, b) / m;
  return m * std::pow(1.0 + std::pow(lo, p), 1.0 / p);
}

double p_norm(std::span<const double> x, int p) {
  if (p < 1) throw DomainError("p must be >= 1");
  double m = 0.0;
  for (double v : x) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  if (p == 1) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  // Scaled by the largest term: (v/m)^p <= 1, and anything that underflows
  // is below eps relative to the leading 1.
  double s = 0.0;
  for (double v : x) s += std::pow(v / m, p);
  return m * std::pow(s, 1.0 / p);
}

bool is_p_stochastic(const NonnegMatrix& a, int p, Tolerance tol) {
  if (p < 1) throw DomainError("p must be >= 1");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!tol.equal(p_norm(a.row(i), p), 1.0)) return false;
  }
  return true;
}

}  // namespace maxtree
