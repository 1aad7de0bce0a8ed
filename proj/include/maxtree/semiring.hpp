#pragma once

// Max-times and p-norm semiring arithmetic over nonnegative reals.
//
// The max-times semiring is (R+, max, *). Its p-norm relative uses
// a +_p b = (a^p + b^p)^(1/p) with the ordinary product and tends to
// max-times as p grows. Matrices here are dense and row-major; most
// operations require them square.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxtree {

using Node = std::size_t;

/// Input violates a mathematical precondition (reducible matrix, mu > 1,
/// zero row, non-SR input, ...). The CLI maps these to exit status 1.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed matrix text or unreadable file. CLI exit status 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Tolerance {
 public:
  constexpr Tolerance() = default;
  explicit Tolerance(double rel_eps);

  constexpr double rel_eps() const { return rel_eps_; }

  /// |x - y| <= rel_eps * max(1, |x|, |y|)
  bool equal(double x, double y) const;
  bool less_equal(double x, double y) const { return x <= y || equal(x, y); }

 private:
  double rel_eps_ = 1e-9;
};

class NonnegVector {
 public:
  NonnegVector() = default;
  explicit NonnegVector(std::size_t n, double fill = 0.0);
  explicit NonnegVector(std::vector<double> values);
  NonnegVector(std::initializer_list<double> values);

  static NonnegVector ones(std::size_t n) { return NonnegVector(n, 1.0); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& as_vector() const { return values_; }

  bool operator==(const NonnegVector&) const = default;

 private:
  std::vector<double> values_;
};

/// Dense nonnegative matrix. Rectangular shapes are representable
/// (judge/competitor score tables), but nearly every algorithm here
/// asks for a square one via require_square().
class NonnegMatrix {
 public:
  NonnegMatrix() = default;
  NonnegMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  NonnegMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static NonnegMatrix zeros(std::size_t rows, std::size_t cols);
  static NonnegMatrix zeros(std::size_t n) { return zeros(n, n); }
  static NonnegMatrix identity(std::size_t n);
  static NonnegMatrix filled(std::size_t n, double value);
  static NonnegMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  /// Dimension of a square matrix.
  std::size_t n() const { return rows_; }
  bool is_square() const { return rows_ == cols_; }
  void require_square(const char* what) const;

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return entries_; }

  NonnegMatrix transpose() const;
  /// Entrywise map; the caller guarantees f keeps entries finite and >= 0.
  template <class F>
  NonnegMatrix map(F&& f) const {
    std::vector<double> out(entries_.size());
    for (std::size_t k = 0; k < entries_.size(); ++k) out[k] = f(entries_[k]);
    return NonnegMatrix(rows_, cols_, std::move(out));
  }
  NonnegMatrix scaled(double factor) const;

  bool operator==(const NonnegMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// ---------------------------------------------------------------------------
// max-times arithmetic

/// C = A (x) B with c_ij = max_k a_ik b_kj.
NonnegMatrix max_matmul(const NonnegMatrix& a, const NonnegMatrix& b);

/// y = A (x) x with y_i = max_j a_ij x_j.
NonnegVector max_matvec(const NonnegMatrix& a, const NonnegVector& x);

/// y = A^T (x) x, i.e. y_i = max_j a_ji x_j, without materializing A^T.
NonnegVector max_transpose_matvec(const NonnegMatrix& a, const NonnegVector& x);

NonnegVector row_maxima(const NonnegMatrix& a);
NonnegVector column_maxima(const NonnegMatrix& a);

/// Every row maximum equals 1 within tol.
bool is_max_stochastic(const NonnegMatrix& a, Tolerance tol = {});

struct Normalized {
  NonnegMatrix matrix;  ///< D^-1 A
  NonnegVector scale;   ///< row maxima D
};

/// Divide every row by its maximum. Throws DomainError on a zero row.
/// The row maximum entry is set to exactly 1.
Normalized normalize_max_stochastic(const NonnegMatrix& a);

// ---------------------------------------------------------------------------
// p-norm semiring

/// (a^p + b^p)^(1/p). Scales by max(a, b) so large p cannot overflow.
double p_add(double a, double b, int p);

/// (sum_k x_k^p)^(1/p), scaled by max_k x_k so no term overflows.
double p_norm(std::span<const double> x, int p);

/// Every row has p-norm 1 within tol.
bool is_p_stochastic(const NonnegMatrix& a, int p, Tolerance tol = {});

/// Running product carried as an unevaluated sum hi + lo, with the
/// rounding error of each step captured exactly by fma. For the short
/// products used for tree weights the result is the exact product of the
/// factors rounded once, up to an ulp.
class CompensatedProduct {
 public:
  void multiply(double x) {
    const double p = hi_ * x;
    lo_ = std::fma(hi_, x, -p) + lo_ * x;
    hi_ = p;
  }
  double value() const { return hi_ + lo_; }

 private:
  double hi_ = 1.0;
  double lo_ = 0.0;
};

/// Above this exponent, entrywise p-th powers are taken in the log domain.
inline constexpr int kLogDomainPowerThreshold = 64;

}  // namespace maxtree
