#pragma once

// Inner loops of the max-times algebra.
//
// Each kernel exists as a scalar reference and, where the target allows,
// an AVX2 (x86-64) or NEON (aarch64) variant. max() and a single multiply
// are exactly rounded, so every variant must agree with the scalar one
// bit for bit; the equivalence tests assert exactly that.
//
// The active table is picked once at first use from the CPU's features.
// Setting MAXTREE_KERNELS=scalar in the environment forces the reference
// path (any other recognized name forces that variant if available).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace maxtree::kernels {

struct KernelTable {
  std::string_view name;

  /// y[j] = max(y[j], a * x[j]) for all j. y and x may alias exactly.
  void (*max_scale_accumulate)(double* y, const double* x, double a, std::size_t n);

  /// max_j x[j] * y[j]; 0 for n == 0.
  double (*max_product_reduce)(const double* x, const double* y, std::size_t n);

  /// max_j x[j]; 0 for n == 0 (inputs are nonnegative).
  double (*max_reduce)(const double* x, std::size_t n);
};

const KernelTable& scalar_table();

/// Every table compiled in and runnable on this CPU, scalar first.
std::vector<const KernelTable*> available_tables();

/// The table the library routes through.
const KernelTable& active();

// Span conveniences over the active table.

inline void max_scale_accumulate(std::span<double> y, std::span<const double> x, double a) {
  active().max_scale_accumulate(y.data(), x.data(), a, y.size());
}

inline double max_product_reduce(std::span<const double> x, std::span<const double> y) {
  return active().max_product_reduce(x.data(), y.data(), x.size());
}

inline double max_reduce(std::span<const double> x) {
  return active().max_reduce(x.data(), x.size());
}

}  // namespace maxtree::kernels
