#include <arm_neon.h>

#include "variants.hpp"

namespace maxtree::kernels {
namespace {

// vmaxq_f64 propagates NaN where the scalar path would not; inputs are
// finite by construction of NonnegMatrix/NonnegVector.

void neon_max_scale_accumulate(double* y, const double* x, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t v = vmulq_f64(va, vld1q_f64(x + j));
    vst1q_f64(y + j, vmaxq_f64(v, vld1q_f64(y + j)));
  }
  for (; j < n; ++j) {
    const double v = a * x[j];
    y[j] = v > y[j] ? v : y[j];
  }
}

double neon_max_product_reduce(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) acc = vmaxq_f64(vmulq_f64(vld1q_f64(x + j), vld1q_f64(y + j)), acc);
  double best = vmaxvq_f64(acc);
  for (; j < n; ++j) {
    const double v = x[j] * y[j];
    best = v > best ? v : best;
  }
  return best;
}

double neon_max_reduce(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) acc = vmaxq_f64(vld1q_f64(x + j), acc);
  double best = vmaxvq_f64(acc);
  for (; j < n; ++j) best = x[j] > best ? x[j] : best;
  return best;
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{"neon", neon_max_scale_accumulate, neon_max_product_reduce,
                                 neon_max_reduce};
  return table;
}

}  // namespace maxtree::kernels
