// Compiled with -mavx2 only; callers must check the CPU before use.

#include <immintrin.h>

#include "variants.hpp"

namespace maxtree::kernels {
namespace {

// _mm256_max_pd(a, b) returns b when the operands compare equal or
// unordered, matching the scalar `v > y ? v : y` with (v, y) ordering.

void avx2_max_scale_accumulate(double* y, const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_mul_pd(va, _mm256_loadu_pd(x + j));
    _mm256_storeu_pd(y + j, _mm256_max_pd(v, _mm256_loadu_pd(y + j)));
  }
  for (; j < n; ++j) {
    const double v = a * x[j];
    y[j] = v > y[j] ? v : y[j];
  }
}

double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  const __m128d s = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
  return _mm_cvtsd_f64(s);
}

double avx2_max_product_reduce(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_mul_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j));
    acc = _mm256_max_pd(v, acc);
  }
  double best = horizontal_max(acc);
  for (; j < n; ++j) {
    const double v = x[j] * y[j];
    best = v > best ? v : best;
  }
  return best;
}

double avx2_max_reduce(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_max_pd(_mm256_loadu_pd(x + j), acc);
  double best = horizontal_max(acc);
  for (; j < n; ++j) best = x[j] > best ? x[j] : best;
  return best;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", avx2_max_scale_accumulate, avx2_max_product_reduce,
                                 avx2_max_reduce};
  return table;
}

}  // namespace maxtree::kernels
