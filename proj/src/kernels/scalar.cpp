#include "maxtree/kernels.hpp"

#include "variants.hpp"

namespace maxtree::kernels {
namespace {

void scalar_max_scale_accumulate(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double v = a * x[j];
    y[j] = v > y[j] ? v : y[j];
  }
}

double scalar_max_product_reduce(const double* x, const double* y, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = x[j] * y[j];
    best = v > best ? v : best;
  }
  return best;
}

double scalar_max_reduce(const double* x, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) best = x[j] > best ? x[j] : best;
  return best;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", scalar_max_scale_accumulate,
                                 scalar_max_product_reduce, scalar_max_reduce};
  return table;
}

}  // namespace maxtree::kernels
