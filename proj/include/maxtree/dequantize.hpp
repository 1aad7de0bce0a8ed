#pragma once

// Dequantization: approximating a max-stochastic A by p-stochastic
// matrices A^(p) whose p-norm RST vectors converge to the maximal RST
// vector of A as p grows.
//
// Row i of A^(p) keeps every entry below 1 and replaces each of the l_i
// unit entries by
//
//   delta_i = ((1 - sum_{j in J_i} a_ij^p) / l_i)^(1/p),  J_i = {j : a_ij < 1},
//
// which is real once p >= P0.

#include <cstddef>
#include <vector>

#include "maxtree/arborescence.hpp"
#include "maxtree/semiring.hpp"

namespace maxtree {

/// Smallest p >= 1 with sum_{j in J_i} a_ij^p <= 1 for every row. Entries
/// within tol of 1 count as unit entries. Throws DomainError unless A is
/// max-stochastic.
int p0_threshold(const NonnegMatrix& a, Tolerance tol = {});

/// Throws DomainError for p < P0.
NonnegMatrix build_Ap(const NonnegMatrix& a, int p, Tolerance tol = {});

struct DequantStep {
  int p = 0;
  NonnegMatrix Ap;
  NonnegVector wp;          ///< w^(p)(A^(p))
  double err_matrix = 0.0;  ///< max_ij (a_ij - a^(p)_ij)
  double err_vector = 0.0;  ///< max_i |w^(p)_i - w^max_i|
  double bound = 0.0;       ///< theoretical_error_bound(A, p)
};

struct ConvergenceRun {
  int p0 = 0;
  NonnegVector w_max;
  std::vector<DequantStep> steps;  ///< ascending p
  // Reported only; nothing guarantees monotone decrease.
  bool err_matrix_nonincreasing = true;
  bool err_vector_nonincreasing = true;
};

/// {P0, 2 P0, 4 P0, ...} up to `cap` (at least {P0}).
std::vector<int> default_p_sweep(int p0, int cap = 1024);

/// One step per distinct p, sorted ascending. Every p must be >= P0.
ConvergenceRun convergence_run(const NonnegMatrix& a, std::vector<int> p_values,
                               Tolerance tol = {}, std::size_t cap = kDefaultEnumerationCap);

/// max_i (M_i^(1/p) - 1) + max_ij (a_ij - a^(p)_ij), M_i the number of
/// i-trees. This is the final estimate of the convergence argument; it
/// treats the constant in the tree-product perturbation step as 1 and is
/// therefore not a guaranteed bound for every input (see
/// rigorous_error_bound).
double theoretical_error_bound(const NonnegMatrix& a, int p, Tolerance tol = {},
                               std::size_t cap = kDefaultEnumerationCap);

/// max_i (M_i^(1/p) - 1) + (n - 1) max_ij (a_ij - a^(p)_ij). A product of
/// n - 1 factors in [0, 1] moves by at most the sum of the factor
/// changes, so this one always holds.
double rigorous_error_bound(const NonnegMatrix& a, int p, Tolerance tol = {},
                            std::size_t cap = kDefaultEnumerationCap);

}  // namespace maxtree
