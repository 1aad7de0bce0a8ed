#pragma once

// Ranking from pairwise comparisons via maximal RST vectors.

#include <cstddef>
#include <vector>

#include "maxtree/semiring.hpp"

namespace maxtree {

struct RankingResult {
  NonnegVector weights;
  std::vector<Node> order;              ///< by descending weight, ties by ascending index
  std::vector<std::vector<Node>> ties;  ///< maximal equal-weight runs of `order`
  double residual = 0.0;
};

/// Orders `weights` and groups ties (within tol, chained along the order).
RankingResult make_ranking(const NonnegVector& weights, Tolerance tol = {});

/// Symmetrically reciprocal: all entries positive and a_ij a_ji = 1
/// within tol (so the diagonal is 1).
bool is_sr_matrix(const NonnegMatrix& a, Tolerance tol = {});

/// Weights are the maximal RST vector of A^T. The residual measures
/// A (x) w = D w with D the column maxima of A. Throws DomainError for a
/// reducible A.
RankingResult ahp_rank(const NonnegMatrix& a, Tolerance tol = {});

/// max_i |(A^T (x) w)_i - d_i w_i| / max(d_i w_i, 1), d_i = max_j a_ij.
/// Throws DomainError when a row of A is zero.
double generalized_eigen_residual(const NonnegMatrix& a, const NonnegVector& w);

/// e_A(x) = max_ij a_ij x_j / x_i. Throws DomainError if some x_i = 0.
double error_functional(const NonnegMatrix& a, const NonnegVector& x);

struct JudgeCompetitorResult {
  NonnegMatrix combined;  ///< C (x) J, competitor-to-competitor scores
  RankingResult ranking;  ///< maximal RST vector of the combined matrix
};

/// judges: m x n (judge rows score competitors), competitors: n x m.
/// Every row of both must have maximum 1 within tol. Throws DomainError
/// if C (x) J is reducible, listing its strongly connected components.
JudgeCompetitorResult judge_competitor_rank(const NonnegMatrix& judges,
                                            const NonnegMatrix& competitors, Tolerance tol = {});

}  // namespace maxtree
