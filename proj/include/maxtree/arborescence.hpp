#pragma once

// Rooted spanning tree (RST) vectors.
//
// For a root i, w_i aggregates the weights pi(T) of all i-trees T of D(A):
//   max-times     w_i = max_T pi(T)                  (maximal RST vector)
//   sum-product   w_i = sum_T pi(T)                  (classical tree theorem)
//   p-norm        w_i = (sum_T pi(T)^p)^(1/p)
//
// The max-times vector is computed with Chu-Liu/Edmonds on log-weights and
// needs no enumeration. The other two enumerate trees and are capped at a
// small node count.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "maxtree/digraph.hpp"
#include "maxtree/semiring.hpp"

namespace maxtree {

inline constexpr std::size_t kDefaultEnumerationCap = 9;

/// One enumerated tree. parent[root] == root.
struct TreeVisit {
  std::span<const Node> parent;
  double weight;      ///< product of edge weights (compensated)
  double log_weight;  ///< sum of log edge weights
};

/// Calls `visit` once per i-tree of g, in lexicographic order of the sorted
/// edge list. Self-loops are never used. Throws DomainError when the node
/// count exceeds `cap`.
void for_each_itree(const WeightedDigraph& g, Node root,
                    const std::function<void(const TreeVisit&)>& visit,
                    std::size_t cap = kDefaultEnumerationCap);

std::vector<ITree> enumerate_itrees(const WeightedDigraph& g, Node root,
                                    std::size_t cap = kDefaultEnumerationCap);

/// M_i, the number of i-trees.
std::size_t count_itrees(const WeightedDigraph& g, Node root,
                         std::size_t cap = kDefaultEnumerationCap);

/// A maximum-weight i-tree (Chu-Liu/Edmonds). Which maximizer is returned
/// among ties is unspecified. Throws DomainError if a node cannot reach root.
ITree max_arborescence(const WeightedDigraph& g, Node root);

/// The lexicographically smallest sorted edge list among i-trees whose
/// weight is within a relative 1e-12 of the maximum.
ITree lexmin_max_arborescence(const WeightedDigraph& g, Node root);

struct RstReport {
  NonnegVector vector;
  /// Maximizing i-tree per root (max-times only; empty otherwise). These
  /// are *a* maximizer each, chosen by lexicographic tie-break.
  std::vector<ITree> witnesses;
  /// Deviation in the eigen-equation A^T w = D w, with D the row "sums"
  /// of A in the same semiring. D = I when A is max-, row- or
  /// p-stochastic respectively.
  double residual = 0.0;
};

/// w_i = max over i-trees. Throws DomainError naming the first root some
/// node cannot reach (reducible A).
RstReport max_rst_vector(const NonnegMatrix& a);

/// w_i = sum over i-trees. For row-stochastic A, w / sum(w) is the
/// stationary distribution.
RstReport sum_rst_vector(const NonnegMatrix& a, std::size_t cap = kDefaultEnumerationCap);

/// w_i = (sum over i-trees of pi(T)^p)^(1/p). p = 1 reproduces
/// sum_rst_vector exactly.
RstReport p_rst_vector(const NonnegMatrix& a, int p, std::size_t cap = kDefaultEnumerationCap);

/// max_i |(A^T (x) w)_i - w_i| / max(w_i, 1)
double verify_left_max_eigen(const NonnegMatrix& a, const NonnegVector& w);

namespace detail {

enum class Aggregation { max_times, sum_product, p_norm };

/// max_i |lhs_i - d_i w_i| / max(d_i w_i, 1), where lhs = A^T w and d the
/// row aggregate of A, both in the given semiring. Zero rows use d_i = 1.
double scaled_left_residual(const NonnegMatrix& a, const NonnegVector& w, Aggregation agg,
                            int p = 1);

}  // namespace detail

}  // namespace maxtree
