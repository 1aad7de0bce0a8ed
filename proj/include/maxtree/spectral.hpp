#pragma once

// Max-algebraic spectral quantities: the maximum cycle geometric mean,
// the Kleene star, critical cycles and their components, and the block
// structure of the Kleene star of a visualized matrix.

#include <cstddef>
#include <optional>
#include <vector>

#include "maxtree/digraph.hpp"
#include "maxtree/semiring.hpp"

namespace maxtree {

/// max over directed cycles of (cycle weight)^(1/length).
///
/// Karp's maximum mean cycle recurrence runs on log-weights per strongly
/// connected component. The cycles on Karp's optimal walk are then
/// re-evaluated from the original weights, so a matrix whose best cycle
/// is made of exact 1s reports exactly 1. Throws DomainError when D(A)
/// has no cycle.
double max_cycle_geometric_mean(const NonnegMatrix& a);

/// As above, but nullopt for an acyclic D(A).
std::optional<double> try_max_cycle_geometric_mean(const NonnegMatrix& a);

struct KleeneStar {
  NonnegMatrix star;
  bool positive = false;  ///< every entry > 0; equivalent to A irreducible
};

struct KleeneOptions {
  /// With 1 < mu(A) <= 1 + rel_eps, divide A by mu before closing.
  bool renormalize = false;
};

/// A* = I (+) A (+) ... (+) A^(n-1). Requires mu(A) <= 1 + rel_eps, else
/// DomainError ("series diverges"). Acyclic inputs are fine.
KleeneStar kleene_star(const NonnegMatrix& a, Tolerance tol = {}, KleeneOptions opts = {});

/// Max-times transitive closure (Floyd-Warshall) with the diagonal forced
/// to 1. Meaningful only when mu(A) <= 1; no check is made.
NonnegMatrix max_closure_unchecked(const NonnegMatrix& a);

struct CriticalStructure {
  double mu = 0.0;
  std::vector<Node> critical_nodes;       ///< N^C(A), ascending
  std::vector<EdgePair> critical_edges;   ///< E^C(A), sorted
  NonnegMatrix critical_matrix;           ///< n x n: a_ij on critical edges, else 0
  /// Strongly connected components of the critical graph, ordered by
  /// smallest member.
  std::vector<std::vector<Node>> dc_components;
  /// dc_components plus a singleton per non-critical node, ordered by
  /// smallest member. Its size is r'.
  std::vector<std::vector<Node>> dcstar_components;
  /// node -> index into dcstar_components
  std::vector<std::size_t> component_of;

  bool is_critical(Node v) const;
};

/// Edge (i, j) is critical iff b_ij * (B*)_ji = 1 within tol, B = A / mu(A).
CriticalStructure critical_structure(const NonnegMatrix& a, Tolerance tol = {});

/// r' x r' matrix of block maxima over the components of D^{C*}(A).
NonnegMatrix reduced_matrix(const NonnegMatrix& a, const CriticalStructure& cs);

/// mu(A) = 1 and every critical edge has weight 1, both within tol.
bool is_visualized(const NonnegMatrix& a, const CriticalStructure& cs, Tolerance tol = {});

struct BlockViolation {
  Node row;
  Node col;
  std::size_t block_row;
  std::size_t block_col;
  double star_entry;     ///< (A*)_{row,col}
  double reduced_entry;  ///< ((A^red)*)_{block_row,block_col}
};

struct BlockLawReport {
  bool holds = false;
  /// alpha_mm = 1 on critical components and every alpha_mn <= 1.
  /// Non-critical singletons keep their own (sub-unit) diagonal entry.
  bool reduced_structure_ok = false;
  NonnegMatrix star;
  NonnegMatrix reduced;
  NonnegMatrix reduced_star;
  std::vector<BlockViolation> violations;
};

/// Checks that each (mu, nu) block of A* is the constant
/// ((A^red)*)_{mu,nu}. Throws DomainError unless A is visualized.
BlockLawReport verify_vis_kleene_blocks(const NonnegMatrix& a, Tolerance tol = {});

/// v_j = min over critical q of a*_qj. For an irreducible max-stochastic A
/// this equals the full column minimum of A*.
NonnegVector min_critical_row(const KleeneStar& ks, const CriticalStructure& cs);

struct CriticalColumn {
  Node node;  ///< smallest node of its critical component
  NonnegVector column;
};

/// One column of A* per critical component; each is a right max
/// eigenvector of A when A is irreducible with mu(A) = 1.
std::vector<CriticalColumn> critical_column_eigenvectors(const KleeneStar& ks,
                                                         const CriticalStructure& cs);

}  // namespace maxtree
