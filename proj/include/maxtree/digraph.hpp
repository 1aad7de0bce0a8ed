#pragma once

// Weighted digraph view of a nonnegative matrix and rooted spanning trees.
//
// Node ids are 0-based here; everything user-facing (CLI, reports) adds 1.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "maxtree/semiring.hpp"

namespace maxtree {

struct Edge {
  Node tail;
  Node head;
  double weight;

  bool operator==(const Edge&) const = default;
};

using EdgePair = std::pair<Node, Node>;

/// Positive-weight edges only, at most one per ordered pair, stored sorted
/// by (tail, head).
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(std::size_t n, std::vector<Edge> edges);

  /// Edge (i, j, a_ij) for every a_ij > 0.
  static WeightedDigraph from_matrix(const NonnegMatrix& a);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  /// Out-edges of `tail`, sorted by head.
  std::span<const Edge> out_edges(Node tail) const;
  std::optional<double> weight(Node tail, Node head) const;
  bool has_edge(Node tail, Node head) const { return weight(tail, head).has_value(); }

  /// Same nodes, edges (j, i) for each (i, j).
  WeightedDigraph reversed() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;  // CSR row starts, size n + 1
};

/// Maximal strongly connected components, each sorted ascending, listed in
/// reverse topological order of the condensation (sink components first).
std::vector<std::vector<Node>> strongly_connected_components(const WeightedDigraph& g);

/// D(A) is strongly connected. A 1x1 matrix is always irreducible.
bool is_irreducible(const NonnegMatrix& a);
bool is_strongly_connected(const WeightedDigraph& g);

/// Edges of D(A) whose weight equals 1 within tol.
WeightedDigraph saturation_digraph(const NonnegMatrix& a, Tolerance tol = {});

/// A rooted spanning in-tree ("i-tree"): every non-root node has exactly
/// one outgoing edge, the root has none, and there is no cycle.
struct ITree {
  Node root = 0;
  std::vector<EdgePair> edges;  ///< sorted by (tail, head) when built by this library
  double weight = 0.0;

  bool operator==(const ITree&) const = default;
};

/// Builds an ITree from a parent map (parent[root] ignored), weighting it
/// with g's edge weights. Throws DomainError if an edge is missing.
ITree make_itree(const WeightedDigraph& g, Node root, std::span<const Node> parent);

/// Product of the edge weights in g; nullopt if some edge is absent.
std::optional<double> tree_weight(const WeightedDigraph& g, std::span<const EdgePair> edges);

/// Checks edge membership, the out-degree conditions, acyclicity and
/// weight = product of edge weights (within tol).
bool validate_itree(const WeightedDigraph& g, const ITree& t, Tolerance tol = {});

/// Nodes from j to the root along the tree, inclusive at both ends.
/// Empty when j is the root. Throws DomainError if the walk does not
/// reach the root (invalid tree).
std::vector<Node> tree_path(const ITree& t, Node j);

/// Nodes that cannot reach `root` in g, ascending.
std::vector<Node> nodes_not_reaching(const WeightedDigraph& g, Node root);

/// Breadth-first in-tree toward `root` (each node links to the node that
/// discovered it on the reversed graph). Throws DomainError if some node
/// cannot reach `root`.
ITree bfs_itree(const WeightedDigraph& g, Node root);

}  // namespace maxtree
