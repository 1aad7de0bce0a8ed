#include "maxtree/digraph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace maxtree {

WeightedDigraph::WeightedDigraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
  });
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.tail >= n_ || e.head >= n_) throw DomainError("edge endpoint out of range");
    if (!(e.weight > 0.0)) throw DomainError("edge weights must be positive");
    if (k > 0 && edges_[k - 1].tail == e.tail && edges_[k - 1].head == e.head) {
      throw DomainError("duplicate edge");
    }
  }
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) ++offsets_[e.tail + 1];
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
}

WeightedDigraph WeightedDigraph::from_matrix(const NonnegMatrix& a) {
  a.require_square("from_matrix");
  std::vector<Edge> edges;
  for (Node i = 0; i < a.n(); ++i)
    for (Node j = 0; j < a.n(); ++j)
      if (a(i, j) > 0.0) edges.push_back({i, j, a(i, j)});
  return WeightedDigraph(a.n(), std::move(edges));
}

std::span<const Edge> WeightedDigraph::out_edges(Node tail) const {
  return std::span<const Edge>(edges_).subspan(offsets_[tail], offsets_[tail + 1] - offsets_[tail]);
}

std::optional<double> WeightedDigraph::weight(Node tail, Node head) const {
  const auto out = out_edges(tail);
  const auto it = std::lower_bound(out.begin(), out.end(), head,
                                   [](const Edge& e, Node h) { return e.head < h; });
  if (it == out.end() || it->head != head) return std::nullopt;
  return it->weight;
}

WeightedDigraph WeightedDigraph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(edges_.size());
  for (const Edge& e : edges_) rev.push_back({e.head, e.tail, e.weight});
  return WeightedDigraph(n_, std::move(rev));
}

std::vector<std::vector<Node>> strongly_connected_components(const WeightedDigraph& g) {
  // Iterative Tarjan; components pop out sinks first.
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Node> stack;
  std::vector<std::vector<Node>> out;
  std::size_t counter = 0;

  struct Frame {
    Node v;
    std::size_t next;
  };
  std::vector<Frame> call;

  for (Node s = 0; s < n; ++s) {
    if (index[s] != kUnvisited) continue;
    call.push_back({s, 0});
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto succ = g.out_edges(f.v);
      if (f.next < succ.size()) {
        const Node w = succ[f.next++].head;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const Node v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        auto& comp = out.emplace_back();
        Node w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
      }
    }
  }
  return out;
}

bool is_strongly_connected(const WeightedDigraph& g) {
  return g.node_count() <= 1 || strongly_connected_components(g).size() == 1;
}

bool is_irreducible(const NonnegMatrix& a) {
  return is_strongly_connected(WeightedDigraph::from_matrix(a));
}

WeightedDigraph saturation_digraph(const NonnegMatrix& a, Tolerance tol) {
  a.require_square("saturation_digraph");
  std::vector<Edge> edges;
  for (Node i = 0; i < a.n(); ++i)
    for (Node j = 0; j < a.n(); ++j)
      if (a(i, j) > 0.0 && tol.equal(a(i, j), 1.0)) edges.push_back({i, j, a(i, j)});
  return WeightedDigraph(a.n(), std::move(edges));
}

std::optional<double> tree_weight(const WeightedDigraph& g, std::span<const EdgePair> edges) {
  CompensatedProduct w;
  for (const auto& [tail, head] : edges) {
    if (tail >= g.node_count() || head >= g.node_count()) return std::nullopt;
    const auto ew = g.weight(tail, head);
    if (!ew) return std::nullopt;
    w.multiply(*ew);
  }
  return w.value();
}

ITree make_itree(const WeightedDigraph& g, Node root, std::span<const Node> parent) {
  ITree t;
  t.root = root;
  for (Node v = 0; v < g.node_count(); ++v) {
    if (v != root) t.edges.emplace_back(v, parent[v]);
  }
  const auto w = tree_weight(g, t.edges);
  if (!w) throw DomainError("tree uses an edge that is not in the graph");
  t.weight = *w;
  return t;
}

bool validate_itree(const WeightedDigraph& g, const ITree& t, Tolerance tol) {
  const std::size_t n = g.node_count();
  if (t.root >= n || t.edges.size() + 1 != n) return false;
  constexpr Node kNone = static_cast<Node>(-1);
  std::vector<Node> parent(n, kNone);
  for (const auto& [tail, head] : t.edges) {
    if (tail >= n || head >= n || tail == t.root) return false;
    if (parent[tail] != kNone) return false;
    parent[tail] = head;
  }
  const auto w = tree_weight(g, t.edges);
  if (!w || !tol.equal(*w, t.weight)) return false;

  // Every walk must reach the root within n steps.
  for (Node j = 0; j < n; ++j) {
    Node v = j;
    std::size_t steps = 0;
    while (v != t.root) {
      if (parent[v] == kNone || ++steps > n) return false;
      v = parent[v];
    }
  }
  return true;
}

std::vector<Node> tree_path(const ITree& t, Node j) {
  if (j == t.root) return {};
  std::vector<Node> path{j};
  Node v = j;
  while (v != t.root) {
    const auto it = std::find_if(t.edges.begin(), t.edges.end(),
                                 [v](const EdgePair& e) { return e.first == v; });
    if (it == t.edges.end() || it->first != v || path.size() > t.edges.size() + 1) {
      throw DomainError("tree_path: node " + std::to_string(j + 1) + " does not reach the root");
    }
    v = it->second;
    path.push_back(v);
  }
  return path;
}

std::vector<Node> nodes_not_reaching(const WeightedDigraph& g, Node root) {
  const WeightedDigraph rev = g.reversed();
  std::vector<bool> seen(g.node_count(), false);
  std::deque<Node> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    for (const Edge& e : rev.out_edges(v)) {
      if (!seen[e.head]) {
        seen[e.head] = true;
        queue.push_back(e.head);
      }
    }
  }
  std::vector<Node> missing;
  for (Node v = 0; v < g.node_count(); ++v)
    if (!seen[v]) missing.push_back(v);
  return missing;
}

ITree bfs_itree(const WeightedDigraph& g, Node root) {
  const WeightedDigraph rev = g.reversed();
  std::vector<Node> parent(g.node_count(), root);
  std::vector<bool> seen(g.node_count(), false);
  std::deque<Node> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    for (const Edge& e : rev.out_edges(v)) {
      if (!seen[e.head]) {
        seen[e.head] = true;
        parent[e.head] = v;
        queue.push_back(e.head);
      }
    }
  }
  for (Node v = 0; v < g.node_count(); ++v) {
    if (!seen[v]) {
      throw DomainError("node " + std::to_string(v + 1) + " cannot reach root " +
                        std::to_string(root + 1));
    }
  }
  return make_itree(g, root, parent);
}

}  // namespace maxtree
