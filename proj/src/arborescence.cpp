#include "maxtree/arborescence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace maxtree {
namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);
constexpr double kTieRelTol = 1e-12;

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw DomainError("n = " + std::to_string(n) + " exceeds the tree enumeration cap of " +
                      std::to_string(cap) + "; use max_rst_vector / max_arborescence instead");
  }
}

void require_roots_reachable(const WeightedDigraph& g) {
  for (Node root = 0; root < g.node_count(); ++root) {
    const auto missing = nodes_not_reaching(g, root);
    if (!missing.empty()) {
      throw DomainError("reducible matrix: node " + std::to_string(missing.front() + 1) +
                        " cannot reach root " + std::to_string(root + 1) +
                        ", so there is no " + std::to_string(root + 1) + "-tree");
    }
  }
}

// --- Chu-Liu/Edmonds for a maximum in-arborescence ----------------------

struct Arc {
  std::size_t from;
  std::size_t to;
  double w;  // log-weight (possibly shifted by contractions)
  std::size_t id;
};

/// Each node except `root` gets exactly one outgoing arc. Returns the ids
/// of the chosen arcs, or nullopt if some node cannot reach the root.
std::optional<std::vector<std::size_t>> edmonds(std::size_t n, std::size_t root,
                                                const std::vector<Arc>& arcs) {
  std::vector<std::size_t> best(n, kNpos);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    if (a.from == a.to || a.from == root) continue;
    if (best[a.from] == kNpos || a.w > arcs[best[a.from]].w) best[a.from] = k;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (v != root && best[v] == kNpos) return std::nullopt;

  std::vector<std::size_t> cycle_of(n, kNpos), mark(n, kNpos);
  std::size_t cycles = 0;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t x = s;
    while (x != root && mark[x] == kNpos) {
      mark[x] = s;
      x = arcs[best[x]].to;
    }
    if (x != root && mark[x] == s && cycle_of[x] == kNpos) {
      std::size_t y = x;
      do {
        cycle_of[y] = cycles;
        y = arcs[best[y]].to;
      } while (y != x);
      ++cycles;
    }
  }

  if (cycles == 0) {
    std::vector<std::size_t> ids;
    for (std::size_t v = 0; v < n; ++v)
      if (v != root) ids.push_back(arcs[best[v]].id);
    return ids;
  }

  // Contract each cycle to one node; an arc leaving cycle node u is
  // charged the weight of the cycle arc it would replace.
  std::vector<std::size_t> renum(n);
  std::size_t next = cycles;
  for (std::size_t v = 0; v < n; ++v) renum[v] = cycle_of[v] != kNpos ? cycle_of[v] : next++;
  std::vector<Arc> contracted;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    const std::size_t nf = renum[a.from], nt = renum[a.to];
    if (nf == nt) continue;
    const double shift = cycle_of[a.from] != kNpos ? arcs[best[a.from]].w : 0.0;
    contracted.push_back({nf, nt, a.w - shift, k});
  }
  const auto sub = edmonds(next, renum[root], contracted);
  if (!sub) return std::nullopt;

  std::vector<std::size_t> out(n, kNpos);
  for (std::size_t k : *sub) out[arcs[k].from] = k;
  for (std::size_t v = 0; v < n; ++v)
    if (v != root && out[v] == kNpos) out[v] = best[v];
  std::vector<std::size_t> ids;
  for (std::size_t v = 0; v < n; ++v)
    if (v != root) ids.push_back(arcs[out[v]].id);
  return ids;
}

/// Max in-tree of g restricted by `allowed` (nullopt: all out-edges of that
/// tail allowed; otherwise only the edge to that head).
std::optional<ITree> restricted_max_tree(const WeightedDigraph& g, Node root,
                                         const std::vector<std::optional<Node>>& forced) {
  const auto edges = g.edges();
  std::vector<Arc> arcs;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    if (e.tail == e.head || e.tail == root) continue;
    if (forced[e.tail] && *forced[e.tail] != e.head) continue;
    arcs.push_back({e.tail, e.head, std::log(e.weight), k});
  }
  const auto ids = edmonds(g.node_count(), root, arcs);
  if (!ids) return std::nullopt;
  std::vector<Node> parent(g.node_count(), root);
  for (std::size_t k : *ids) parent[edges[k].tail] = edges[k].head;
  return make_itree(g, root, parent);
}

// --- tree aggregation for the enumerating semirings ------------------------

double aggregate(const std::vector<double>& weights, const std::vector<double>& log_weights,
                 int p) {
  if (weights.empty()) return 0.0;
  if (p == 1) {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
  if (p <= kLogDomainPowerThreshold) return p_norm(weights, p);
  // log-sum-exp of p * log pi(T) relative to the heaviest tree, whose
  // weight is then scaled by the 1/p root of the sum
  const auto best = std::max_element(log_weights.begin(), log_weights.end()) - log_weights.begin();
  const double top = log_weights[static_cast<std::size_t>(best)];
  double s = 0.0;
  for (double l : log_weights) s += std::exp(static_cast<double>(p) * (l - top));
  return weights[static_cast<std::size_t>(best)] * std::exp(std::log(s) / static_cast<double>(p));
}

RstReport enumerated_rst(const NonnegMatrix& a, int p, std::size_t cap) {
  a.require_square("RST vector");
  if (p < 1) throw DomainError("p must be >= 1");
  check_cap(a.n(), cap);
  const WeightedDigraph g = WeightedDigraph::from_matrix(a);
  require_roots_reachable(g);

  std::vector<double> w(a.n());
  std::vector<double> weights, logs;
  for (Node root = 0; root < a.n(); ++root) {
    weights.clear();
    logs.clear();
    for_each_itree(
        g, root,
        [&](const TreeVisit& t) {
          weights.push_back(t.weight);
          logs.push_back(t.log_weight);
        },
        cap);
    w[root] = aggregate(weights, logs, p);
  }
  RstReport rep;
  rep.vector = NonnegVector(std::move(w));
  rep.residual = detail::scaled_left_residual(
      a, rep.vector, p == 1 ? detail::Aggregation::sum_product : detail::Aggregation::p_norm, p);
  return rep;
}

}  // namespace

void for_each_itree(const WeightedDigraph& g, Node root,
                    const std::function<void(const TreeVisit&)>& visit, std::size_t cap) {
  const std::size_t n = g.node_count();
  check_cap(n, cap);
  if (root >= n) throw DomainError("root out of range");

  std::vector<Node> order;
  for (Node v = 0; v < n; ++v)
    if (v != root) order.push_back(v);
  std::vector<Node> parent(n, kNpos);
  parent[root] = root;
  std::vector<CompensatedProduct> weight(order.size() + 1);
  std::vector<double> logw(order.size() + 1, 0.0);

  // A cycle through v can only close on v itself: the rest is a forest.
  const auto closes_cycle = [&](Node v) {
    Node x = parent[v];
    while (x != root && parent[x] != kNpos) {
      if (x == v) return true;
      x = parent[x];
    }
    return false;
  };

  std::function<void(std::size_t)> descend = [&](std::size_t depth) {
    if (depth == order.size()) {
      visit(TreeVisit{parent, weight[depth].value(), logw[depth]});
      return;
    }
    const Node v = order[depth];
    for (const Edge& e : g.out_edges(v)) {
      if (e.head == v) continue;
      parent[v] = e.head;
      if (!closes_cycle(v)) {
        weight[depth + 1] = weight[depth];
        weight[depth + 1].multiply(e.weight);
        logw[depth + 1] = logw[depth] + std::log(e.weight);
        descend(depth + 1);
      }
    }
    parent[v] = kNpos;
  };
  descend(0);
}

std::vector<ITree> enumerate_itrees(const WeightedDigraph& g, Node root, std::size_t cap) {
  std::vector<ITree> out;
  for_each_itree(
      g, root,
      [&](const TreeVisit& t) {
        ITree tree;
        tree.root = root;
        for (Node v = 0; v < g.node_count(); ++v)
          if (v != root) tree.edges.emplace_back(v, t.parent[v]);
        tree.weight = t.weight;
        out.push_back(std::move(tree));
      },
      cap);
  return out;
}

std::size_t count_itrees(const WeightedDigraph& g, Node root, std::size_t cap) {
  std::size_t count = 0;
  for_each_itree(g, root, [&](const TreeVisit&) { ++count; }, cap);
  return count;
}

ITree max_arborescence(const WeightedDigraph& g, Node root) {
  if (root >= g.node_count()) throw DomainError("root out of range");
  if (const auto missing = nodes_not_reaching(g, root); !missing.empty()) {
    throw DomainError("node " + std::to_string(missing.front() + 1) + " cannot reach root " +
                      std::to_string(root + 1));
  }
  const std::vector<std::optional<Node>> free(g.node_count());
  auto tree = restricted_max_tree(g, root, free);
  if (!tree) throw DomainError("no spanning in-tree found");
  return *tree;
}

ITree lexmin_max_arborescence(const WeightedDigraph& g, Node root) {
  const ITree optimum = max_arborescence(g, root);
  const double target = optimum.weight * (1.0 - kTieRelTol);

  // Fix tails in ascending order, each to the smallest head that still
  // admits an optimal completion.
  std::vector<std::optional<Node>> forced(g.node_count());
  std::optional<ITree> current = optimum;
  for (Node v = 0; v < g.node_count(); ++v) {
    if (v == root) continue;
    std::optional<ITree> fallback;
    bool fixed = false;
    for (const Edge& e : g.out_edges(v)) {
      if (e.head == v) continue;
      forced[v] = e.head;
      auto cand = restricted_max_tree(g, root, forced);
      if (!cand) continue;
      if (cand->weight >= target) {
        current = std::move(cand);
        fixed = true;
        break;
      }
      if (!fallback || cand->weight > fallback->weight) fallback = std::move(cand);
    }
    if (!fixed) {
      // Rounding pushed every option below target; keep the heaviest.
      if (fallback) current = std::move(fallback);
      forced[v] = tree_path(*current, v).at(1);
    }
  }
  return *current;
}

RstReport max_rst_vector(const NonnegMatrix& a) {
  a.require_square("max_rst_vector");
  const WeightedDigraph g = WeightedDigraph::from_matrix(a);
  require_roots_reachable(g);

  RstReport rep;
  std::vector<double> w(a.n());
  for (Node root = 0; root < a.n(); ++root) {
    const double optimum = max_arborescence(g, root).weight;
    ITree witness = lexmin_max_arborescence(g, root);
    w[root] = std::max(optimum, witness.weight);
    rep.witnesses.push_back(std::move(witness));
  }
  rep.vector = NonnegVector(std::move(w));
  rep.residual = detail::scaled_left_residual(a, rep.vector, detail::Aggregation::max_times);
  return rep;
}

RstReport sum_rst_vector(const NonnegMatrix& a, std::size_t cap) { return enumerated_rst(a, 1, cap); }

RstReport p_rst_vector(const NonnegMatrix& a, int p, std::size_t cap) {
  return enumerated_rst(a, p, cap);
}

double verify_left_max_eigen(const NonnegMatrix& a, const NonnegVector& w) {
  a.require_square("verify_left_max_eigen");
  if (w.size() != a.n()) throw DomainError("dimension mismatch in verify_left_max_eigen");
  const NonnegVector lhs = max_transpose_matvec(a, w);
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    worst = std::max(worst, std::fabs(lhs[i] - w[i]) / std::max(w[i], 1.0));
  return worst;
}

namespace detail {

double scaled_left_residual(const NonnegMatrix& a, const NonnegVector& w, Aggregation agg, int p) {
  a.require_square("eigen residual");
  if (w.size() != a.n()) throw DomainError("dimension mismatch in eigen residual");
  const std::size_t n = a.n();
  std::vector<double> lhs(n), d(n);
  std::vector<double> column(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) column[j] = a(j, i) * w[j];
    switch (agg) {
      case Aggregation::max_times:
        lhs[i] = *std::max_element(column.begin(), column.end());
        d[i] = *std::max_element(a.row(i).begin(), a.row(i).end());
        break;
      case Aggregation::sum_product:
        lhs[i] = p_norm(column, 1);
        d[i] = p_norm(a.row(i), 1);
        break;
      case Aggregation::p_norm:
        lhs[i] = p_norm(column, p);
        d[i] = p_norm(a.row(i), p);
        break;
    }
    if (d[i] == 0.0) d[i] = 1.0;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rhs = d[i] * w[i];
    worst = std::max(worst, std::fabs(lhs[i] - rhs) / std::max(rhs, 1.0));
  }
  return worst;
}

}  // namespace detail

}  // namespace maxtree
