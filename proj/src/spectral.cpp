#include "maxtree/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxtree/kernels.hpp"
#include "maxtree/matrix_io.hpp"

namespace maxtree {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct CycleMean {
  double log_mean = kNegInf;
  double geometric_mean = 0.0;
};

CycleMean evaluate_cycle(const NonnegMatrix& a, const std::vector<Node>& cycle) {
  // cycle = v0 v1 ... v_{k-1}, closing back to v0
  double log_sum = 0.0;
  double product = 1.0;
  for (std::size_t t = 0; t < cycle.size(); ++t) {
    const double w = a(cycle[t], cycle[(t + 1) % cycle.size()]);
    log_sum += std::log(w);
    product *= w;
  }
  const double len = static_cast<double>(cycle.size());
  CycleMean m;
  m.log_mean = log_sum / len;
  m.geometric_mean = (std::isfinite(product) && product > 0.0)
                         ? (cycle.size() == 1 ? product : std::pow(product, 1.0 / len))
                         : std::exp(m.log_mean);
  return m;
}

/// Loop-erase a closed walk into simple cycles.
std::vector<std::vector<Node>> simple_cycles_of_walk(const std::vector<Node>& walk) {
  std::vector<std::vector<Node>> cycles;
  std::vector<Node> stack;
  for (Node v : walk) {
    const auto it = std::find(stack.begin(), stack.end(), v);
    if (it != stack.end()) {
      cycles.emplace_back(it, stack.end());
      stack.erase(it + 1, stack.end());
    } else {
      stack.push_back(v);
    }
  }
  return cycles;
}

/// Best cycle mean inside one strongly connected component.
std::optional<double> component_cycle_mean(const NonnegMatrix& a, const std::vector<Node>& comp) {
  const std::size_t s = comp.size();
  if (s == 1) {
    const Node v = comp.front();
    if (a(v, v) > 0.0) return a(v, v);
    return std::nullopt;
  }

  // D[k][v]: max log-weight of a k-edge walk from comp[0] to comp[v].
  std::vector<std::vector<double>> best(s + 1, std::vector<double>(s, kNegInf));
  std::vector<std::vector<std::size_t>> pred(s + 1, std::vector<std::size_t>(s, 0));
  best[0][0] = 0.0;
  for (std::size_t k = 1; k <= s; ++k) {
    for (std::size_t u = 0; u < s; ++u) {
      if (best[k - 1][u] == kNegInf) continue;
      for (std::size_t v = 0; v < s; ++v) {
        const double w = a(comp[u], comp[v]);
        if (w <= 0.0) continue;
        const double cand = best[k - 1][u] + std::log(w);
        if (cand > best[k][v]) {
          best[k][v] = cand;
          pred[k][v] = u;
        }
      }
    }
  }

  double lambda = kNegInf;
  std::size_t arg = 0;
  for (std::size_t v = 0; v < s; ++v) {
    if (best[s][v] == kNegInf) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s; ++k) {
      if (best[k][v] == kNegInf) continue;
      worst = std::min(worst, (best[s][v] - best[k][v]) / static_cast<double>(s - k));
    }
    if (worst > lambda) {
      lambda = worst;
      arg = v;
    }
  }
  if (lambda == kNegInf) return std::nullopt;

  // An s-edge walk on s nodes repeats a node; its loop-erased cycles
  // include one of mean lambda.
  std::vector<Node> walk(s + 1);
  std::size_t v = arg;
  for (std::size_t k = s + 1; k-- > 0;) {
    walk[k] = comp[v];
    if (k > 0) v = pred[k][v];
  }
  CycleMean top;
  for (const auto& cyc : simple_cycles_of_walk(walk)) {
    const CycleMean m = evaluate_cycle(a, cyc);
    if (m.log_mean > top.log_mean) top = m;
  }
  if (top.log_mean != kNegInf &&
      std::fabs(top.log_mean - lambda) <= 1e-12 * std::max(1.0, std::fabs(lambda))) {
    return top.geometric_mean;
  }
  return std::exp(lambda);
}

std::vector<std::vector<Node>> sorted_by_min(std::vector<std::vector<Node>> comps) {
  std::sort(comps.begin(), comps.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return comps;
}

}  // namespace

std::optional<double> try_max_cycle_geometric_mean(const NonnegMatrix& a) {
  a.require_square("max_cycle_geometric_mean");
  std::optional<double> mu;
  for (const auto& comp : strongly_connected_components(WeightedDigraph::from_matrix(a))) {
    if (const auto m = component_cycle_mean(a, comp); m && (!mu || *m > *mu)) mu = m;
  }
  return mu;
}

double max_cycle_geometric_mean(const NonnegMatrix& a) {
  const auto mu = try_max_cycle_geometric_mean(a);
  if (!mu) throw DomainError("no cycles: D(A) is acyclic, mu(A) is undefined");
  return *mu;
}

NonnegMatrix max_closure_unchecked(const NonnegMatrix& a) {
  a.require_square("kleene_star");
  const std::size_t n = a.n();
  std::vector<double> s(a.data().begin(), a.data().end());
  for (std::size_t k = 0; k < n; ++k) {
    const std::span<const double> row_k(s.data() + k * n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const double sik = s[i * n + k];
      if (sik > 0.0) kernels::max_scale_accumulate({s.data() + i * n, n}, row_k, sik);
    }
  }
  for (std::size_t i = 0; i < n; ++i) s[i * n + i] = 1.0;
  return NonnegMatrix(n, n, std::move(s));
}

KleeneStar kleene_star(const NonnegMatrix& a, Tolerance tol, KleeneOptions opts) {
  a.require_square("kleene_star");
  const auto mu = try_max_cycle_geometric_mean(a);
  NonnegMatrix input = a;
  if (mu) {
    if (*mu > 1.0 + tol.rel_eps()) {
      throw DomainError("series diverges: mu(A) = " + io::format_double(*mu) + " > 1");
    }
    if (opts.renormalize && *mu > 1.0) input = a.scaled(1.0 / *mu);
  }
  KleeneStar ks{max_closure_unchecked(input), false};
  const auto d = ks.star.data();
  ks.positive = std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; });
  return ks;
}

bool CriticalStructure::is_critical(Node v) const {
  return std::binary_search(critical_nodes.begin(), critical_nodes.end(), v);
}

CriticalStructure critical_structure(const NonnegMatrix& a, Tolerance tol) {
  a.require_square("critical_structure");
  const std::size_t n = a.n();
  CriticalStructure cs;
  cs.mu = max_cycle_geometric_mean(a);
  const NonnegMatrix b = cs.mu == 1.0 ? a : a.scaled(1.0 / cs.mu);
  const NonnegMatrix bstar = max_closure_unchecked(b);

  std::vector<double> crit(n * n, 0.0);
  std::vector<Edge> crit_edges;
  std::vector<bool> is_crit(n, false);
  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      if (a(i, j) <= 0.0) continue;
      if (tol.equal(b(i, j) * bstar(j, i), 1.0)) {
        cs.critical_edges.emplace_back(i, j);
        crit_edges.push_back({i, j, a(i, j)});
        crit[i * n + j] = a(i, j);
        is_crit[i] = is_crit[j] = true;
      }
    }
  }
  for (Node v = 0; v < n; ++v)
    if (is_crit[v]) cs.critical_nodes.push_back(v);
  cs.critical_matrix = NonnegMatrix(n, n, std::move(crit));

  const WeightedDigraph dc(n, std::move(crit_edges));
  std::vector<std::vector<Node>> dc_comps, star_comps;
  for (auto& comp : strongly_connected_components(dc)) {
    if (is_crit[comp.front()]) dc_comps.push_back(comp);
    star_comps.push_back(std::move(comp));
  }
  cs.dc_components = sorted_by_min(std::move(dc_comps));
  cs.dcstar_components = sorted_by_min(std::move(star_comps));
  cs.component_of.assign(n, 0);
  for (std::size_t c = 0; c < cs.dcstar_components.size(); ++c)
    for (Node v : cs.dcstar_components[c]) cs.component_of[v] = c;
  return cs;
}

NonnegMatrix reduced_matrix(const NonnegMatrix& a, const CriticalStructure& cs) {
  a.require_square("reduced_matrix");
  if (cs.component_of.size() != a.n()) throw DomainError("critical structure does not match A");
  const std::size_t r = cs.dcstar_components.size();
  std::vector<double> red(r * r, 0.0);
  for (Node i = 0; i < a.n(); ++i) {
    for (Node j = 0; j < a.n(); ++j) {
      double& cell = red[cs.component_of[i] * r + cs.component_of[j]];
      cell = std::max(cell, a(i, j));
    }
  }
  return NonnegMatrix(r, r, std::move(red));
}

bool is_visualized(const NonnegMatrix& a, const CriticalStructure& cs, Tolerance tol) {
  if (!tol.equal(cs.mu, 1.0)) return false;
  return std::all_of(cs.critical_edges.begin(), cs.critical_edges.end(),
                     [&](const EdgePair& e) { return tol.equal(a(e.first, e.second), 1.0); });
}

BlockLawReport verify_vis_kleene_blocks(const NonnegMatrix& a, Tolerance tol) {
  const CriticalStructure cs = critical_structure(a, tol);
  if (!is_visualized(a, cs, tol)) {
    throw DomainError("matrix is not visualized (mu(A) = " + io::format_double(cs.mu) +
                      " or a critical edge differs from 1)");
  }
  BlockLawReport rep;
  rep.star = kleene_star(a, tol).star;
  rep.reduced = reduced_matrix(a, cs);
  rep.reduced_star = kleene_star(rep.reduced, tol).star;

  const std::size_t r = rep.reduced.n();
  rep.reduced_structure_ok = true;
  for (std::size_t m = 0; m < r; ++m) {
    const bool critical = cs.is_critical(cs.dcstar_components[m].front());
    for (std::size_t k = 0; k < r; ++k) {
      const double alpha = rep.reduced(m, k);
      const bool ok = tol.less_equal(alpha, 1.0) && (m != k || !critical || tol.equal(alpha, 1.0));
      rep.reduced_structure_ok = rep.reduced_structure_ok && ok;
    }
  }

  for (Node i = 0; i < a.n(); ++i) {
    for (Node j = 0; j < a.n(); ++j) {
      const std::size_t bi = cs.component_of[i], bj = cs.component_of[j];
      const double expected = rep.reduced_star(bi, bj);
      if (!tol.equal(rep.star(i, j), expected)) {
        rep.violations.push_back({i, j, bi, bj, rep.star(i, j), expected});
      }
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

NonnegVector min_critical_row(const KleeneStar& ks, const CriticalStructure& cs) {
  if (cs.critical_nodes.empty()) throw DomainError("no critical nodes");
  const std::size_t n = ks.star.n();
  std::vector<double> v(n, std::numeric_limits<double>::infinity());
  for (Node q : cs.critical_nodes) {
    if (q >= n) throw DomainError("critical structure does not match the Kleene star");
    for (Node j = 0; j < n; ++j) v[j] = std::min(v[j], ks.star(q, j));
  }
  return NonnegVector(std::move(v));
}

std::vector<CriticalColumn> critical_column_eigenvectors(const KleeneStar& ks,
                                                         const CriticalStructure& cs) {
  const std::size_t n = ks.star.n();
  std::vector<CriticalColumn> out;
  for (const auto& comp : cs.dc_components) {
    const Node q = comp.front();
    if (q >= n) throw DomainError("critical structure does not match the Kleene star");
    std::vector<double> col(n);
    for (Node i = 0; i < n; ++i) col[i] = ks.star(i, q);
    out.push_back({q, NonnegVector(std::move(col))});
  }
  return out;
}

}  // namespace maxtree
