#pragma once

// Seeded random fixtures and brute-force oracles shared by the unit tests
// and the acceptance runner. The oracles deliberately avoid the library's
// own algorithms: they enumerate parent maps, simple paths and simple
// cycles directly, or call into Eigen.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "maxtree/digraph.hpp"
#include "maxtree/semiring.hpp"

namespace fixtures {

using maxtree::NonnegMatrix;
using maxtree::NonnegVector;

using Rng = std::mt19937_64;
using Grid = std::vector<std::vector<double>>;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::vector<std::size_t> permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Adds a random Hamiltonian cycle of weights in [lo, hi] where entries
/// are still zero, which makes the support strongly connected.
inline void add_spanning_cycle(Rng& rng, Grid& a, double lo, double hi) {
  const std::size_t n = a.size();
  if (n < 2) {
    if (n == 1 && a[0][0] == 0.0) a[0][0] = uniform(rng, lo, hi);
    return;
  }
  const auto p = permutation(rng, n);
  for (std::size_t k = 0; k < n; ++k) {
    double& e = a[p[k]][p[(k + 1) % n]];
    if (e == 0.0) e = uniform(rng, lo, hi);
  }
}

/// Random sparse-ish nonnegative grid with a strongly connected support.
inline Grid random_irreducible_grid(Rng& rng, std::size_t n, double lo, double hi) {
  const double density = uniform(rng, 0.2, 0.9);
  Grid a(n, std::vector<double>(n, 0.0));
  for (auto& row : a)
    for (double& x : row)
      if (coin(rng, density)) x = uniform(rng, lo, hi);
  add_spanning_cycle(rng, a, lo, hi);
  return a;
}

/// Divides each row by its maximum and stores exact 1s at the maxima.
inline Grid normalize_rows_max(Grid a) {
  for (auto& row : a) {
    const double m = *std::max_element(row.begin(), row.end());
    for (double& x : row) x = x == m ? 1.0 : x / m;
  }
  return a;
}

inline NonnegMatrix random_irreducible_max_stochastic(Rng& rng, std::size_t n) {
  Grid a = random_irreducible_grid(rng, n, 0.05, 1.0);
  // Occasionally tie several entries of a row at the maximum.
  for (auto& row : a) {
    if (!coin(rng, 0.2)) continue;
    const double m = *std::max_element(row.begin(), row.end());
    for (double& x : row)
      if (x > 0.0 && coin(rng, 0.3)) x = m;
  }
  return NonnegMatrix::from_rows(normalize_rows_max(std::move(a)));
}

inline NonnegMatrix random_irreducible_row_stochastic(Rng& rng, std::size_t n) {
  Grid a = random_irreducible_grid(rng, n, 0.05, 1.0);
  for (auto& row : a) {
    const double s = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& x : row) x /= s;
  }
  return NonnegMatrix::from_rows(a);
}

inline NonnegMatrix random_positive(Rng& rng, std::size_t n, double lo = 0.05, double hi = 10.0) {
  Grid a(n, std::vector<double>(n));
  for (auto& row : a)
    for (double& x : row) x = uniform(rng, lo, hi);
  return NonnegMatrix::from_rows(a);
}

/// Random nonnegative matrix (zeros allowed) with an irreducible support.
inline NonnegMatrix random_irreducible(Rng& rng, std::size_t n, double lo = 0.05, double hi = 5.0) {
  return NonnegMatrix::from_rows(random_irreducible_grid(rng, n, lo, hi));
}

/// Irreducible max-stochastic matrix whose critical graph is exactly the
/// union of the given groups, each a strongly connected set of 1-edges.
/// No 1-cycle crosses groups; every non-critical node has a 1-edge into a
/// forest that drains into the groups; all other entries lie in (0, 0.9].
inline NonnegMatrix visualized_fixture(Rng& rng, std::size_t n,
                                       const std::vector<std::vector<std::size_t>>& groups) {
  Grid a(n, std::vector<double>(n, 0.0));
  std::vector<bool> critical(n, false);
  std::vector<std::size_t> order;  // nodes already attached to a 1-edge sink
  for (const auto& g : groups) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      a[g[k]][g[(k + 1) % g.size()]] = 1.0;
      critical[g[k]] = true;
      order.push_back(g[k]);
    }
    // Chords inside a group keep it one strongly connected component.
    for (std::size_t u : g)
      for (std::size_t v : g)
        if (coin(rng, 0.25)) a[u][v] = 1.0;
  }
  // 1-edges between groups go one way only (lower group index to higher).
  for (std::size_t x = 0; x < groups.size(); ++x)
    for (std::size_t y = x + 1; y < groups.size(); ++y)
      if (coin(rng, 0.3)) a[groups[x][pick(rng, 0, groups[x].size() - 1)]]
                           [groups[y][pick(rng, 0, groups[y].size() - 1)]] = 1.0;
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < n; ++v)
    if (!critical[v]) rest.push_back(v);
  std::shuffle(rest.begin(), rest.end(), rng);
  for (std::size_t v : rest) {
    a[v][order[pick(rng, 0, order.size() - 1)]] = 1.0;
    order.push_back(v);
  }
  const double density = uniform(rng, 0.2, 0.8);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] == 0.0 && coin(rng, density)) a[i][j] = uniform(rng, 0.05, 0.9);
  add_spanning_cycle(rng, a, 0.05, 0.9);
  return NonnegMatrix::from_rows(a);
}

/// Splits a random subset of {0..n-1} into `count` nonempty groups.
inline std::vector<std::vector<std::size_t>> random_groups(Rng& rng, std::size_t n,
                                                           std::size_t count) {
  const auto p = permutation(rng, n);
  const std::size_t used = pick(rng, count, n);
  std::vector<std::vector<std::size_t>> groups(count);
  for (std::size_t k = 0; k < used; ++k) groups[k < count ? k : pick(rng, 0, count - 1)].push_back(p[k]);
  return groups;
}

/// rows x cols, every row has maximum exactly 1.
inline NonnegMatrix random_row_normalized(Rng& rng, std::size_t rows, std::size_t cols) {
  std::vector<double> e(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) e[i * cols + j] = coin(rng, 0.8) ? uniform(rng, 0.05, 1.0) : 0.0;
    e[i * cols + pick(rng, 0, cols - 1)] = 1.0;
  }
  return NonnegMatrix(rows, cols, std::move(e));
}

/// a_ij = x_i / x_j times a reciprocal perturbation, so a_ij a_ji = 1.
inline NonnegMatrix random_sr(Rng& rng, std::size_t n, double noise) {
  std::vector<double> x(n);
  for (double& v : x) v = uniform(rng, 0.2, 5.0);
  Grid a(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double f = std::exp(uniform(rng, -noise, noise));
      a[i][j] = x[i] / x[j] * f;
      a[j][i] = 1.0 / a[i][j];
    }
  return NonnegMatrix::from_rows(a);
}

// ---------------------------------------------------------------------------
// oracles

/// Calls f(parent) for every map v -> parent[v] (v != root, parent[v] != v,
/// a_{v,parent[v]} > 0) whose walks all reach the root: that is, every
/// i-tree, found without the library's enumerator.
inline void brute_force_trees(const NonnegMatrix& a, std::size_t root,
                              const std::function<void(const std::vector<std::size_t>&)>& f) {
  const std::size_t n = a.n();
  std::vector<std::size_t> parent(n, 0);
  parent[root] = root;
  std::vector<std::size_t> nodes;
  for (std::size_t v = 0; v < n; ++v)
    if (v != root) nodes.push_back(v);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == nodes.size()) {
      for (std::size_t v : nodes) {
        std::size_t x = v, steps = 0;
        while (x != root) {
          x = parent[x];
          if (++steps > n) return;
        }
      }
      f(parent);
      return;
    }
    const std::size_t v = nodes[k];
    for (std::size_t h = 0; h < n; ++h) {
      if (h == v || a(v, h) <= 0.0) continue;
      parent[v] = h;
      rec(k + 1);
    }
  };
  rec(0);
}

inline double tree_product(const NonnegMatrix& a, const std::vector<std::size_t>& parent,
                           std::size_t root) {
  long double w = 1.0L;
  for (std::size_t v = 0; v < a.n(); ++v)
    if (v != root) w *= a(v, parent[v]);
  return static_cast<double>(w);
}

inline std::vector<double> brute_force_max_rst(const NonnegMatrix& a) {
  std::vector<double> w(a.n(), 0.0);
  for (std::size_t r = 0; r < a.n(); ++r)
    brute_force_trees(a, r, [&](const auto& parent) { w[r] = std::max(w[r], tree_product(a, parent, r)); });
  return w;
}

inline std::size_t brute_force_tree_count(const NonnegMatrix& a, std::size_t root) {
  std::size_t c = 0;
  brute_force_trees(a, root, [&](const auto&) { ++c; });
  return c;
}

/// Maximum weight over simple paths i -> j (i != j); 0 if none.
inline double brute_force_best_path(const NonnegMatrix& a, std::size_t i, std::size_t j) {
  const std::size_t n = a.n();
  std::vector<bool> used(n, false);
  double best = 0.0;
  std::function<void(std::size_t, double)> dfs = [&](std::size_t v, double w) {
    if (v == j) {
      best = std::max(best, w);
      return;
    }
    for (std::size_t u = 0; u < n; ++u) {
      if (used[u] || a(v, u) <= 0.0) continue;
      used[u] = true;
      dfs(u, w * a(v, u));
      used[u] = false;
    }
  };
  used[i] = true;
  dfs(i, 1.0);
  return best;
}

/// max over simple cycles of (weight)^(1/length); 0 if acyclic.
inline double brute_force_mu(const NonnegMatrix& a) {
  const std::size_t n = a.n();
  double best = 0.0;
  std::vector<bool> used(n, false);
  // Cycles are rooted at their smallest node to visit each once.
  std::function<void(std::size_t, std::size_t, double, std::size_t)> dfs =
      [&](std::size_t start, std::size_t v, double logw, std::size_t len) {
        for (std::size_t u = start; u < n; ++u) {
          if (a(v, u) <= 0.0) continue;
          const double l = logw + std::log(a(v, u));
          if (u == start) {
            best = std::max(best, std::exp(l / static_cast<double>(len + 1)));
          } else if (!used[u]) {
            used[u] = true;
            dfs(start, u, l, len + 1);
            used[u] = false;
          }
        }
      };
  for (std::size_t s = 0; s < n; ++s) {
    used[s] = true;
    dfs(s, s, 0.0, 0);
    used[s] = false;
  }
  return best;
}

/// Matrix with mu(A) <= 1: random weights scaled by target/mu, with mu
/// from the brute-force cycle oracle so the scaling does not depend on
/// the library.
inline NonnegMatrix random_subunit_mu(Rng& rng, std::size_t n) {
  NonnegMatrix a = random_irreducible(rng, n, 0.05, 3.0);
  const double mu = brute_force_mu(a);
  const double target = coin(rng, 0.5) ? 1.0 : uniform(rng, 0.3, 1.0);
  return a.map([&](double x) { return x / mu * target; });
}

/// Stationary distribution of an irreducible row-stochastic matrix from
/// the linear system pi (P - I) = 0, sum(pi) = 1, solved by Eigen.
inline std::vector<double> stationary_distribution(const NonnegMatrix& p) {
  const auto n = static_cast<Eigen::Index>(p.n());
  Eigen::MatrixXd m(n + 1, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(j, i) = p(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) - (i == j ? 1.0 : 0.0);
  m.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  const Eigen::VectorXd pi = m.colPivHouseholderQr().solve(rhs);
  return {pi.data(), pi.data() + n};
}

inline double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
  return d;
}

inline double max_rel_diff(std::span<const double> x, std::span<const double> y) {
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    d = std::max(d, std::abs(x[k] - y[k]) / std::max({1e-300, std::abs(x[k]), std::abs(y[k])}));
  return d;
}

/// The worked 4x4 example matrix, entries as exact rationals.
inline NonnegMatrix example_matrix() {
  return NonnegMatrix{{1.0, 3.0 / 4, 5.0 / 6, 0.0},
                      {1.0 / 2, 1.0, 1.0 / 4, 9.0 / 10},
                      {0.0, 0.0, 1.0, 7.0 / 8},
                      {1.0 / 3, 0.0, 1.0, 4.0 / 5}};
}

inline NonnegMatrix example_kleene_star() {
  return NonnegMatrix{{1.0, 3.0 / 4, 5.0 / 6, 35.0 / 48},
                      {1.0 / 2, 1.0, 9.0 / 10, 9.0 / 10},
                      {7.0 / 24, 7.0 / 32, 1.0, 7.0 / 8},
                      {1.0 / 3, 1.0 / 4, 1.0, 1.0}};
}

inline std::vector<double> example_rst() { return {21.0 / 80, 7.0 / 32, 3.0 / 4, 21.0 / 32}; }

}  // namespace fixtures
