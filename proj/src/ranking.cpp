#include "maxtree/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "maxtree/arborescence.hpp"
#include "maxtree/digraph.hpp"

namespace maxtree {
namespace {

std::string describe_components(const std::vector<std::vector<Node>>& comps) {
  std::string s;
  for (const auto& comp : comps) {
    s += s.empty() ? "{" : ", {";
    for (std::size_t k = 0; k < comp.size(); ++k) s += (k ? "," : "") + std::to_string(comp[k] + 1);
    s += "}";
  }
  return s;
}

void require_unit_row_maxima(const NonnegMatrix& m, const char* name, Tolerance tol) {
  const NonnegVector d = row_maxima(m);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!tol.equal(d[i], 1.0)) {
      throw DomainError(std::string(name) + " row " + std::to_string(i + 1) +
                        " has maximum " + std::to_string(d[i]) + ", expected 1");
    }
  }
}

}  // namespace

RankingResult make_ranking(const NonnegVector& weights, Tolerance tol) {
  RankingResult r;
  r.weights = weights;
  r.order.resize(weights.size());
  std::iota(r.order.begin(), r.order.end(), Node{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](Node x, Node y) { return weights[x] > weights[y]; });
  // Exact sort first, then regroup near-equal runs so index order wins
  // inside a tie group.
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    if (k > 0 && tol.equal(weights[r.order[k - 1]], weights[r.order[k]])) {
      r.ties.back().push_back(r.order[k]);
    } else {
      r.ties.push_back({r.order[k]});
    }
  }
  r.order.clear();
  for (auto& group : r.ties) {
    std::sort(group.begin(), group.end());
    r.order.insert(r.order.end(), group.begin(), group.end());
  }
  return r;
}

bool is_sr_matrix(const NonnegMatrix& a, Tolerance tol) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = 0; j < a.n(); ++j) {
      if (!(a(i, j) > 0.0)) return false;
      if (std::fabs(a(i, j) * a(j, i) - 1.0) > tol.rel_eps()) return false;
    }
  }
  return true;
}

double generalized_eigen_residual(const NonnegMatrix& a, const NonnegVector& w) {
  a.require_square("generalized_eigen_residual");
  const NonnegVector d = row_maxima(a);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0.0) throw DomainError("row " + std::to_string(i + 1) + " of A is zero");
  }
  return detail::scaled_left_residual(a, w, detail::Aggregation::max_times);
}

RankingResult ahp_rank(const NonnegMatrix& a, Tolerance tol) {
  a.require_square("ahp_rank");
  const NonnegMatrix at = a.transpose();
  const RstReport rst = max_rst_vector(at);
  RankingResult r = make_ranking(rst.vector, tol);
  r.residual = generalized_eigen_residual(at, rst.vector);
  return r;
}

double error_functional(const NonnegMatrix& a, const NonnegVector& x) {
  a.require_square("error_functional");
  if (x.size() != a.n()) throw DomainError("dimension mismatch in error_functional");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) throw DomainError("error_functional needs x > 0; x_" + std::to_string(i + 1) + " = 0");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) e = std::max(e, a(i, j) * x[j] / x[i]);
  return e;
}

JudgeCompetitorResult judge_competitor_rank(const NonnegMatrix& judges,
                                            const NonnegMatrix& competitors, Tolerance tol) {
  if (competitors.cols() != judges.rows() || competitors.rows() != judges.cols()) {
    throw DomainError("judge matrix must be m x n and competitor matrix n x m");
  }
  require_unit_row_maxima(judges, "judge", tol);
  require_unit_row_maxima(competitors, "competitor", tol);

  JudgeCompetitorResult out;
  out.combined = max_matmul(competitors, judges);
  if (!is_max_stochastic(out.combined, tol)) {
    throw std::logic_error("C (x) J must be max-stochastic when J and C rows peak at 1");
  }
  const auto comps = strongly_connected_components(WeightedDigraph::from_matrix(out.combined));
  if (comps.size() > 1) {
    throw DomainError("C (x) J is reducible; strongly connected components: " +
                      describe_components(comps));
  }
  const RstReport rst = max_rst_vector(out.combined);
  out.ranking = make_ranking(rst.vector, tol);
  out.ranking.residual = verify_left_max_eigen(out.combined, rst.vector);
  return out;
}

}  // namespace maxtree
