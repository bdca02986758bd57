#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypercurv/error.hpp"
#include "hypercurv/metric.hpp"
#include "hypercurv/walk.hpp"

namespace hypercurv {

/// Optimal solution of a balanced transportation problem
///   min sum c_ij x_ij  s.t.  sum_j x_ij = supply_i,  sum_i x_ij = demand_j,  x >= 0.
/// `row_potential` / `col_potential` are optimal duals: u_i + v_j <= c_ij with
/// equality on every basic cell.
template <class S>
struct TransportPlan {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<S> flow;  // row-major rows x cols
  S value{0};
  std::vector<S> row_potential;
  std::vector<S> col_potential;
  std::size_t pivots = 0;

  const S& at(std::size_t i, std::size_t j) const { return flow[i * cols + j]; }
};

namespace detail {

template <class S>
bool strictly_negative(const S& r) {
  if constexpr (is_exact_v<S>) return r < 0;
  else return r < -1e-12;
}

template <class S>
S clamp_nonneg(const S& x) {
  if constexpr (is_exact_v<S>) return x;
  else return x < 0 ? S(0) : x;
}

}  // namespace detail

/// Transportation simplex (MODI) started from the northwest-corner basis.
/// Entering cell: first row-major non-basic cell with negative reduced cost;
/// leaving cell: first row-major cell among the blocking ones (Bland), so the
/// pivot sequence and the returned plan are deterministic and cycling-free.
template <class S>
TransportPlan<S> solve_transportation(const std::vector<S>& supply, const std::vector<S>& demand,
                                      const std::vector<S>& cost) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  if (m == 0 || n == 0) throw Error(ErrorCode::ShapeMismatch, "empty transportation problem");
  if (cost.size() != m * n) throw Error(ErrorCode::ShapeMismatch, "cost matrix does not match marginals");
  S total_supply(0), total_demand(0);
  for (const S& s : supply) total_supply += s;
  for (const S& d : demand) total_demand += d;
  if (!scalar_traits<S>::eq(total_supply, total_demand, 1e-12))
    throw Error(ErrorCode::MassMismatch, scalar_traits<S>::format(total_supply) + " vs " +
                                             scalar_traits<S>::format(total_demand));

  TransportPlan<S> plan;
  plan.rows = m;
  plan.cols = n;
  plan.flow.assign(m * n, S(0));
  std::vector<char> basic(m * n, 0);
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };

  {
    std::vector<S> ra = supply, rb = demand;
    std::size_t i = 0, j = 0;
    while (true) {
      basic[idx(i, j)] = 1;
      if (i == m - 1 && j == n - 1) {
        plan.flow[idx(i, j)] = detail::clamp_nonneg(ra[i]);
        break;
      }
      if (j == n - 1 || (i < m - 1 && ra[i] <= rb[j])) {
        plan.flow[idx(i, j)] = detail::clamp_nonneg(ra[i]);
        rb[j] -= ra[i];
        ra[i] = S(0);
        ++i;
      } else {
        plan.flow[idx(i, j)] = detail::clamp_nonneg(rb[j]);
        ra[i] -= rb[j];
        rb[j] = S(0);
        ++j;
      }
    }
  }

  std::vector<S> u(m), v(n);
  // Tree nodes: rows are 0..m-1, columns are m..m+n-1.
  auto compute_potentials = [&]() {
    std::vector<char> seen_row(m, 0), seen_col(n, 0);
    u[0] = S(0);
    seen_row[0] = 1;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      std::size_t node = stack.back();
      stack.pop_back();
      if (node < m) {
        for (std::size_t j = 0; j < n; ++j)
          if (basic[idx(node, j)] && !seen_col[j]) {
            v[j] = cost[idx(node, j)] - u[node];
            seen_col[j] = 1;
            stack.push_back(m + j);
          }
      } else {
        const std::size_t j = node - m;
        for (std::size_t i = 0; i < m; ++i)
          if (basic[idx(i, j)] && !seen_row[i]) {
            u[i] = cost[idx(i, j)] - v[j];
            seen_row[i] = 1;
            stack.push_back(i);
          }
      }
    }
  };

  // Basis-tree path from row `r` to column `c`, as the sequence of cells.
  auto tree_path = [&](std::size_t r, std::size_t c) {
    const std::size_t total = m + n;
    std::vector<std::size_t> parent(total, total);
    std::vector<std::size_t> via(total, 0);
    std::vector<std::size_t> queue{r};
    parent[r] = r;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t node = queue[head];
      if (node == m + c) break;
      if (node < m) {
        for (std::size_t j = 0; j < n; ++j)
          if (basic[idx(node, j)] && parent[m + j] == total) {
            parent[m + j] = node;
            via[m + j] = idx(node, j);
            queue.push_back(m + j);
          }
      } else {
        const std::size_t j = node - m;
        for (std::size_t i = 0; i < m; ++i)
          if (basic[idx(i, j)] && parent[i] == total) {
            parent[i] = node;
            via[i] = idx(i, j);
            queue.push_back(i);
          }
      }
    }
    std::vector<std::size_t> cells;
    for (std::size_t node = m + c; node != r; node = parent[node]) cells.push_back(via[node]);
    std::reverse(cells.begin(), cells.end());  // first cell touches row r
    return cells;
  };

  while (true) {
    compute_potentials();
    std::optional<std::size_t> entering;
    for (std::size_t i = 0; i < m && !entering; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!basic[idx(i, j)] && detail::strictly_negative(S(cost[idx(i, j)] - u[i] - v[j]))) {
          entering = idx(i, j);
          break;
        }
    if (!entering) break;

    const std::size_t ei = *entering / n, ej = *entering % n;
    auto path = tree_path(ei, ej);
    // Cells at even positions of the path lose flow, odd positions gain.
    std::optional<std::size_t> leaving;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const std::size_t cell = path[k];
      if (!leaving || plan.flow[cell] < plan.flow[*leaving] ||
          (plan.flow[cell] == plan.flow[*leaving] && cell < *leaving))
        leaving = cell;
    }
    const S theta = plan.flow[*leaving];
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0) plan.flow[path[k]] = detail::clamp_nonneg(S(plan.flow[path[k]] - theta));
      else plan.flow[path[k]] += theta;
    }
    plan.flow[*entering] = theta;
    plan.flow[*leaving] = S(0);
    basic[*entering] = 1;
    basic[*leaving] = 0;
    ++plan.pivots;
  }

  plan.value = S(0);
  for (std::size_t c = 0; c < m * n; ++c)
    if (plan.flow[c] != S(0)) plan.value += plan.flow[c] * cost[c];
  plan.row_potential = u;
  plan.col_potential = v;
  return plan;
}

/// Joint mass on ordered vertex pairs (source, target).
template <class S>
struct Coupling {
  std::size_t vertex_count = 0;
  std::map<std::pair<VertexId, VertexId>, S> entries;

  Measure<S> left_marginal() const {
    Measure<S> m;
    for (const auto& [uv, mass] : entries) m.add(uv.first, mass);
    return m;
  }
  Measure<S> right_marginal() const {
    Measure<S> m;
    for (const auto& [uv, mass] : entries) m.add(uv.second, mass);
    return m;
  }
  S cost(const DistanceOracle<S>& d) const {
    S total(0);
    for (const auto& [uv, mass] : entries) total += mass * d(uv.first, uv.second);
    return total;
  }
};

template <class S>
struct TransportResult {
  S value{0};
  Coupling<S> coupling;
  /// 1-Lipschitz potential f on all vertices with sum f (mu - nu) = value.
  std::optional<std::vector<S>> dual_potential;
  std::size_t pivots = 0;
};

/// W(mu, nu) = min over couplings of sum pi(u, v) d(u, v), with d used in the
/// given (source, target) order. The ground cost is never symmetrized.
template <class S>
TransportResult<S> wasserstein(const Measure<S>& mu, const Measure<S>& nu, const DistanceOracle<S>& d,
                               bool with_dual = false) {
  const VertexSet rows = mu.support();
  const VertexSet cols = nu.support();
  for (const VertexSet* side : {&rows, &cols})
    for (VertexId v : *side)
      if (!d.covers(v)) throw Error(ErrorCode::MissingDistance, "vertex " + std::to_string(v) + " not covered by the oracle");
  const S mass_mu = mu.total(), mass_nu = nu.total();
  if (!scalar_traits<S>::eq(mass_mu, mass_nu, 1e-12))
    throw Error(ErrorCode::MassMismatch, scalar_traits<S>::format(mass_mu) + " vs " + scalar_traits<S>::format(mass_nu));

  TransportResult<S> result;
  result.coupling.vertex_count = d.size();
  if (rows.empty() || cols.empty()) {
    if (with_dual) result.dual_potential = std::vector<S>(d.size(), S(0));
    return result;
  }
  std::vector<S> supply, demand, cost;
  for (VertexId r : rows) supply.push_back(mu.at(r));
  for (VertexId c : cols) demand.push_back(nu.at(c));
  for (VertexId r : rows)
    for (VertexId c : cols) cost.push_back(d(r, c));

  auto plan = solve_transportation(supply, demand, cost);
  result.value = plan.value;
  result.pivots = plan.pivots;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (plan.at(i, j) != S(0)) result.coupling.entries[{rows[i], cols[j]}] = plan.at(i, j);

  if (with_dual) {
    // f(z) = min_j d(z, y_j) - v_j is 1-Lipschitz for the ordered contract
    // f(a) - f(b) <= d(a, b), dominates u_i on the sources and is at most
    // -v_j on the targets, so its dual objective reaches the primal value.
    std::vector<S> f(d.size());
    for (std::size_t z = 0; z < d.size(); ++z) {
      std::optional<S> best;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        S cand = d(static_cast<VertexId>(z), cols[j]) - plan.col_potential[j];
        if (!best || cand < *best) best = cand;
      }
      f[z] = *best;
    }
    result.dual_potential = std::move(f);
  }
  return result;
}

/// f(u) - f(v) <= d(u, v) for every ordered pair.
template <class S>
bool lipschitz_check(const std::vector<S>& f, const DistanceOracle<S>& d, double tol = kDefaultTolerance) {
  if (f.size() != d.size()) return false;
  for (std::size_t u = 0; u < f.size(); ++u)
    for (std::size_t v = 0; v < f.size(); ++v)
      if (!scalar_traits<S>::le(S(f[u] - f[v]), d(u, v), tol)) return false;
  return true;
}

/// sum_z f(z) (mu(z) - nu(z)) for a 1-Lipschitz f: a lower bound on W(mu, nu).
template <class S>
S dual_value(const std::vector<S>& f, const Measure<S>& mu, const Measure<S>& nu, const DistanceOracle<S>& d,
             double tol = kDefaultTolerance) {
  if (!lipschitz_check(f, d, tol)) throw Error(ErrorCode::NotLipschitz, "potential violates f(u) - f(v) <= d(u, v)");
  S total(0);
  for (const auto& [z, m] : mu.mass) total += f.at(z) * m;
  for (const auto& [z, m] : nu.mass) total -= f.at(z) * m;
  return total;
}

/// lambda * a + (1 - lambda) * c, entrywise.
template <class S>
Coupling<S> interpolate_coupling(const Coupling<S>& a, const Coupling<S>& c, const S& lambda) {
  if (a.vertex_count != c.vertex_count)
    throw Error(ErrorCode::ShapeMismatch, "couplings live on different vertex sets");
  if (lambda < S(0) || lambda > S(1))
    throw Error(ErrorCode::AlphaOutOfRange, "interpolation weight " + scalar_traits<S>::format(lambda));
  Coupling<S> out;
  out.vertex_count = a.vertex_count;
  const S rest = S(1) - lambda;
  for (const auto& [uv, mass] : a.entries)
    if (lambda != S(0)) out.entries[uv] += lambda * mass;
  for (const auto& [uv, mass] : c.entries)
    if (rest != S(0)) out.entries[uv] += rest * mass;
  return out;
}

}  // namespace hypercurv
