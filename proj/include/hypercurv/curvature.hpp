#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "hypercurv/error.hpp"
#include "hypercurv/metric.hpp"
#include "hypercurv/transport.hpp"
#include "hypercurv/walk.hpp"

namespace hypercurv {

struct PairTarget {
  VertexId u = 0;
  VertexId v = 0;
  auto operator<=>(const PairTarget&) const = default;
};

struct EdgeTarget {
  EdgeId edge = 0;
  auto operator<=>(const EdgeTarget&) const = default;
};

/// Pairs order before hyperedges; within a kind, by ids.
using Target = std::variant<PairTarget, EdgeTarget>;

/// kappa_alpha(u, v) = 1 - W(mu_u, mu_v) / d(u, v). On an oriented hypergraph
/// the measures are mu_{u^in} and mu_{v^out}.
template <class S>
S kappa_alpha_pair(const Hypergraph<S>& hg, const DistanceOracle<S>& d, VertexId u, VertexId v, const S& alpha) {
  hg.check_vertex(u);
  hg.check_vertex(v);
  if (u == v) throw Error(ErrorCode::SamePair, "curvature needs two distinct vertices");
  switch (hg.flavor()) {
    case Flavor::undirected: {
      auto w = wasserstein(measure_undirected(hg, u, alpha), measure_undirected(hg, v, alpha), d);
      return S(1) - w.value / d(u, v);
    }
    case Flavor::oriented: {
      auto w = wasserstein(measure_oriented_pair(hg, u, Direction::in, alpha),
                           measure_oriented_pair(hg, v, Direction::out, alpha), d);
      return S(1) - w.value / d(u, v);
    }
    case Flavor::directed: break;
  }
  throw Error(ErrorCode::UnsupportedFlavor, "pair curvature is defined for undirected and oriented hypergraphs only");
}

/// kappa_alpha(h) = 1 - (sum over member pairs of W) / L_variant(h).
template <class S>
S kappa_alpha_edge_undirected(const Hypergraph<S>& hg, const DistanceOracle<S>& d, EdgeId e, const S& alpha,
                              LengthVariant variant) {
  if (hg.flavor() != Flavor::undirected) throw Error(ErrorCode::UnsupportedFlavor, "expected an undirected hypergraph");
  const auto& vs = hg.edge(e).vertices();
  std::vector<Measure<S>> measures;
  measures.reserve(vs.size());
  for (VertexId x : vs) measures.push_back(measure_undirected(hg, x, alpha));
  S total(0);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) total += wasserstein(measures[i], measures[j], d).value;
  return S(1) - total / edge_length(hg, d, e, variant).value;
}

/// kappa_alpha(h) = 1 - W(mu_{A_h}, mu_{B_h}) / L(h) for directed and oriented hyperedges.
template <class S>
S kappa_alpha_edge_directed(const Hypergraph<S>& hg, const DistanceOracle<S>& d, EdgeId e, const S& alpha) {
  if (hg.flavor() == Flavor::undirected) throw Error(ErrorCode::UnsupportedFlavor, "expected a directed hypergraph");
  auto w = wasserstein(measure_set(hg, e, Side::tail, alpha), measure_set(hg, e, Side::head, alpha), d);
  return S(1) - w.value / edge_length(hg, d, e, LengthVariant::min).value;
}

/// Directed hyperedges always use the min length; `variant` applies to undirected ones.
template <class S>
S kappa_alpha(const Hypergraph<S>& hg, const DistanceOracle<S>& d, const Target& target, const S& alpha,
              LengthVariant variant = LengthVariant::sum) {
  if (const auto* p = std::get_if<PairTarget>(&target)) return kappa_alpha_pair(hg, d, p->u, p->v, alpha);
  const EdgeId e = std::get<EdgeTarget>(target).edge;
  if (hg.flavor() == Flavor::undirected) return kappa_alpha_edge_undirected(hg, d, e, alpha, variant);
  return kappa_alpha_edge_directed(hg, d, e, alpha);
}

template <class S>
struct AlphaSample {
  S alpha;
  S kappa;
  std::optional<S> normalized;  // kappa / (1 - alpha); absent at alpha = 1
};

template <class S>
struct LimitOptions {
  int max_k = 24;
  double tol = kDefaultTolerance;
};

/// Outcome of the alpha -> 1 limit of g(alpha) = kappa_alpha / (1 - alpha).
///
/// kappa_alpha is concave and piecewise linear in alpha, so on a final piece
/// [a*, 1] it equals kappa_1 + slope (1 - alpha). Sampling alpha_k = 1 - 2^-k
/// until two consecutive chord slopes (kappa_alpha - kappa_1) / (1 - alpha)
/// agree certifies that piece. When kappa_1 = 0 the slope is the LLY
/// curvature; when kappa_1 < 0 (possible for hyperedges) g diverges to -inf.
template <class S>
struct LimitResult {
  S kappa_one{0};
  S slope{0};
  std::optional<S> lly;  // empty when diverging
  bool diverges = false;
  S stabilization_alpha{0};
  int stabilization_k = 0;
  std::vector<AlphaSample<S>> dyadic;
};

template <class S>
S dyadic_alpha(int k) {
  return S(1) - S(1) / S(static_cast<long>(1L << k));
}

template <class S>
LimitResult<S> lly_limit(const Hypergraph<S>& hg, const DistanceOracle<S>& d, const Target& target,
                         LengthVariant variant = LengthVariant::sum, LimitOptions<S> opts = {}) {
  LimitResult<S> out;
  out.kappa_one = kappa_alpha(hg, d, target, S(1), variant);
  std::optional<S> prev_slope;
  for (int k = 2; k <= opts.max_k; ++k) {
    const S alpha = dyadic_alpha<S>(k);
    const S gap = S(1) - alpha;
    const S kappa = kappa_alpha(hg, d, target, alpha, variant);
    out.dyadic.push_back({alpha, kappa, S(kappa / gap)});
    const S slope = (kappa - out.kappa_one) / gap;
    if (prev_slope && scalar_traits<S>::eq(slope, *prev_slope, opts.tol)) {
      out.slope = slope;
      out.stabilization_k = k - 1;
      out.stabilization_alpha = dyadic_alpha<S>(k - 1);
      out.diverges = !scalar_traits<S>::is_zero(out.kappa_one, opts.tol);
      if (!out.diverges) out.lly = slope;
      return out;
    }
    prev_slope = slope;
  }
  throw Error(ErrorCode::NoStabilization, "normalized curvature did not settle by alpha = 1 - 2^-" +
                                              std::to_string(opts.max_k));
}

/// {0, 0.1, ..., 0.9, 0.99}
template <class S>
std::vector<S> default_alpha_grid() {
  std::vector<S> grid;
  for (long i = 0; i <= 9; ++i) grid.push_back(S(i) / S(10));
  grid.push_back(S(99) / S(100));
  return grid;
}

template <class S>
std::vector<AlphaSample<S>> alpha_curve(const Hypergraph<S>& hg, const DistanceOracle<S>& d, const Target& target,
                                        const std::vector<S>& grid, LengthVariant variant) {
  std::vector<AlphaSample<S>> out;
  out.reserve(grid.size());
  for (const S& a : grid) {
    AlphaSample<S> s{a, kappa_alpha(hg, d, target, a, variant), std::nullopt};
    if (a != S(1)) s.normalized = s.kappa / (S(1) - a);
    out.push_back(std::move(s));
  }
  return out;
}

template <class S>
struct CurvatureReport {
  Target target;
  LengthVariant variant = LengthVariant::sum;
  std::vector<AlphaSample<S>> curve;
  LimitResult<S> limit;
};

template <class S>
CurvatureReport<S> curvature_report(const Hypergraph<S>& hg, const DistanceOracle<S>& d, const Target& target,
                                    const std::vector<S>& grid, LengthVariant variant, LimitOptions<S> opts = {}) {
  CurvatureReport<S> r;
  r.target = target;
  r.variant = hg.flavor() == Flavor::undirected ? variant : LengthVariant::min;
  r.curve = alpha_curve(hg, d, target, grid, variant);
  r.limit = lly_limit(hg, d, target, variant, opts);
  return r;
}

/// Runs `fn(i)` for i in [0, count) on up to `threads` workers; results land
/// at their index, so the output does not depend on scheduling.
template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < count; i += stride) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min<std::size_t>(threads, count);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work, t, n);
  }
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

/// Pairs {u, v} inside a hyperedge h with d(u, v) = w_h, listed per hyperedge.
struct WellTransportedPair {
  VertexId u;
  VertexId v;
  EdgeId edge;
  auto operator<=>(const WellTransportedPair&) const = default;
};

template <class S>
std::vector<WellTransportedPair> well_transported_pairs(const Hypergraph<S>& hg, const DistanceOracle<S>& d) {
  if (hg.flavor() != Flavor::undirected)
    throw Error(ErrorCode::UnsupportedFlavor, "well-transported pairs are defined on undirected hypergraphs");
  std::vector<WellTransportedPair> out;
  for (EdgeId e = 0; e < hg.edge_count(); ++e) {
    const auto& h = hg.edges()[e];
    const auto& vs = h.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (scalar_traits<S>::eq(d(vs[i], vs[j]), h.weight)) out.push_back({vs[i], vs[j], e});
  }
  return out;
}

/// Every pair and hyperedge the flavor defines a curvature for: unordered
/// pairs (undirected), ordered pairs (oriented), then all hyperedges.
template <class S>
std::vector<Target> all_targets(const Hypergraph<S>& hg) {
  std::vector<Target> out;
  const auto n = static_cast<VertexId>(hg.vertex_count());
  if (hg.flavor() != Flavor::directed)
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v)
        if (u != v && (hg.flavor() == Flavor::oriented || u < v)) out.push_back(PairTarget{u, v});
  for (EdgeId e = 0; e < hg.edge_count(); ++e) out.push_back(EdgeTarget{e});
  return out;
}

}  // namespace hypercurv
