#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypercurv/curvature.hpp"
#include "hypercurv/error.hpp"
#include "hypercurv/metric.hpp"

namespace hypercurv {

enum class VerdictStatus { holds, violated, not_applicable };

constexpr std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::holds: return "holds";
    case VerdictStatus::violated: return "violated";
    case VerdictStatus::not_applicable: return "not-applicable";
  }
  return "?";
}

/// One inequality instance lhs <= rhs. A verdict whose hypothesis fails is
/// `not_applicable`, which is distinct from `violated`.
template <class S>
struct BoundVerdict {
  std::string name;
  std::optional<Target> target;
  std::string detail;
  std::optional<S> alpha;
  S lhs{0};
  S rhs{0};
  VerdictStatus status = VerdictStatus::not_applicable;
  std::string note;

  bool holds() const { return status == VerdictStatus::holds; }
  bool violated() const { return status == VerdictStatus::violated; }
};

namespace detail {

template <class S>
BoundVerdict<S> compare(std::string name, std::optional<Target> target, std::optional<S> alpha, S lhs, S rhs,
                        double tol) {
  BoundVerdict<S> v;
  v.name = std::move(name);
  v.target = target;
  v.alpha = std::move(alpha);
  v.status = scalar_traits<S>::le(lhs, rhs, tol) ? VerdictStatus::holds : VerdictStatus::violated;
  v.lhs = std::move(lhs);
  v.rhs = std::move(rhs);
  return v;
}

template <class S>
BoundVerdict<S> skipped(std::string name, std::optional<Target> target, std::string note) {
  BoundVerdict<S> v;
  v.name = std::move(name);
  v.target = target;
  v.status = VerdictStatus::not_applicable;
  v.note = std::move(note);
  return v;
}

/// max w_h over hyperedges containing v (undirected).
template <class S>
S local_max_weight(const Hypergraph<S>& hg, VertexId v) {
  S best(0);
  for (EdgeId e : hg.out_edges(v))
    if (hg.edges()[e].weight > best) best = hg.edges()[e].weight;
  return best;
}

}  // namespace detail

/// kappa_alpha(u, v) <= (1 - alpha) 2 max w / d(u, v), and the sharper form
/// with (max over h containing u + max over h containing v) in place of 2 max w.
template <class S>
std::vector<BoundVerdict<S>> check_pair_upper_bound(const Hypergraph<S>& hg, const DistanceOracle<S>& d, VertexId u,
                                                    VertexId v, const S& alpha, double tol = kDefaultTolerance) {
  if (hg.flavor() != Flavor::undirected) throw Error(ErrorCode::UnsupportedFlavor, "expected an undirected hypergraph");
  const S kappa = kappa_alpha_pair(hg, d, u, v, alpha);
  const S gap = S(1) - alpha;
  const Target t = PairTarget{u, v};
  std::vector<BoundVerdict<S>> out;
  out.push_back(detail::compare("pair-2max", std::optional<Target>(t), std::optional<S>(alpha), kappa,
                                S(gap * 2 * hg.max_weight() / d(u, v)), tol));
  out.push_back(detail::compare("pair-local-max", std::optional<Target>(t), std::optional<S>(alpha), kappa,
                                S(gap * (detail::local_max_weight(hg, u) + detail::local_max_weight(hg, v)) / d(u, v)),
                                tol));
  return out;
}

/// Undirected: kappa_alpha(h) <= (1 - alpha)(k - 1) k max w / L(h) and the
/// per-vertex form (1 - alpha)(k - 1) sum_i max_{h ∋ x_i} w / L(h), for the
/// chosen length; with the sum length also min/max pair sandwich.
/// Oriented: kappa_alpha(h) <= (1 - alpha) 2 max w / L(h).
template <class S>
std::vector<BoundVerdict<S>> check_edge_upper_bound(const Hypergraph<S>& hg, const DistanceOracle<S>& d, EdgeId e,
                                                    const S& alpha, LengthVariant variant,
                                                    double tol = kDefaultTolerance) {
  const S gap = S(1) - alpha;
  const std::optional<Target> t = Target(EdgeTarget{e});
  std::vector<BoundVerdict<S>> out;
  if (hg.flavor() == Flavor::oriented) {
    if (variant != LengthVariant::min)
      throw Error(ErrorCode::UnsupportedVariant, "oriented hyperedge length is defined only as a minimum");
    const S kappa = kappa_alpha_edge_directed(hg, d, e, alpha);
    const S len = edge_length(hg, d, e, LengthVariant::min).value;
    out.push_back(detail::compare("oriented-edge", t, std::optional<S>(alpha), kappa, S(gap * 2 * hg.max_weight() / len), tol));
    return out;
  }
  if (hg.flavor() != Flavor::undirected)
    throw Error(ErrorCode::UnsupportedFlavor, "edge upper bound covers undirected and oriented hypergraphs");

  const auto& vs = hg.edge(e).vertices();
  const S k(static_cast<long>(vs.size()));
  const S kappa = kappa_alpha_edge_undirected(hg, d, e, alpha, variant);
  const S len = edge_length(hg, d, e, variant).value;
  S local_sum(0);
  for (VertexId x : vs) local_sum += detail::local_max_weight(hg, x);
  out.push_back(detail::compare("edge-rough", t, std::optional<S>(alpha), kappa,
                                S(gap * (k - 1) * k * hg.max_weight() / len), tol));
  out.push_back(detail::compare("edge-sharp", t, std::optional<S>(alpha), kappa, S(gap * (k - 1) * local_sum / len), tol));
  if (variant == LengthVariant::sum) {
    std::optional<S> lo, hi;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        S kp = kappa_alpha_pair(hg, d, vs[i], vs[j], alpha);
        if (!lo || kp < *lo) lo = kp;
        if (!hi || kp > *hi) hi = kp;
      }
    out.push_back(detail::compare("edge-sandwich-lower", t, std::optional<S>(alpha), *lo, kappa, tol));
    out.push_back(detail::compare("edge-sandwich-upper", t, std::optional<S>(alpha), kappa, *hi, tol));
  }
  return out;
}

/// Per head vertex y_j of h: the partition of Gamma^out(y_j) by d(A_h, .),
/// the gap constants, the exact C(y_j, w) and its closed-form estimate.
template <class S>
struct HeadTerm {
  VertexId vertex = 0;
  NeighborhoodPartition<S> partition;
  S c_exact{0};
  S c_estimate{0};
};

template <class S>
struct DirectedBoundData {
  EdgeId edge = 0;
  S length{0};
  S diameter{0};
  std::size_t m = 0;
  std::vector<HeadTerm<S>> heads;
};

template <class S>
struct DirectedEdgeCheck {
  BoundVerdict<S> verdict;                // with the exact C(y_j, w)
  BoundVerdict<S> estimate_verdict;       // with the closed-form estimate of C
  std::vector<BoundVerdict<S>> c_checks;  // exact C <= estimate, per head vertex
  DirectedBoundData<S> data;
};

/// kappa_alpha(h) <= (1 - alpha) / L(h) (sum_j C(y_j, w) / m + diam), where
///   C(y, w) = (C1 P(Gamma^-) - C2 P(Gamma^+)) with
///   P(X) = sum_{z in X} sum_{h': y in A_h', z in B_h'} (w_h' / |B_h'|) / sum_{h: y in A_h} w_h
/// and the closed-form estimate C1 |Gamma^-| w_max / w_min - C2 |Gamma^+| / B_H.
template <class S>
DirectedEdgeCheck<S> check_directed_edge_bound(const Hypergraph<S>& hg, const DistanceOracle<S>& d, EdgeId e,
                                               const S& alpha, double tol = kDefaultTolerance) {
  if (hg.flavor() == Flavor::undirected) throw Error(ErrorCode::UnsupportedFlavor, "expected a directed hypergraph");
  const auto& h = hg.edge(e);
  DirectedEdgeCheck<S> out;
  auto& data = out.data;
  data.edge = e;
  data.length = edge_length(hg, d, e, LengthVariant::min).value;
  data.diameter = diameter(d);
  data.m = h.head.size();
  const S b_max(static_cast<long>(hg.max_head_size()));
  const S weight_ratio = hg.max_weight() / hg.min_weight();
  const std::optional<Target> t = Target(EdgeTarget{e});

  S sum_exact(0), sum_estimate(0);
  for (VertexId y : h.head) {
    HeadTerm<S> term;
    term.vertex = y;
    term.partition = partition_neighborhood(hg, d, h.tail, y);
    const auto& p = term.partition;
    S mass_closer(0), mass_farther(0);
    for (EdgeId f : hg.out_edges(y)) {
      const auto& hp = hg.edges()[f];
      const S share = hp.weight / S(static_cast<long>(hp.head.size()));
      for (VertexId z : hp.head) {
        if (detail::contains(p.closer, z)) mass_closer += share;
        else if (detail::contains(p.farther, z)) mass_farther += share;
      }
    }
    const S& out_w = hg.out_weight(y);
    if (p.closer_gap) {
      term.c_exact += *p.closer_gap * mass_closer / out_w;
      term.c_estimate += *p.closer_gap * S(static_cast<long>(p.closer.size())) * weight_ratio;
    }
    if (p.farther_gap) {
      term.c_exact -= *p.farther_gap * mass_farther / out_w;
      term.c_estimate -= *p.farther_gap * S(static_cast<long>(p.farther.size())) / b_max;
    }
    sum_exact += term.c_exact;
    sum_estimate += term.c_estimate;
    BoundVerdict<S> cv = detail::compare("directed-C-estimate", t, std::optional<S>(alpha), term.c_exact, term.c_estimate, tol);
    cv.detail = "head vertex " + std::to_string(y);
    out.c_checks.push_back(std::move(cv));
    data.heads.push_back(std::move(term));
  }
  const S m(static_cast<long>(data.m));
  const S kappa = kappa_alpha_edge_directed(hg, d, e, alpha);
  const S gap = S(1) - alpha;
  out.verdict = detail::compare("directed-edge", t, std::optional<S>(alpha), kappa,
                                S(gap / data.length * (sum_exact / m + data.diameter)), tol);
  out.estimate_verdict = detail::compare("directed-edge-estimate", t, std::optional<S>(alpha), kappa,
                                         S(gap / data.length * (sum_estimate / m + data.diameter)), tol);
  return out;
}

/// Oriented pair, any weights: kappa_alpha(u, v) <= (1 - alpha) 2 max w / d(u, v).
template <class S>
BoundVerdict<S> check_pair_bound_oriented_weighted(const Hypergraph<S>& hg, const DistanceOracle<S>& d, VertexId u,
                                                   VertexId v, const S& alpha, double tol = kDefaultTolerance) {
  if (hg.flavor() != Flavor::oriented) throw Error(ErrorCode::NotOriented, "expected an oriented hypergraph");
  const S kappa = kappa_alpha_pair(hg, d, u, v, alpha);
  return detail::compare("oriented-pair-2max", std::optional<Target>(PairTarget{u, v}), std::optional<S>(alpha), kappa,
                         S((S(1) - alpha) * 2 * hg.max_weight() / d(u, v)), tol);
}

/// Oriented pair with unit weights. Besides the 2 max w form, with
/// Gamma^{-1}, Gamma^{+1} the neighbors of v one step closer to / farther
/// from u:
///   kappa_alpha(u, v) <= (1 - alpha)/d (1 + (|Gamma^{-1}| - |Gamma^{+1}| / B_H) / deg_out(v))
/// and the same with the exact hyperedge-share sums in place of the counts.
template <class S>
std::vector<BoundVerdict<S>> check_pair_bound_oriented(const Hypergraph<S>& hg, const DistanceOracle<S>& d, VertexId u,
                                                       VertexId v, const S& alpha, double tol = kDefaultTolerance) {
  if (hg.flavor() != Flavor::oriented) throw Error(ErrorCode::NotOriented, "expected an oriented hypergraph");
  if (!hg.has_unit_weights()) throw Error(ErrorCode::NonUnitWeights, "partition bound assumes w = 1");
  const S kappa = kappa_alpha_pair(hg, d, u, v, alpha);
  const S gap = S(1) - alpha;
  const S dist = d(u, v);
  const auto part = partition_neighborhood(hg, d, u, v);
  const S b_max(static_cast<long>(hg.max_head_size()));
  const S deg_out(static_cast<long>(hg.deg_out(v)));
  S share_closer(0), share_farther(0);
  for (EdgeId f : hg.out_edges(v)) {
    const auto& hp = hg.edges()[f];
    const S share = S(1) / S(static_cast<long>(hp.head.size()));
    for (VertexId z : hp.head) {
      if (detail::contains(part.closer, z)) share_closer += share;
      else if (detail::contains(part.farther, z)) share_farther += share;
    }
  }
  const std::optional<Target> t = Target(PairTarget{u, v});
  std::vector<BoundVerdict<S>> out;
  out.push_back(detail::compare("oriented-pair-2max", t, std::optional<S>(alpha), kappa, S(gap * 2 / dist), tol));
  const S counted = (S(static_cast<long>(part.closer.size())) - S(static_cast<long>(part.farther.size())) / b_max) / deg_out;
  out.push_back(detail::compare("oriented-pair-partition", t, std::optional<S>(alpha), kappa,
                                S(gap / dist * (S(1) + counted)), tol));
  const S exact = (share_closer - share_farther) / deg_out;
  out.push_back(detail::compare("oriented-pair-partition-exact", t, std::optional<S>(alpha), kappa,
                                S(gap / dist * (S(1) + exact)), tol));
  return out;
}

/// LLY limits keyed by target.
template <class S>
using LlyTable = std::map<Target, LimitResult<S>>;

template <class S>
LlyTable<S> compute_lly_table(const Hypergraph<S>& hg, const DistanceOracle<S>& d, const std::vector<Target>& targets,
                              LengthVariant variant, LimitOptions<S> opts = {}, unsigned threads = 1) {
  auto results = parallel_map(targets.size(), threads,
                              [&](std::size_t i) { return lly_limit(hg, d, targets[i], variant, opts); });
  LlyTable<S> table;
  for (std::size_t i = 0; i < targets.size(); ++i) table.emplace(targets[i], std::move(results[i]));
  return table;
}

namespace detail {

template <class S>
const LimitResult<S>& lookup(const LlyTable<S>& table, const Target& t) {
  auto it = table.find(t);
  if (it == table.end()) throw Error(ErrorCode::UnknownTarget, "curvature table has no entry for a requested target");
  return it->second;
}

// Minimum LLY value over targets; nullopt stands for -inf (some target diverges).
template <class S>
std::optional<S> min_lly(const LlyTable<S>& table, const std::vector<Target>& targets) {
  std::optional<S> best;
  for (const Target& t : targets) {
    const auto& r = lookup(table, t);
    if (!r.lly) return std::nullopt;
    if (!best || *r.lly < *best) best = *r.lly;
  }
  return best;
}

template <class S>
std::vector<Target> in_edge_pairs(const Hypergraph<S>& hg) {
  std::vector<Target> out;
  for (const auto& h : hg.edges())
    for (VertexId u : h.tail)
      for (VertexId v : h.head) out.push_back(PairTarget{u, v});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Bonnet-Myers type checks on LLY values.
///   undirected: d(u, v) <= 2 max w / kappa(u, v) whenever kappa(u, v) > 0, and
///     diam <= 2 max w / kappa0 with kappa0 = min over well-transported pairs;
///   oriented: the same per ordered pair, L(h) <= 2 max w / kappa(h) for
///     kappa(h) > 0, and the diameter form with kappa0 = min over u in A_h, v in B_h.
template <class S>
std::vector<BoundVerdict<S>> check_bonnet_myers(const Hypergraph<S>& hg, const DistanceOracle<S>& d,
                                                const LlyTable<S>& table, double tol = kDefaultTolerance) {
  std::vector<BoundVerdict<S>> out;
  if (hg.flavor() == Flavor::directed) return out;
  const S two_w = S(2) * hg.max_weight();
  const auto n = static_cast<VertexId>(hg.vertex_count());
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v) {
      if (u == v || (hg.flavor() == Flavor::undirected && v < u)) continue;
      const Target t = PairTarget{u, v};
      const auto& r = detail::lookup(table, t);
      if (!r.lly || !(*r.lly > S(0))) {
        out.push_back(detail::skipped<S>("bm-pair", t, "kappa <= 0"));
        continue;
      }
      out.push_back(detail::compare("bm-pair", std::optional<Target>(t), std::optional<S>(), d(u, v), S(two_w / *r.lly), tol));
    }

  std::vector<Target> family;
  if (hg.flavor() == Flavor::undirected) {
    for (const auto& p : well_transported_pairs(hg, d)) family.push_back(PairTarget{p.u, p.v});
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
  } else {
    for (EdgeId e = 0; e < hg.edge_count(); ++e) {
      const Target t = EdgeTarget{e};
      const auto& r = detail::lookup(table, t);
      if (!r.lly || !(*r.lly > S(0))) {
        out.push_back(detail::skipped<S>("bm-edge-length", t, "kappa <= 0"));
        continue;
      }
      out.push_back(detail::compare("bm-edge-length", std::optional<Target>(t), std::optional<S>(),
                                    edge_length(hg, d, e, LengthVariant::min).value, S(two_w / *r.lly), tol));
    }
    family = detail::in_edge_pairs(hg);
  }
  const auto kappa0 = detail::min_lly(table, family);
  if (!kappa0 || !(*kappa0 > S(0))) {
    out.push_back(detail::skipped<S>("bm-diameter", std::nullopt, "curvature lower bound kappa0 <= 0"));
  } else {
    auto v = detail::compare("bm-diameter", std::optional<Target>(), std::optional<S>(), diameter(d), S(two_w / *kappa0), tol);
    v.detail = "kappa0 = " + scalar_traits<S>::format(*kappa0);
    out.push_back(std::move(v));
  }
  return out;
}

/// Lower-bound propagation: min over all pairs of kappa >= min over
/// well-transported pairs (undirected).
template <class S>
BoundVerdict<S> check_well_transported_propagation(const Hypergraph<S>& hg, const DistanceOracle<S>& d,
                                                   const LlyTable<S>& table, double tol = kDefaultTolerance) {
  std::vector<Target> wt, all;
  for (const auto& p : well_transported_pairs(hg, d)) wt.push_back(PairTarget{p.u, p.v});
  for (const Target& t : all_targets(hg))
    if (std::holds_alternative<PairTarget>(t)) all.push_back(t);
  const auto lo_wt = detail::min_lly(table, wt);
  const auto lo_all = detail::min_lly(table, all);
  return detail::compare("well-transported-propagation", std::optional<Target>(), std::optional<S>(), *lo_wt, *lo_all, tol);
}

/// 1 + sum_{k=1}^{floor(2/kappa0)} Delta^k prod_{i=1}^{k-1} (B/(1+B)) (1 + B - i kappa0).
template <class S>
S vertex_count_bound(const S& kappa0, std::size_t max_degree, std::size_t max_head) {
  const S delta(static_cast<long>(max_degree));
  const S b(static_cast<long>(max_head));
  const S layers = scalar_traits<S>::floor(S(S(2) / kappa0));
  const long count = static_cast<long>(scalar_traits<S>::to_double(layers));
  S total(1), delta_pow(1), product(1);
  for (long k = 1; k <= count; ++k) {
    delta_pow *= delta;
    if (k >= 2) product *= b / (S(1) + b) * (S(1) + b - S(k - 1) * kappa0);
    total += delta_pow * product;
  }
  return total;
}

namespace detail {

template <class S>
struct OrientedHypothesis {
  std::optional<S> kappa0;
  std::string note;  // why the hypothesis fails, when it does
};

template <class S>
OrientedHypothesis<S> oriented_kappa0(const Hypergraph<S>& hg, const LlyTable<S>& table, std::optional<S> requested) {
  if (hg.flavor() != Flavor::oriented) throw Error(ErrorCode::NotOriented, "expected an oriented hypergraph");
  if (!hg.has_unit_weights()) throw Error(ErrorCode::NonUnitWeights, "vertex-count bound assumes w = 1");
  const auto observed = min_lly(table, in_edge_pairs(hg));
  OrientedHypothesis<S> out;
  S k0;
  if (requested) {
    if (!observed || *observed < *requested) {
      out.note = std::string(to_string(ErrorCode::HypothesisNotMet)) + ": some pair u in A_h, v in B_h has kappa below " +
                 scalar_traits<S>::format(*requested);
      return out;
    }
    k0 = *requested;
  } else {
    if (!observed) {
      out.note = std::string(to_string(ErrorCode::HypothesisNotMet)) + ": divergent pair curvature";
      return out;
    }
    k0 = *observed;
  }
  if (!(k0 > S(0))) {
    out.note = std::string(to_string(ErrorCode::HypothesisNotMet)) + ": kappa0 = " + scalar_traits<S>::format(k0) + " <= 0";
    return out;
  }
  out.kappa0 = k0;
  return out;
}

}  // namespace detail

/// N <= vertex_count_bound(kappa0, Delta, B_H) on unit-weight oriented
/// hypergraphs whose pairs u in A_h, v in B_h all have kappa >= kappa0 > 0.
/// kappa0 defaults to the observed minimum over those pairs.
template <class S>
BoundVerdict<S> check_vertex_count(const Hypergraph<S>& hg, const LlyTable<S>& table,
                                   std::optional<S> kappa0 = std::nullopt, double tol = kDefaultTolerance) {
  const auto hyp = detail::oriented_kappa0(hg, table, kappa0);
  if (!hyp.kappa0) return detail::skipped<S>("vertex-count", std::nullopt, hyp.note);
  auto v = detail::compare("vertex-count", std::optional<Target>(), std::optional<S>(), S(static_cast<long>(hg.vertex_count())),
                           vertex_count_bound(*hyp.kappa0, hg.max_degree(), hg.max_head_size()), tol);
  v.detail = "kappa0 = " + scalar_traits<S>::format(*hyp.kappa0);
  return v;
}

/// Layered growth |Gamma_{i+1}(u)| <= |Gamma_i(u)| (B/(1+B)) (1 + B - i kappa0) Delta
/// for every base vertex u and layer i >= 1, under the same hypothesis.
template <class S>
std::vector<BoundVerdict<S>> check_layer_growth(const Hypergraph<S>& hg, const DistanceOracle<S>& d,
                                                const LlyTable<S>& table, std::optional<S> kappa0 = std::nullopt,
                                                double tol = kDefaultTolerance) {
  const auto hyp = detail::oriented_kappa0(hg, table, kappa0);
  if (!hyp.kappa0) return {detail::skipped<S>("layer-growth", std::nullopt, hyp.note)};
  const S k0 = *hyp.kappa0;
  const S b(static_cast<long>(hg.max_head_size()));
  const S delta(static_cast<long>(hg.max_degree()));
  std::vector<BoundVerdict<S>> out;
  const auto n = static_cast<VertexId>(hg.vertex_count());
  for (VertexId u = 0; u < n; ++u) {
    std::map<long, long> layer;
    for (VertexId z = 0; z < n; ++z)
      if (z != u) ++layer[static_cast<long>(scalar_traits<S>::to_double(d(u, z)) + 0.5)];
    for (const auto& [i, size] : layer) {
      auto next = layer.find(i + 1);
      const long next_size = next == layer.end() ? 0 : next->second;
      auto v = detail::compare("layer-growth", std::optional<Target>(), std::optional<S>(), S(next_size),
                               S(S(size) * b / (S(1) + b) * (S(1) + b - S(i) * k0) * delta), tol);
      v.detail = "base " + std::to_string(u) + ", layer " + std::to_string(i);
      out.push_back(std::move(v));
    }
  }
  return out;
}

template <class S>
struct LedgerConfig {
  std::vector<S> grid = default_alpha_grid<S>();
  LengthVariant variant = LengthVariant::sum;
  LimitOptions<S> limit;
  unsigned threads = 1;
  double tol = kDefaultTolerance;
};

/// Every applicable check for the flavor: alpha-level bounds for each target
/// on the grid, then the LLY-level theorems.
template <class S>
std::vector<BoundVerdict<S>> bounds_ledger(const Hypergraph<S>& hg, const DistanceOracle<S>& d,
                                           const LedgerConfig<S>& cfg = {}) {
  const auto targets = all_targets(hg);
  const bool unit = hg.has_unit_weights();
  const LengthVariant edge_variant = hg.flavor() == Flavor::undirected ? cfg.variant : LengthVariant::min;
  auto per_target = parallel_map(targets.size(), cfg.threads, [&](std::size_t i) {
    std::vector<BoundVerdict<S>> local;
    auto append = [&local](std::vector<BoundVerdict<S>> vs) {
      for (auto& v : vs) local.push_back(std::move(v));
    };
    for (const S& alpha : cfg.grid) {
      if (const auto* p = std::get_if<PairTarget>(&targets[i])) {
        if (hg.flavor() == Flavor::undirected) append(check_pair_upper_bound(hg, d, p->u, p->v, alpha, cfg.tol));
        else if (unit) append(check_pair_bound_oriented(hg, d, p->u, p->v, alpha, cfg.tol));
        else local.push_back(check_pair_bound_oriented_weighted(hg, d, p->u, p->v, alpha, cfg.tol));
      } else {
        const EdgeId e = std::get<EdgeTarget>(targets[i]).edge;
        if (hg.flavor() != Flavor::directed) append(check_edge_upper_bound(hg, d, e, alpha, edge_variant, cfg.tol));
        if (hg.flavor() != Flavor::undirected) {
          auto c = check_directed_edge_bound(hg, d, e, alpha, cfg.tol);
          local.push_back(std::move(c.verdict));
          local.push_back(std::move(c.estimate_verdict));
          append(std::move(c.c_checks));
        }
      }
    }
    return local;
  });
  std::vector<BoundVerdict<S>> out;
  for (auto& block : per_target)
    for (auto& v : block) out.push_back(std::move(v));

  if (hg.flavor() == Flavor::directed) return out;
  const auto table = compute_lly_table(hg, d, targets, edge_variant, cfg.limit, cfg.threads);
  for (auto& v : check_bonnet_myers(hg, d, table, cfg.tol)) out.push_back(std::move(v));
  if (hg.flavor() == Flavor::undirected) {
    out.push_back(check_well_transported_propagation(hg, d, table, cfg.tol));
  } else if (unit) {
    out.push_back(check_vertex_count(hg, table, std::optional<S>(), cfg.tol));
    for (auto& v : check_layer_growth(hg, d, table, std::optional<S>(), cfg.tol)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace hypercurv
