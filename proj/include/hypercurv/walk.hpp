#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypercurv/error.hpp"
#include "hypercurv/hypercore.hpp"

namespace hypercurv {

/// Sparse nonnegative mass over vertices. Only strictly positive entries are
/// stored, in vertex order.
template <class S>
struct Measure {
  std::map<VertexId, S> mass;
  S alpha{0};

  void add(VertexId v, const S& m) {
    if (m == S(0)) return;
    auto [it, inserted] = mass.try_emplace(v, m);
    if (!inserted) it->second += m;
  }

  S at(VertexId v) const {
    auto it = mass.find(v);
    return it == mass.end() ? S(0) : it->second;
  }

  S total() const {
    S t(0);
    for (const auto& [v, m] : mass) t += m;
    return t;
  }

  VertexSet support() const {
    VertexSet out;
    for (const auto& [v, m] : mass) out.push_back(v);
    return out;
  }

  Measure& operator+=(const Measure& other) {
    for (const auto& [v, m] : other.mass) add(v, m);
    return *this;
  }
};

enum class Side { tail, head };
enum class Direction { in, out };

namespace detail {

template <class S>
void check_alpha(const S& alpha) {
  if (alpha < S(0) || alpha > S(1))
    throw Error(ErrorCode::AlphaOutOfRange, "alpha = " + scalar_traits<S>::format(alpha) + " is outside [0, 1]");
}

/// Lazy step from `base`: keeps alpha/k at base and spreads (1 - alpha)/k over
/// the neighborhood through in-edges (backwards, landing on tails) or
/// out-edges (forwards, landing on heads), proportionally to w_h' / |side|.
template <class S>
Measure<S> lazy_step(const Hypergraph<S>& hg, VertexId base, const S& alpha, const S& k, Direction dir) {
  hg.check_vertex(base);
  Measure<S> m;
  m.alpha = alpha;
  m.add(base, alpha / k);
  const bool backwards = dir == Direction::in;
  const S& total_weight = backwards ? hg.in_weight(base) : hg.out_weight(base);
  if (total_weight == S(0))
    throw Error(ErrorCode::DivisionByZeroDegree, "vertex " + std::to_string(base) + " has no " +
                                                     (backwards ? "incoming" : "outgoing") + " hyperedge");
  const S spread = S(1) - alpha;
  if (spread == S(0)) return m;
  for (EdgeId e : backwards ? hg.in_edges(base) : hg.out_edges(base)) {
    const auto& h = hg.edges()[e];
    const VertexSet& land = backwards ? h.tail : h.head;
    const S share = spread * h.weight / (k * S(static_cast<long>(land.size())) * total_weight);
    for (VertexId z : land)
      if (z != base) m.add(z, share);
  }
  return m;
}

}  // namespace detail

/// mu_x^alpha on an undirected hypergraph: alpha at x, and for each h' with
/// x in h', (1 - alpha) w_h' / ((|h'| - 1) Deg(x)) to every other member.
template <class S>
Measure<S> measure_undirected(const Hypergraph<S>& hg, VertexId x, const S& alpha) {
  if (hg.flavor() != Flavor::undirected)
    throw Error(ErrorCode::UnsupportedFlavor, "undirected measure on a " + std::string(to_string(hg.flavor())) + " hypergraph");
  detail::check_alpha(alpha);
  hg.check_vertex(x);
  Measure<S> m;
  m.alpha = alpha;
  m.add(x, alpha);
  const S spread = S(1) - alpha;
  if (spread == S(0)) return m;
  const S deg = hg.degree(x);
  for (EdgeId e : hg.out_edges(x)) {
    const auto& h = hg.edges()[e];
    const S share = spread * h.weight / (S(static_cast<long>(h.size() - 1)) * deg);
    for (VertexId z : h.vertices())
      if (z != x) m.add(z, share);
  }
  return m;
}

namespace detail {

template <class S>
void require_directed(const Hypergraph<S>& hg) {
  if (hg.flavor() == Flavor::undirected)
    throw Error(ErrorCode::UnsupportedFlavor, "directed measure on an undirected hypergraph");
}

}  // namespace detail

/// mu^alpha of the i-th tail vertex of h; total mass 1/|A_h|.
template <class S>
Measure<S> measure_directed_in(const Hypergraph<S>& hg, EdgeId e, std::size_t i, const S& alpha) {
  detail::require_directed(hg);
  detail::check_alpha(alpha);
  const auto& h = hg.edge(e);
  if (i >= h.tail.size())
    throw Error(ErrorCode::IndexOutOfRange, "tail index " + std::to_string(i) + " of hyperedge " + std::to_string(e));
  return detail::lazy_step(hg, h.tail[i], alpha, S(static_cast<long>(h.tail.size())), Direction::in);
}

/// mu^alpha of the j-th head vertex of h; total mass 1/|B_h|.
template <class S>
Measure<S> measure_directed_out(const Hypergraph<S>& hg, EdgeId e, std::size_t j, const S& alpha) {
  detail::require_directed(hg);
  detail::check_alpha(alpha);
  const auto& h = hg.edge(e);
  if (j >= h.head.size())
    throw Error(ErrorCode::IndexOutOfRange, "head index " + std::to_string(j) + " of hyperedge " + std::to_string(e));
  return detail::lazy_step(hg, h.head[j], alpha, S(static_cast<long>(h.head.size())), Direction::out);
}

/// mu^alpha_{A_h} (tail) or mu^alpha_{B_h} (head): sum of the constituents.
template <class S>
Measure<S> measure_set(const Hypergraph<S>& hg, EdgeId e, Side side, const S& alpha) {
  const auto& h = hg.edge(e);
  Measure<S> m;
  m.alpha = alpha;
  const std::size_t count = side == Side::tail ? h.tail.size() : h.head.size();
  for (std::size_t i = 0; i < count; ++i)
    m += side == Side::tail ? measure_directed_in(hg, e, i, alpha) : measure_directed_out(hg, e, i, alpha);
  return m;
}

/// mu^alpha_{u^in} / mu^alpha_{u^out} on an oriented hypergraph.
template <class S>
Measure<S> measure_oriented_pair(const Hypergraph<S>& hg, VertexId u, Direction dir, const S& alpha) {
  if (hg.flavor() != Flavor::oriented) throw Error(ErrorCode::NotOriented, "pair measure needs an oriented hypergraph");
  detail::check_alpha(alpha);
  return detail::lazy_step(hg, u, alpha, S(1), dir);
}

}  // namespace hypercurv
