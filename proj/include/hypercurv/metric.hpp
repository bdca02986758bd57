#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "hypercurv/error.hpp"
#include "hypercurv/hypercore.hpp"

namespace hypercurv {

/// All-pairs hyperpath (quasi-)distances. d(u, v) is the cost of the cheapest
/// hyperpath leaving u and arriving at v.
template <class S>
class DistanceOracle {
 public:
  DistanceOracle() = default;
  DistanceOracle(std::size_t n, std::vector<S> table) : n_(n), d_(std::move(table)) {
    symmetric_ = true;
    for (std::size_t u = 0; u < n_ && symmetric_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (!scalar_traits<S>::eq(d_[u * n_ + v], d_[v * n_ + u])) {
          symmetric_ = false;
          break;
        }
  }

  std::size_t size() const { return n_; }
  bool symmetric() const { return symmetric_; }
  const S& operator()(VertexId u, VertexId v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  bool covers(VertexId v) const { return v < n_; }

 private:
  std::size_t n_ = 0;
  std::vector<S> d_;
  bool symmetric_ = true;
};

/// Single-source shortest hyperpaths. Runs Dijkstra on the vertex/hyperedge
/// incidence expansion: v -> h costs w_h when v can enter h, h -> z is free
/// when z can leave h. Queue ties are broken by node index.
template <class S>
std::vector<S> distances_from(const Hypergraph<S>& hg, VertexId source) {
  const std::size_t n = hg.vertex_count();
  const std::size_t total = n + hg.edge_count();
  std::vector<std::optional<S>> best(total);
  std::vector<char> done(total, 0);
  using Item = std::pair<S, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  best[source] = S(0);
  queue.emplace(S(0), source);
  while (!queue.empty()) {
    auto [dist, node] = queue.top();
    queue.pop();
    if (done[node]) continue;
    done[node] = 1;
    auto relax = [&](std::size_t next, const S& cand) {
      if (!best[next] || cand < *best[next]) {
        best[next] = cand;
        queue.emplace(cand, next);
      }
    };
    if (node < n) {
      for (EdgeId e : hg.out_edges(static_cast<VertexId>(node))) relax(n + e, dist + hg.edges()[e].weight);
    } else {
      for (VertexId z : hg.edges()[node - n].head) relax(z, dist);
    }
  }
  std::vector<S> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!best[v])
      throw Error(ErrorCode::Unreachable, "no hyperpath from " + std::to_string(source) + " to " + std::to_string(v));
    out[v] = *best[v];
  }
  return out;
}

template <class S>
DistanceOracle<S> all_pairs_distances(const Hypergraph<S>& hg) {
  const std::size_t n = hg.vertex_count();
  std::vector<S> table;
  table.reserve(n * n);
  for (std::size_t s = 0; s < n; ++s) {
    auto row = distances_from(hg, static_cast<VertexId>(s));
    table.insert(table.end(), row.begin(), row.end());
  }
  return DistanceOracle<S>(n, std::move(table));
}

template <class S>
S diameter(const DistanceOracle<S>& d) {
  S best(0);
  for (std::size_t u = 0; u < d.size(); ++u)
    for (std::size_t v = 0; v < d.size(); ++v)
      if (d(u, v) > best) best = d(u, v);
  return best;
}

enum class LengthVariant { min, sum, max };

constexpr std::string_view to_string(LengthVariant v) {
  switch (v) {
    case LengthVariant::min: return "min";
    case LengthVariant::sum: return "sum";
    case LengthVariant::max: return "max";
  }
  return "?";
}

inline LengthVariant parse_length_variant(std::string_view s) {
  if (s == "min") return LengthVariant::min;
  if (s == "sum") return LengthVariant::sum;
  if (s == "max") return LengthVariant::max;
  throw Error(ErrorCode::UnsupportedVariant, "unknown length variant '" + std::string(s) + "'");
}

template <class S>
struct EdgeLength {
  LengthVariant variant;
  S value;
};

/// L(h). Undirected: min, sum or max of d over unordered member pairs.
/// Directed and oriented: min of d over A_h x B_h (the only defined form).
template <class S>
EdgeLength<S> edge_length(const Hypergraph<S>& hg, const DistanceOracle<S>& d, EdgeId e, LengthVariant variant) {
  const auto& h = hg.edge(e);
  if (hg.flavor() != Flavor::undirected) {
    if (variant != LengthVariant::min)
      throw Error(ErrorCode::UnsupportedVariant, "directed hyperedge length is defined only as a minimum");
    std::optional<S> best;
    for (VertexId x : h.tail)
      for (VertexId y : h.head)
        if (!best || d(x, y) < *best) best = d(x, y);
    return {variant, *best};
  }
  const auto& vs = h.vertices();
  std::optional<S> acc;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const S& dij = d(vs[i], vs[j]);
      if (!acc) acc = dij;
      else if (variant == LengthVariant::sum) *acc += dij;
      else if (variant == LengthVariant::min && dij < *acc) acc = dij;
      else if (variant == LengthVariant::max && dij > *acc) acc = dij;
    }
  return {variant, *acc};
}

/// d(A, z) = min over x in A of d(x, z).
template <class S>
S set_distance(const DistanceOracle<S>& d, const VertexSet& from, VertexId z) {
  if (from.empty()) throw Error(ErrorCode::EmptyEdge, "distance from an empty set");
  S best = d(from.front(), z);
  for (VertexId x : from)
    if (d(x, z) < best) best = d(x, z);
  return best;
}

/// Out-neighbors of `anchor` split by d(ref, z) against d(ref, anchor).
template <class S>
struct NeighborhoodPartition {
  VertexSet reference;
  VertexId anchor = 0;
  S anchor_distance{0};
  VertexSet closer;   // d(ref, z) < d(ref, anchor)
  VertexSet level;    // equal
  VertexSet farther;  // d(ref, z) > d(ref, anchor)
  std::optional<S> closer_gap;   // C1: d(ref, anchor) - min over closer of d(ref, z)
  std::optional<S> farther_gap;  // C2: min over farther of d(ref, z) - d(ref, anchor)
};

template <class S>
NeighborhoodPartition<S> partition_neighborhood(const Hypergraph<S>& hg, const DistanceOracle<S>& d,
                                                const VertexSet& ref, VertexId anchor) {
  NeighborhoodPartition<S> p;
  p.reference = ref;
  p.anchor = anchor;
  p.anchor_distance = set_distance(d, ref, anchor);
  std::optional<S> min_closer, min_farther;
  for (VertexId z : hg.out_neighbors(anchor)) {
    S dz = set_distance(d, ref, z);
    if (scalar_traits<S>::eq(dz, p.anchor_distance)) {
      p.level.push_back(z);
    } else if (dz < p.anchor_distance) {
      p.closer.push_back(z);
      if (!min_closer || dz < *min_closer) min_closer = dz;
    } else {
      p.farther.push_back(z);
      if (!min_farther || dz < *min_farther) min_farther = dz;
    }
  }
  if (min_closer) p.closer_gap = p.anchor_distance - *min_closer;
  if (min_farther) p.farther_gap = *min_farther - p.anchor_distance;
  return p;
}

template <class S>
NeighborhoodPartition<S> partition_neighborhood(const Hypergraph<S>& hg, const DistanceOracle<S>& d, VertexId ref,
                                                VertexId anchor) {
  return partition_neighborhood(hg, d, VertexSet{ref}, anchor);
}

}  // namespace hypercurv
