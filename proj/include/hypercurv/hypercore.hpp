#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hypercurv/error.hpp"
#include "hypercurv/scalar.hpp"

namespace hypercurv {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using VertexSet = std::vector<VertexId>;  // sorted, no duplicates

enum class Flavor { undirected, directed, oriented };

constexpr std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::undirected: return "undirected";
    case Flavor::directed: return "directed";
    case Flavor::oriented: return "oriented";
  }
  return "?";
}

template <class S>
struct UndirectedHyperedge {
  VertexSet vertices;
  S weight{1};
};

template <class S>
struct DirectedHyperedge {
  VertexSet tail;  // A_h
  VertexSet head;  // B_h
  S weight{1};
};

/// Stored hyperedge. An undirected hyperedge keeps its member set in both
/// `tail` and `head`: every member can enter and leave it.
template <class S>
struct Hyperedge {
  VertexSet tail;
  VertexSet head;
  S weight;

  const VertexSet& vertices() const { return tail; }
  std::size_t size() const { return tail.size(); }
};

namespace detail {

inline bool contains(const VertexSet& s, VertexId v) { return std::binary_search(s.begin(), s.end(), v); }

inline VertexSet normalize_set(VertexSet s, std::size_t n, const char* what, std::size_t edge_index) {
  for (VertexId v : s)
    if (v >= n)
      throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v) + " in " + what + " of hyperedge " +
                                                   std::to_string(edge_index) + " (n=" + std::to_string(n) + ")");
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw Error(ErrorCode::DuplicateVertex, std::string("repeated vertex in ") + what + " of hyperedge " +
                                                std::to_string(edge_index));
  return s;
}

inline bool intersects(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

/// Vertices reachable from `start` when a hyperedge is entered through `from`
/// and left through `to` (tail->head forward, head->tail backward).
template <class S, class FromSet, class ToSet>
std::vector<char> reach(std::size_t n, const std::vector<Hyperedge<S>>& edges, VertexId start, FromSet from, ToSet to) {
  std::vector<std::vector<EdgeId>> incident(n);
  for (EdgeId e = 0; e < edges.size(); ++e)
    for (VertexId v : from(edges[e])) incident[v].push_back(e);
  std::vector<char> seen(n, 0), used(edges.size(), 0);
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : incident[v]) {
      if (used[e]) continue;
      used[e] = 1;
      for (VertexId z : to(edges[e]))
        if (!seen[z]) {
          seen[z] = 1;
          stack.push_back(z);
        }
    }
  }
  return seen;
}

template <class S>
bool connected_edges(std::size_t n, const std::vector<Hyperedge<S>>& edges) {
  if (n == 0) return false;
  auto all = [](const Hyperedge<S>& h) -> const VertexSet& { return h.tail; };
  auto seen = reach(n, edges, 0, all, all);
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

template <class S>
bool strongly_connected_edges(std::size_t n, const std::vector<Hyperedge<S>>& edges) {
  if (n == 0) return false;
  auto tail = [](const Hyperedge<S>& h) -> const VertexSet& { return h.tail; };
  auto head = [](const Hyperedge<S>& h) -> const VertexSet& { return h.head; };
  auto fwd = reach(n, edges, 0, tail, head);
  auto bwd = reach(n, edges, 0, head, tail);
  for (std::size_t v = 0; v < n; ++v)
    if (!fwd[v] || !bwd[v]) return false;
  return true;
}

}  // namespace detail

/// Immutable weighted hypergraph of one of the three flavors. Instances only
/// come out of the validating factories below.
template <class S>
class Hypergraph {
 public:
  using scalar_type = S;

  static Hypergraph undirected(std::size_t n, std::span<const UndirectedHyperedge<S>> edges) {
    std::vector<Hyperedge<S>> stored;
    stored.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].vertices.size() < 2)
        throw Error(ErrorCode::EmptyEdge, "hyperedge " + std::to_string(i) + " needs at least two vertices");
      VertexSet vs = detail::normalize_set(edges[i].vertices, n, "vertex set", i);
      check_weight(edges[i].weight, i);
      stored.push_back({vs, vs, edges[i].weight});
    }
    if (n < 2 || !detail::connected_edges(n, stored))
      throw Error(ErrorCode::NotConnected, "some pair of vertices is not joined by a hyperpath");
    return Hypergraph(Flavor::undirected, n, std::move(stored));
  }

  static Hypergraph directed(std::size_t n, std::span<const DirectedHyperedge<S>> edges) {
    auto stored = normalize_directed(n, edges);
    require_strong(n, stored);
    return Hypergraph(Flavor::directed, n, std::move(stored));
  }

  /// `symmetrize` appends the missing reversals h^- (with the weight of h);
  /// without it the list must already be closed under reversal.
  static Hypergraph oriented(std::size_t n, std::span<const DirectedHyperedge<S>> edges, bool symmetrize = false) {
    auto stored = normalize_directed(n, edges);
    using Key = std::tuple<VertexSet, VertexSet, S>;
    std::map<Key, long> balance;  // count(h) - count(h^-)
    std::vector<Key> order;
    for (const auto& h : stored) {
      Key k{h.tail, h.head, h.weight};
      Key r{h.head, h.tail, h.weight};
      if (!balance.count(k) && !balance.count(r)) order.push_back(k);
      ++balance[k];
      --balance[r];
    }
    for (const Key& k : order) {
      long surplus = balance[k];
      if (surplus == 0) continue;
      if (!symmetrize)
        throw Error(ErrorCode::NotClosedUnderReversal,
                    "hyperedge without a matching reversal of equal weight (tail size " +
                        std::to_string(std::get<0>(k).size()) + ", head size " + std::to_string(std::get<1>(k).size()) + ")");
      const bool add_reverse = surplus > 0;
      for (long c = 0; c < std::abs(surplus); ++c) {
        if (add_reverse) stored.push_back({std::get<1>(k), std::get<0>(k), std::get<2>(k)});
        else stored.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k)});
      }
    }
    require_strong(n, stored);
    return Hypergraph(Flavor::oriented, n, std::move(stored));
  }

  Flavor flavor() const { return flavor_; }
  bool is_directed_like() const { return flavor_ != Flavor::undirected; }
  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Hyperedge<S>>& edges() const { return edges_; }
  const Hyperedge<S>& edge(EdgeId e) const {
    if (e >= edges_.size()) throw Error(ErrorCode::IndexOutOfRange, "hyperedge " + std::to_string(e));
    return edges_[e];
  }

  /// Hyperedges that `v` can enter (v in A_h, or v in h when undirected).
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_edges_.at(v); }
  /// Hyperedges that `v` can leave (v in B_h, or v in h when undirected).
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_edges_.at(v); }

  /// Deg(x) = sum of w_h over h containing x (undirected); for the directed
  /// flavors this is the unweighted count deg_in + deg_out.
  S degree(VertexId v) const {
    check_vertex(v);
    if (flavor_ == Flavor::undirected) return out_weight_[v];
    return S(static_cast<long>(in_edges_[v].size() + out_edges_[v].size()));
  }
  std::size_t deg_in(VertexId v) const { return in_edges(v).size(); }
  std::size_t deg_out(VertexId v) const { return out_edges(v).size(); }
  /// Sum of w_h over h with v in B_h.
  const S& in_weight(VertexId v) const { return in_weight_.at(v); }
  /// Sum of w_h over h with v in A_h.
  const S& out_weight(VertexId v) const { return out_weight_.at(v); }

  /// Gamma(v) for undirected, Gamma^out(v) = Gamma^in(v) for oriented.
  VertexSet neighbors(VertexId v) const {
    if (flavor_ == Flavor::directed)
      throw Error(ErrorCode::UnsupportedFlavor, "plain neighborhood is undefined for directed hypergraphs");
    return out_neighbors(v);
  }

  /// Gamma^in(v): vertices z with z in A_h', v in B_h' for some h'.
  VertexSet in_neighbors(VertexId v) const {
    check_vertex(v);
    VertexSet out;
    for (EdgeId e : in_edges_[v])
      for (VertexId z : edges_[e].tail)
        if (z != v) out.push_back(z);
    return sorted_unique(std::move(out));
  }

  /// Gamma^out(v): vertices z with v in A_h', z in B_h' for some h'.
  VertexSet out_neighbors(VertexId v) const {
    check_vertex(v);
    VertexSet out;
    for (EdgeId e : out_edges_[v])
      for (VertexId z : edges_[e].head)
        if (z != v) out.push_back(z);
    return sorted_unique(std::move(out));
  }

  /// Gamma^in(A_h) and Gamma^out(B_h) of one hyperedge.
  VertexSet tail_in_neighbors(EdgeId e) const {
    VertexSet out;
    for (VertexId x : edge(e).tail) {
      auto part = in_neighbors(x);
      out.insert(out.end(), part.begin(), part.end());
    }
    return sorted_unique(std::move(out));
  }
  VertexSet head_out_neighbors(EdgeId e) const {
    VertexSet out;
    for (VertexId y : edge(e).head) {
      auto part = out_neighbors(y);
      out.insert(out.end(), part.begin(), part.end());
    }
    return sorted_unique(std::move(out));
  }

  const S& max_weight() const { return max_weight_; }
  const S& min_weight() const { return min_weight_; }
  bool has_unit_weights() const { return max_weight_ == S(1) && min_weight_ == S(1); }

  /// B_H and A_H.
  std::size_t max_head_size() const { return max_head_; }
  std::size_t max_tail_size() const { return max_tail_; }

  /// Delta: largest deg_in + deg_out (directed flavors) or incident-edge count.
  std::size_t max_degree() const {
    std::size_t best = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      std::size_t d = flavor_ == Flavor::undirected ? out_edges_[v].size() : in_edges_[v].size() + out_edges_[v].size();
      best = std::max(best, d);
    }
    return best;
  }

  void check_vertex(VertexId v) const {
    if (v >= n_) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
  }

 private:
  Hypergraph(Flavor f, std::size_t n, std::vector<Hyperedge<S>> edges)
      : flavor_(f), n_(n), edges_(std::move(edges)), out_edges_(n), in_edges_(n), in_weight_(n, S(0)), out_weight_(n, S(0)) {
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      const auto& h = edges_[e];
      for (VertexId v : h.tail) {
        out_edges_[v].push_back(e);
        out_weight_[v] += h.weight;
      }
      for (VertexId v : h.head) {
        in_edges_[v].push_back(e);
        in_weight_[v] += h.weight;
      }
      max_head_ = std::max(max_head_, h.head.size());
      max_tail_ = std::max(max_tail_, h.tail.size());
      if (e == 0 || h.weight > max_weight_) max_weight_ = h.weight;
      if (e == 0 || h.weight < min_weight_) min_weight_ = h.weight;
    }
  }

  static void check_weight(const S& w, std::size_t i) {
    if (!(w > S(0)))
      throw Error(ErrorCode::NonPositiveWeight, "hyperedge " + std::to_string(i) + " has weight " + scalar_traits<S>::format(w));
  }

  static std::vector<Hyperedge<S>> normalize_directed(std::size_t n, std::span<const DirectedHyperedge<S>> edges) {
    std::vector<Hyperedge<S>> stored;
    stored.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].tail.empty() || edges[i].head.empty())
        throw Error(ErrorCode::EmptyEdge, "hyperedge " + std::to_string(i) + " has an empty tail or head");
      VertexSet a = detail::normalize_set(edges[i].tail, n, "tail", i);
      VertexSet b = detail::normalize_set(edges[i].head, n, "head", i);
      check_weight(edges[i].weight, i);
      if (detail::intersects(a, b))
        throw Error(ErrorCode::HyperloopInLooplessModel, "hyperedge " + std::to_string(i) + " has tail and head sharing a vertex");
      stored.push_back({std::move(a), std::move(b), edges[i].weight});
    }
    return stored;
  }

  static void require_strong(std::size_t n, const std::vector<Hyperedge<S>>& stored) {
    if (n < 2 || !detail::strongly_connected_edges(n, stored))
      throw Error(ErrorCode::NotStronglyConnected, "some ordered pair of vertices has no directed hyperpath");
  }

  static VertexSet sorted_unique(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  Flavor flavor_;
  std::size_t n_;
  std::vector<Hyperedge<S>> edges_;
  std::vector<std::vector<EdgeId>> out_edges_;
  std::vector<std::vector<EdgeId>> in_edges_;
  std::vector<S> in_weight_;
  std::vector<S> out_weight_;
  S max_weight_{0};
  S min_weight_{0};
  std::size_t max_head_ = 0;
  std::size_t max_tail_ = 0;
};

/// Connectivity of a raw undirected edge list (no other validation).
template <class S>
bool is_connected(std::size_t n, std::span<const UndirectedHyperedge<S>> edges) {
  std::vector<Hyperedge<S>> stored;
  for (const auto& e : edges) {
    for (VertexId v : e.vertices)
      if (v >= n) return false;
    stored.push_back({e.vertices, e.vertices, e.weight});
  }
  return detail::connected_edges(n, stored);
}

/// Strong connectivity of a raw directed edge list (no other validation).
template <class S>
bool is_strongly_connected(std::size_t n, std::span<const DirectedHyperedge<S>> edges) {
  std::vector<Hyperedge<S>> stored;
  for (const auto& e : edges) {
    for (VertexId v : e.tail)
      if (v >= n) return false;
    for (VertexId v : e.head)
      if (v >= n) return false;
    stored.push_back({e.tail, e.head, e.weight});
  }
  return detail::strongly_connected_edges(n, stored);
}

template <class S>
bool is_connected(const Hypergraph<S>& h) {
  return detail::connected_edges(h.vertex_count(), h.edges());
}

template <class S>
bool is_strongly_connected(const Hypergraph<S>& h) {
  return detail::strongly_connected_edges(h.vertex_count(), h.edges());
}

}  // namespace hypercurv
