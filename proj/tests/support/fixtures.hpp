#pragma once

#include <vector>

#include "hypercurv/hypercurv.hpp"

namespace fixtures {

using namespace hypercurv;

// H4: h1 = {x1, x2, x3}, h2 = {x1, x4}, unit weights; x1..x4 are ids 0..3.
template <class S = Rational>
Hypergraph<S> h4() {
  std::vector<UndirectedHyperedge<S>> es = {{{0, 1, 2}, S(1)}, {{0, 3}, S(1)}};
  return Hypergraph<S>::undirected(4, es);
}

template <class S = Rational>
Hypergraph<S> undirected(std::size_t n, std::vector<UndirectedHyperedge<S>> es) {
  return Hypergraph<S>::undirected(n, es);
}

template <class S = Rational>
Hypergraph<S> directed(std::size_t n, std::vector<DirectedHyperedge<S>> es) {
  return Hypergraph<S>::directed(n, es);
}

template <class S = Rational>
Hypergraph<S> oriented(std::size_t n, std::vector<DirectedHyperedge<S>> es, bool symmetrize = false) {
  return Hypergraph<S>::oriented(n, es, symmetrize);
}

// Directed 3-cycle of unit singleton hyperedges 0 -> 1 -> 2 -> 0.
inline Hypergraph<Rational> cycle3() {
  return directed(3, {{{0}, {1}, Rational(1)}, {{1}, {2}, Rational(1)}, {{2}, {0}, Rational(1)}});
}

inline Rational q(long p, long r = 1) { return Rational(p) / Rational(r); }

}  // namespace fixtures
