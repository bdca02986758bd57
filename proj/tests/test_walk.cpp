#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace hypercurv;
using fixtures::q;

namespace {

std::map<unsigned, Rational> as_map(const Measure<Rational>& m) {
  return {m.mass.begin(), m.mass.end()};
}

// Constituent measure of x = A_h[i] straight from the formula: alpha/n at x,
// and (1-alpha) w_h' / (n |A_h'| sum_{h': x in B_h'} w) on the tails of h' with x in B_h'.
std::map<unsigned, Rational> in_measure_oracle(const Hypergraph<Rational>& hg, EdgeId e, std::size_t i,
                                               const Rational& alpha) {
  const auto& h = hg.edge(e);
  const Rational n(static_cast<long>(h.tail.size()));
  const VertexId x = h.tail[i];
  Rational total(0);
  for (const auto& g : hg.edges())
    if (std::binary_search(g.head.begin(), g.head.end(), x)) total += g.weight;
  std::map<unsigned, Rational> mu{{x, alpha / n}};
  for (const auto& g : hg.edges()) {
    if (!std::binary_search(g.head.begin(), g.head.end(), x)) continue;
    for (VertexId z : g.tail) mu[z] += (1 - alpha) * g.weight / (n * Rational(static_cast<long>(g.tail.size())) * total);
  }
  std::erase_if(mu, [](const auto& kv) { return kv.second == 0; });
  return mu;
}

std::map<unsigned, Rational> out_measure_oracle(const Hypergraph<Rational>& hg, EdgeId e, std::size_t j,
                                                const Rational& alpha) {
  const auto& h = hg.edge(e);
  const Rational m(static_cast<long>(h.head.size()));
  const VertexId y = h.head[j];
  Rational total(0);
  for (const auto& g : hg.edges())
    if (std::binary_search(g.tail.begin(), g.tail.end(), y)) total += g.weight;
  std::map<unsigned, Rational> mu{{y, alpha / m}};
  for (const auto& g : hg.edges()) {
    if (!std::binary_search(g.tail.begin(), g.tail.end(), y)) continue;
    for (VertexId z : g.head) mu[z] += (1 - alpha) * g.weight / (m * Rational(static_cast<long>(g.head.size())) * total);
  }
  std::erase_if(mu, [](const auto& kv) { return kv.second == 0; });
  return mu;
}

std::vector<oracle::Arc> arcs_of(const Hypergraph<Rational>& hg) {
  std::vector<oracle::Arc> out;
  for (const auto& h : hg.edges())
    out.push_back({{h.tail.begin(), h.tail.end()}, {h.head.begin(), h.head.end()}, h.weight});
  return out;
}

const std::vector<Rational> kGrid = {q(0), q(1, 4), q(1, 2), q(3, 4), q(1)};

}  // namespace

TEST(Walk, H4Measures) {
  auto hg = fixtures::h4();
  for (const auto& a : kGrid) {
    auto mu = measure_undirected(hg, 0, a);
    EXPECT_EQ(mu.at(0), a);
    EXPECT_EQ(mu.at(1), (1 - a) / 4);
    EXPECT_EQ(mu.at(2), (1 - a) / 4);
    EXPECT_EQ(mu.at(3), (1 - a) / 2);
    auto nu = measure_undirected(hg, 1, a);
    EXPECT_EQ(nu.at(1), a);
    EXPECT_EQ(nu.at(0), (1 - a) / 2);
    EXPECT_EQ(nu.at(2), (1 - a) / 2);
    EXPECT_EQ(nu.at(3), q(0));
  }
  auto dirac = measure_undirected(hg, 2, q(1));
  EXPECT_EQ(dirac.support(), (VertexSet{2}));
  EXPECT_EQ(dirac.total(), q(1));
}

TEST(Walk, AlphaOutOfRange) {
  auto hg = fixtures::h4();
  try {
    measure_undirected(hg, 0, q(3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AlphaOutOfRange);
  }
  EXPECT_THROW(measure_undirected(hg, 0, q(-1, 5)), Error);
}

TEST(Walk, DirectedConstituentsOnCycle) {
  auto hg = fixtures::cycle3();
  const auto a = q(1, 3);
  auto out = measure_directed_out(hg, 0, 0, a);  // y = 1, unique successor 2
  EXPECT_EQ(out.at(1), a);
  EXPECT_EQ(out.at(2), 1 - a);
  auto in = measure_directed_in(hg, 0, 0, a);  // x = 0, unique predecessor 2
  EXPECT_EQ(in.at(0), a);
  EXPECT_EQ(in.at(2), 1 - a);
  EXPECT_EQ(measure_directed_in(hg, 0, 0, q(1)).support(), (VertexSet{0}));
  try {
    measure_directed_in(hg, 0, 1, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(Walk, SetMeasures) {
  auto hg = fixtures::directed(4, {{{0, 1}, {2, 3}, q(1)}, {{2}, {0}, q(2)}, {{3}, {1}, q(1)}});
  auto tail1 = measure_set(hg, 0, Side::tail, q(1));
  EXPECT_EQ(tail1.at(0), q(1, 2));
  EXPECT_EQ(tail1.at(1), q(1, 2));
  for (const auto& a : kGrid) {
    EXPECT_EQ(measure_set(hg, 0, Side::tail, a).total(), q(1));
    EXPECT_EQ(measure_set(hg, 0, Side::head, a).total(), q(1));
  }
  // singleton tail: set measure equals the constituent
  EXPECT_EQ(as_map(measure_set(hg, 1, Side::tail, q(1, 3))), as_map(measure_directed_in(hg, 1, 0, q(1, 3))));
}

TEST(Walk, OrientedPairMeasures) {
  auto hg = fixtures::oriented(2, {{{0}, {1}, q(1)}, {{1}, {0}, q(1)}});
  const auto a = q(2, 7);
  auto in = measure_oriented_pair(hg, 0, Direction::in, a);
  EXPECT_EQ(in.at(0), a);
  EXPECT_EQ(in.at(1), 1 - a);
  EXPECT_EQ(measure_oriented_pair(hg, 0, Direction::out, q(1)).support(), (VertexSet{0}));
  try {
    measure_oriented_pair(fixtures::cycle3(), 0, Direction::in, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOriented);
  }
}

TEST(WalkProperty, UndirectedMatchesFormula) {
  std::mt19937_64 rng(301);
  for (int t = 0; t < 80; ++t) {
    auto inst = gen::undirected(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 7)), 5, 4, 5);
    auto hg = Hypergraph<Rational>::undirected(inst.n, inst.edges);
    auto arcs = arcs_of(hg);
    for (VertexId x = 0; x < inst.n; ++x)
      for (const auto& a : kGrid) {
        auto mu = measure_undirected(hg, x, a);
        EXPECT_EQ(as_map(mu), oracle::undirected_measure(arcs, x, a));
        EXPECT_EQ(mu.total(), q(1));
        // support: x and its neighbours only
        for (VertexId z : mu.support()) EXPECT_TRUE(z == x || detail::contains(hg.neighbors(x), z));
      }
  }
}

TEST(WalkProperty, DirectedMatchesFormulaAndIdentity) {
  std::mt19937_64 rng(302);
  for (int t = 0; t < 80; ++t) {
    auto inst = gen::directed(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 7)), 8, 3, 4);
    auto hg = Hypergraph<Rational>::directed(inst.n, inst.edges);
    for (EdgeId e = 0; e < hg.edge_count(); ++e) {
      const auto& h = hg.edge(e);
      const Rational n(static_cast<long>(h.tail.size())), m(static_cast<long>(h.head.size()));
      for (const auto& a : kGrid) {
        for (std::size_t i = 0; i < h.tail.size(); ++i) {
          auto mu = measure_directed_in(hg, e, i, a);
          EXPECT_EQ(as_map(mu), in_measure_oracle(hg, e, i, a));
          Rational spread(0);
          for (VertexId z : hg.in_neighbors(h.tail[i])) spread += mu.at(z);
          EXPECT_EQ(spread, (1 - a) / n);
          EXPECT_EQ(mu.total(), 1 / n);
        }
        for (std::size_t j = 0; j < h.head.size(); ++j) {
          auto mu = measure_directed_out(hg, e, j, a);
          EXPECT_EQ(as_map(mu), out_measure_oracle(hg, e, j, a));
          Rational spread(0);
          for (VertexId z : hg.out_neighbors(h.head[j])) spread += mu.at(z);
          EXPECT_EQ(spread, (1 - a) / m);
        }
        EXPECT_EQ(measure_set(hg, e, Side::tail, a).total(), q(1));
        EXPECT_EQ(measure_set(hg, e, Side::head, a).total(), q(1));
      }
    }
  }
}

TEST(WalkProperty, AffineInAlpha) {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 40; ++t) {
    auto inst = gen::directed(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 6)), 6, 3, 4);
    auto hg = Hypergraph<Rational>::directed(inst.n, inst.edges);
    const Rational lambda = q(gen::uniform(rng, 0, 8), 8);
    const Rational a = q(gen::uniform(rng, 0, 8), 8), c = q(gen::uniform(rng, 0, 8), 8);
    const Rational b = lambda * a + (1 - lambda) * c;
    for (EdgeId e = 0; e < hg.edge_count(); ++e)
      for (Side side : {Side::tail, Side::head}) {
        auto ma = measure_set(hg, e, side, a), mc = measure_set(hg, e, side, c), mb = measure_set(hg, e, side, b);
        for (VertexId z = 0; z < inst.n; ++z) EXPECT_EQ(mb.at(z), lambda * ma.at(z) + (1 - lambda) * mc.at(z));
      }
  }
}

TEST(WalkProperty, OrientedPairTotals) {
  std::mt19937_64 rng(304);
  for (int t = 0; t < 60; ++t) {
    auto inst = gen::oriented(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 6)), 4, 3, 3);
    auto hg = Hypergraph<Rational>::oriented(inst.n, inst.edges);
    for (VertexId u = 0; u < inst.n; ++u)
      for (const auto& a : kGrid) {
        auto in = measure_oriented_pair(hg, u, Direction::in, a);
        auto out = measure_oriented_pair(hg, u, Direction::out, a);
        EXPECT_EQ(in.total(), q(1));
        EXPECT_EQ(out.total(), q(1));
        EXPECT_EQ(in.at(u), a);
        for (VertexId z : out.support()) EXPECT_TRUE(z == u || detail::contains(hg.out_neighbors(u), z));
      }
  }
}

TEST(Walk, FloatMeasuresSumToOne) {
  auto hg = fixtures::h4<double>();
  auto mu = measure_undirected(hg, 0, 0.3);
  EXPECT_NEAR(mu.total(), 1.0, 1e-12);
}
