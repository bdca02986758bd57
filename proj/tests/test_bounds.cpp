#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace hypercurv;
using fixtures::q;

namespace {

const BoundVerdict<Rational>& find(const std::vector<BoundVerdict<Rational>>& vs, const std::string& name) {
  for (const auto& v : vs)
    if (v.name == name) return v;
  throw std::runtime_error("no verdict " + name);
}

LlyTable<Rational> table_for(const Hypergraph<Rational>& hg, const DistanceOracle<Rational>& d) {
  const auto variant = hg.flavor() == Flavor::undirected ? LengthVariant::sum : LengthVariant::min;
  return compute_lly_table(hg, d, all_targets(hg), variant);
}

std::size_t count(const std::vector<BoundVerdict<Rational>>& vs, VerdictStatus s) {
  return static_cast<std::size_t>(std::count_if(vs.begin(), vs.end(), [&](const auto& v) { return v.status == s; }));
}

}  // namespace

TEST(Bounds, PairUpperBoundH4) {
  auto hg = fixtures::h4();
  auto d = all_pairs_distances(hg);
  auto vs = check_pair_upper_bound(hg, d, 1, 2, q(1, 2));
  const auto& two_max = find(vs, "pair-2max");
  EXPECT_TRUE(two_max.holds());
  EXPECT_EQ(two_max.lhs, q(3, 4));
  EXPECT_EQ(two_max.rhs, q(1));
  // normalized: 3/2 <= 2
  EXPECT_EQ(two_max.rhs / (1 - q(1, 2)), q(2));
  EXPECT_TRUE(find(vs, "pair-local-max").holds());

  auto at_one = check_pair_upper_bound(hg, d, 1, 2, q(1));
  EXPECT_TRUE(find(at_one, "pair-2max").holds());
  EXPECT_EQ(find(at_one, "pair-2max").lhs, q(0));
  EXPECT_EQ(find(at_one, "pair-2max").rhs, q(0));
}

TEST(Bounds, EdgeUpperBoundH4) {
  auto hg = fixtures::h4();
  auto d = all_pairs_distances(hg);
  auto vs = check_edge_upper_bound(hg, d, 0, q(1, 2), LengthVariant::sum);
  const auto& rough = find(vs, "edge-rough");
  EXPECT_TRUE(rough.holds());
  EXPECT_EQ(rough.rhs / (1 - q(1, 2)), q(2));
  EXPECT_TRUE(find(vs, "edge-sharp").holds());
  EXPECT_TRUE(find(vs, "edge-sandwich-lower").holds());
  EXPECT_TRUE(find(vs, "edge-sandwich-upper").holds());

  // a 2-uniform hyperedge gives the pair bound
  auto e2 = check_edge_upper_bound(hg, d, 1, q(1, 3), LengthVariant::min);
  auto p2 = check_pair_upper_bound(hg, d, 0, 3, q(1, 3));
  EXPECT_EQ(find(e2, "edge-rough").rhs, find(p2, "pair-2max").rhs);
  EXPECT_EQ(find(e2, "edge-rough").lhs, find(p2, "pair-2max").lhs);
}

TEST(Bounds, EdgeBoundRejectsDirectedVariants) {
  auto hg = fixtures::oriented(2, {{{0}, {1}, q(1)}, {{1}, {0}, q(1)}});
  auto d = all_pairs_distances(hg);
  try {
    check_edge_upper_bound(hg, d, 0, q(1, 2), LengthVariant::sum);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedVariant);
  }
  EXPECT_TRUE(find(check_edge_upper_bound(hg, d, 0, q(1, 2), LengthVariant::min), "oriented-edge").holds());
}

TEST(Bounds, DirectedEdgeAtAlphaOne) {
  auto hg = fixtures::cycle3();
  auto d = all_pairs_distances(hg);
  for (EdgeId e = 0; e < 3; ++e) {
    auto c = check_directed_edge_bound(hg, d, e, q(1));
    EXPECT_TRUE(c.verdict.holds());
    EXPECT_EQ(c.verdict.lhs, q(0));
    EXPECT_EQ(c.verdict.rhs, q(0));
    EXPECT_EQ(c.data.m, 1u);
    EXPECT_EQ(c.data.diameter, q(2));
  }
}

TEST(Bounds, DirectedEdgeWithoutFartherNeighbours) {
  // 0 <-> 1: the head vertex's only out-neighbour is the tail itself
  auto hg = fixtures::oriented(2, {{{0}, {1}, q(1)}, {{1}, {0}, q(1)}});
  auto d = all_pairs_distances(hg);
  auto c = check_directed_edge_bound(hg, d, 0, q(1, 2));
  ASSERT_EQ(c.data.heads.size(), 1u);
  const auto& head = c.data.heads[0];
  EXPECT_TRUE(head.partition.farther.empty());
  EXPECT_FALSE(head.partition.farther_gap.has_value());
  EXPECT_EQ(*head.partition.closer_gap, q(1));
  EXPECT_EQ(head.c_estimate, q(1));
  EXPECT_EQ(head.c_exact, q(1));
  EXPECT_TRUE(c.verdict.holds());
}

TEST(Bounds, BonnetMyersH4) {
  auto hg = fixtures::h4();
  auto d = all_pairs_distances(hg);
  auto vs = check_bonnet_myers(hg, d, table_for(hg, d));
  const auto& diam = find(vs, "bm-diameter");
  EXPECT_TRUE(diam.holds());
  EXPECT_EQ(diam.lhs, q(2));
  EXPECT_EQ(diam.rhs, q(4));
  EXPECT_EQ(diam.detail, "kappa0 = 1/2");
  EXPECT_EQ(count(vs, VerdictStatus::violated), 0u);
}

TEST(Bounds, BonnetMyersSkipsNonPositive) {
  // 6-cycle: every adjacent pair has curvature 0
  std::vector<UndirectedHyperedge<Rational>> es;
  for (VertexId i = 0; i < 6; ++i) es.push_back({{std::min<VertexId>(i, (i + 1) % 6), std::max<VertexId>(i, (i + 1) % 6)}, q(1)});
  auto hg = Hypergraph<Rational>::undirected(6, es);
  auto d = all_pairs_distances(hg);
  auto vs = check_bonnet_myers(hg, d, table_for(hg, d));
  EXPECT_EQ(find(vs, "bm-diameter").status, VerdictStatus::not_applicable);
  EXPECT_GT(count(vs, VerdictStatus::not_applicable), 0u);
  EXPECT_EQ(count(vs, VerdictStatus::violated), 0u);
}

TEST(Bounds, OrientedPairBounds) {
  auto hg = fixtures::oriented(2, {{{0}, {1}, q(1)}, {{1}, {0}, q(1)}});
  auto d = all_pairs_distances(hg);
  for (long k = 0; k <= 4; ++k) {
    auto vs = check_pair_bound_oriented(hg, d, 0, 1, q(k, 4));
    for (const auto& v : vs) EXPECT_TRUE(v.holds()) << v.name;
  }
  auto weighted = fixtures::oriented(2, {{{0}, {1}, q(2)}, {{1}, {0}, q(2)}});
  auto dw = all_pairs_distances(weighted);
  try {
    check_pair_bound_oriented(weighted, dw, 0, 1, q(1, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUnitWeights);
  }
  EXPECT_TRUE(check_pair_bound_oriented_weighted(weighted, dw, 0, 1, q(1, 2)).holds());
}

TEST(Bounds, OrientedPairAllNeighboursFarther) {
  auto hg = fixtures::oriented(3, {{{0}, {1, 2}, q(1)}}, true);
  auto d = all_pairs_distances(hg);
  // v = 0 sees 1 and 2 through one hyperedge; from u = 1 the partition has 1 closer, 2 level
  auto vs = check_pair_bound_oriented(hg, d, 1, 0, q(1, 2));
  EXPECT_TRUE(find(vs, "oriented-pair-partition").holds());
  auto path = fixtures::oriented(3, {{{0}, {1}, q(1)}, {{1}, {2}, q(1)}}, true);
  auto dp = all_pairs_distances(path);
  auto p = partition_neighborhood(path, dp, VertexId{1}, VertexId{0});
  EXPECT_TRUE(p.closer.size() == 1 && p.farther.empty());
}

TEST(Bounds, PartitionCorollaryCounterexample) {
  // closer neighbour 1 of v = 0 lies in two out-hyperedges of 0
  auto hg = fixtures::oriented(4, {{{0}, {1, 3}, q(1)}, {{1, 3}, {0}, q(1)}, {{0, 2}, {1}, q(1)}, {{1}, {0, 2}, q(1)}});
  auto d = all_pairs_distances(hg);
  auto vs = check_pair_bound_oriented(hg, d, 2, 0, q(1, 2));
  const auto& counted = find(vs, "oriented-pair-partition");
  EXPECT_TRUE(counted.violated());
  EXPECT_EQ(counted.lhs, q(3, 8));
  EXPECT_EQ(counted.rhs, q(5, 16));
  EXPECT_TRUE(find(vs, "oriented-pair-partition-exact").holds());
  EXPECT_TRUE(find(vs, "oriented-pair-2max").holds());
}

TEST(Bounds, DirectedEstimateCounterexample) {
  auto hg = fixtures::oriented(4, {{{1, 3}, {0, 2}, q(1)}, {{0, 2}, {1, 3}, q(1)}, {{1, 3}, {0}, q(1)},
                                   {{0}, {1, 3}, q(1)}, {{3}, {0}, q(1)}, {{0}, {3}, q(1)}});
  auto d = all_pairs_distances(hg);
  auto c = check_directed_edge_bound(hg, d, 3, q(1, 2));
  bool found = false;
  for (std::size_t j = 0; j < c.data.heads.size(); ++j)
    if (c.data.heads[j].vertex == 3) {
      found = true;
      EXPECT_EQ(c.data.heads[j].c_exact, q(2, 3));
      EXPECT_EQ(c.data.heads[j].c_estimate, q(1, 2));
      EXPECT_TRUE(c.c_checks[j].violated());
    }
  EXPECT_TRUE(found);
  EXPECT_TRUE(c.verdict.holds());
}

TEST(Bounds, VertexCount) {
  // floor(2/kappa0) = 1 leaves the single term 1 + Delta
  EXPECT_EQ(vertex_count_bound(q(3, 2), 5, 2), q(6));
  EXPECT_EQ(vertex_count_bound(q(2), 3, 1), q(4));
  // two layers: 1 + D + D^2 (B/(1+B))(1+B-k)
  EXPECT_EQ(vertex_count_bound(q(1), 2, 1), 1 + 2 + 4 * q(1, 2) * (2 - 1));

  auto pair = fixtures::oriented(2, {{{0}, {1}, q(1)}, {{1}, {0}, q(1)}});
  auto d = all_pairs_distances(pair);
  auto tab = table_for(pair, d);
  auto v = check_vertex_count(pair, tab);
  EXPECT_TRUE(v.holds());
  EXPECT_EQ(v.lhs, q(2));
  EXPECT_EQ(v.detail, "kappa0 = 2");
  EXPECT_EQ(v.rhs, vertex_count_bound(q(2), pair.max_degree(), pair.max_head_size()));

  auto unmet = check_vertex_count(pair, tab, std::optional<Rational>(q(3)));
  EXPECT_EQ(unmet.status, VerdictStatus::not_applicable);
  EXPECT_EQ(unmet.note.rfind("HypothesisNotMet", 0), 0u);
  auto nonpositive = check_vertex_count(pair, tab, std::optional<Rational>(q(0)));
  EXPECT_EQ(nonpositive.status, VerdictStatus::not_applicable);
}

TEST(Bounds, LedgerH4AllHold) {
  auto hg = fixtures::h4();
  auto d = all_pairs_distances(hg);
  auto ledger = bounds_ledger(hg, d);
  EXPECT_GT(ledger.size(), 0u);
  EXPECT_EQ(count(ledger, VerdictStatus::violated), 0u);
  EXPECT_TRUE(find(ledger, "well-transported-propagation").holds());
  // deterministic across thread counts
  LedgerConfig<Rational> cfg;
  cfg.threads = 4;
  auto parallel = bounds_ledger(hg, d, cfg);
  ASSERT_EQ(parallel.size(), ledger.size());
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    EXPECT_EQ(parallel[i].name, ledger[i].name);
    EXPECT_EQ(parallel[i].lhs, ledger[i].lhs);
    EXPECT_EQ(parallel[i].rhs, ledger[i].rhs);
  }
}

TEST(BoundsProperty, UndirectedPairAndEdgeBounds) {
  std::mt19937_64 rng(601);
  const auto grid = default_alpha_grid<Rational>();
  for (int t = 0; t < 500; ++t) {
    auto inst = gen::undirected(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 6)), 4, 4, 4);
    auto hg = Hypergraph<Rational>::undirected(inst.n, inst.edges);
    auto d = all_pairs_distances(hg);
    const auto& a = grid[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(grid.size()) - 1))];
    for (VertexId u = 0; u < inst.n; ++u)
      for (VertexId v = u + 1; v < inst.n; ++v)
        for (const auto& verdict : check_pair_upper_bound(hg, d, u, v, a)) EXPECT_TRUE(verdict.holds()) << verdict.name;
    for (EdgeId e = 0; e < hg.edge_count(); ++e)
      for (auto variant : {LengthVariant::min, LengthVariant::sum, LengthVariant::max})
        for (const auto& verdict : check_edge_upper_bound(hg, d, e, a, variant)) EXPECT_TRUE(verdict.holds()) << verdict.name;
  }
}

TEST(BoundsProperty, DirectedLemma) {
  std::mt19937_64 rng(602);
  for (int t = 0; t < 100; ++t) {
    auto inst = gen::directed(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 7)), 8, 3, t % 2 ? 1 : 4);
    auto hg = Hypergraph<Rational>::directed(inst.n, inst.edges);
    auto d = all_pairs_distances(hg);
    for (EdgeId e = 0; e < hg.edge_count(); ++e)
      for (const auto& a : {q(0), q(1, 2), q(3, 4), q(1)}) EXPECT_TRUE(check_directed_edge_bound(hg, d, e, a).verdict.holds());
  }
}

TEST(BoundsProperty, OrientedTheorems) {
  std::mt19937_64 rng(603);
  int positive = 0;
  for (int t = 0; t < 120; ++t) {
    auto inst = gen::oriented(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 6)), 3, 3, t % 2 ? 1 : 3);
    auto hg = Hypergraph<Rational>::oriented(inst.n, inst.edges);
    auto d = all_pairs_distances(hg);
    for (EdgeId e = 0; e < hg.edge_count(); ++e)
      EXPECT_TRUE(find(check_edge_upper_bound(hg, d, e, q(1, 2), LengthVariant::min), "oriented-edge").holds());
    auto tab = table_for(hg, d);
    for (const auto& v : check_bonnet_myers(hg, d, tab)) EXPECT_NE(v.status, VerdictStatus::violated) << v.name;
    if (!hg.has_unit_weights()) continue;
    auto vc = check_vertex_count(hg, tab);
    if (vc.status == VerdictStatus::not_applicable) continue;
    ++positive;
    EXPECT_TRUE(vc.holds());
    for (const auto& v : check_layer_growth(hg, d, tab)) EXPECT_TRUE(v.holds()) << v.detail;
  }
  EXPECT_GT(positive, 10);
}

TEST(Bounds, FloatLedgerH4) {
  auto hg = fixtures::h4<double>();
  auto d = all_pairs_distances(hg);
  auto ledger = bounds_ledger(hg, d);
  for (const auto& v : ledger) EXPECT_NE(v.status, VerdictStatus::violated) << v.name;
}
