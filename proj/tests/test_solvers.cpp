#include <gtest/gtest.h>

#include <random>

#include "designkit/constructions.hpp"
#include "designkit/decomposition.hpp"
#include "designkit/factor.hpp"
#include "designkit/hamilton.hpp"
#include "support.hpp"

using namespace designkit;
using namespace testing_support;

TEST(Hamiltonian, Examples) {
  auto c5 = is_hamiltonian(cycle_graph(5));
  ASSERT_TRUE(c5);
  EXPECT_TRUE(verify(cycle_graph(5), *c5));
  EXPECT_FALSE(is_hamiltonian(star_graph(4)));
  EXPECT_FALSE(is_hamiltonian(join(star_graph(4), 1)));
  EXPECT_FALSE(is_hamiltonian(Graph(0)));
  EXPECT_FALSE(is_hamiltonian(Graph::complete(2)));
  EXPECT_TRUE(is_hamiltonian(Graph::complete(3)));
}

TEST(Hamiltonian, CapacityIsResourceError) {
  EXPECT_THROW(is_hamiltonian(Graph::complete(kMaxHamiltonVertices + 1)), ResourceError);
  EXPECT_NO_THROW(is_hamiltonian(cycle_graph(kMaxHamiltonVertices)));
}

TEST(Hamiltonian, AgreesWithPermutationSearchExhaustively) {
  for (int n = 0; n <= 6; ++n) {
    const std::uint64_t graphs = std::uint64_t{1} << choose2(n);
    for (std::uint64_t mask = 0; mask < graphs; ++mask) {
      const Graph g = graph_from_mask(n, mask);
      const auto cyc = is_hamiltonian(g);
      ASSERT_EQ(cyc.has_value(), naive_hamiltonian(g)) << "n=" << n << " mask=" << mask;
      if (cyc) ASSERT_TRUE(verify(g, *cyc));
    }
  }
}

TEST(Hamiltonian, AgreesWithPermutationSearchOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 7 + trial % 2;
    const Graph g = random_graph(n, 0.25 + 0.5 * (trial % 5) / 4.0, rng);
    const auto cyc = is_hamiltonian(g);
    ASSERT_EQ(cyc.has_value(), naive_hamiltonian(g));
    if (cyc) ASSERT_TRUE(verify(g, *cyc));
  }
}

TEST(Chvatal, Examples) {
  EXPECT_TRUE(chvatal_sufficient(Graph::complete(5)));
  EXPECT_FALSE(chvatal_sufficient(cycle_graph(6)));
  EXPECT_TRUE(chvatal_sufficient(join(empty_graph(3), 3)));
  EXPECT_THROW(chvatal_sufficient(path_graph(2)), InputError);
}

TEST(Chvatal, ImpliesHamiltonianExhaustively) {
  for (int n = 3; n <= 7; ++n) {
    const std::uint64_t graphs = std::uint64_t{1} << choose2(n);
    for (std::uint64_t mask = 0; mask < graphs; ++mask) {
      const Graph g = graph_from_mask(n, mask);
      if (chvatal_sufficient(g)) ASSERT_TRUE(is_hamiltonian(g)) << "n=" << n << " mask=" << mask;
    }
  }
}

TEST(Chvatal, ImpliesHamiltonianOnRandomGraphs) {
  std::mt19937_64 rng(99);
  int fired = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 8 + trial % 5;
    const Graph g = random_graph(n, 0.55 + 0.1 * (trial % 4), rng);
    if (!chvatal_sufficient(g)) continue;
    ++fired;
    ASSERT_TRUE(is_hamiltonian(g));
  }
  EXPECT_GT(fired, 100);
}

TEST(PathCover, Examples) {
  EXPECT_EQ(path_cover_number(path_graph(4)).mu, 1);
  EXPECT_EQ(path_cover_number(empty_graph(4)).mu, 4);
  const auto star = path_cover_number(star_graph(4));
  EXPECT_EQ(star.mu, 2);
  EXPECT_TRUE(verify(star_graph(4), star.cover));
  EXPECT_EQ(star.cover.paths.size(), 2u);
  EXPECT_THROW(path_cover_number(Graph(0)), InputError);
  EXPECT_THROW(path_cover_number(Graph(kMaxPathCoverVertices + 1)), ResourceError);
}

TEST(PathCover, AgreesWithPermutationSearch) {
  for (int n = 1; n <= 6; ++n) {
    const std::uint64_t graphs = std::uint64_t{1} << choose2(n);
    for (std::uint64_t mask = 0; mask < graphs; mask += (n == 6 ? 7 : 1)) {
      const Graph g = graph_from_mask(n, mask);
      const auto pc = path_cover_number(g);
      ASSERT_EQ(pc.mu, naive_path_cover(g));
      ASSERT_EQ(static_cast<int>(pc.cover.paths.size()), pc.mu);
      ASSERT_TRUE(verify(g, pc.cover));
    }
  }
}

TEST(PathCover, SinglePathIffHamiltonianPath) {
  // A Hamiltonian path in g is a Hamiltonian cycle in g * K_1.
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const Graph g = random_graph(2 + trial % 8, 0.35, rng);
    EXPECT_EQ(path_cover_number(g).mu == 1, is_hamiltonian(join(g, 1)).has_value());
  }
}

TEST(Factor, Examples) {
  auto k6 = find_kk_factor(Graph::complete(6), 3);
  ASSERT_TRUE(k6);
  EXPECT_EQ(k6->cliques.size(), 2u);
  const Graph c4k2 = join(cycle_graph(4), 2);
  auto f = find_kk_factor(c4k2, 3);
  ASSERT_TRUE(f);
  EXPECT_TRUE(verify(c4k2, *f));
  EXPECT_FALSE(find_kk_factor(Graph::complete(5), 3));
  EXPECT_FALSE(verify(Graph::complete(5), Factor{3, {}}));
  EXPECT_THROW(find_kk_factor(Graph::complete(4), 1), InputError);
}

TEST(Factor, PerfectMatchingWhenKIsTwo) {
  EXPECT_TRUE(find_kk_factor(path_graph(4), 2));
  EXPECT_FALSE(find_kk_factor(star_graph(4), 2));
}

TEST(Factor, TrianglesAgreeWithPartitionSearchExhaustively) {
  for (int n : {3, 6}) {
    const std::uint64_t graphs = std::uint64_t{1} << choose2(n);
    for (std::uint64_t mask = 0; mask < graphs; ++mask) {
      const Graph g = graph_from_mask(n, mask);
      const auto f = find_kk_factor(g, 3);
      ASSERT_EQ(f.has_value(), naive_triangle_factor(g));
      if (f) ASSERT_TRUE(verify(g, *f));
    }
  }
}

TEST(Factor, TrianglesAgreeWithPartitionSearchOnRandomGraphs) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10000; ++trial) {
    const Graph g = random_graph(trial % 2 ? 9 : 6, 0.4 + 0.1 * (trial % 5), rng);
    const auto f = find_kk_factor(g, 3);
    ASSERT_EQ(f.has_value(), naive_triangle_factor(g));
    if (f) ASSERT_TRUE(verify(g, *f));
  }
}

TEST(MinDegreeCondition, Examples) {
  EXPECT_TRUE(hs_condition(Graph::complete(6), 3));
  EXPECT_FALSE(hs_condition(cycle_graph(6), 3));
  GraphBuilder b(Graph::complete(9));
  for (int i = 0; i < 8; i += 2) b.remove_edge(i, i + 1);
  const Graph g = std::move(b).build();
  EXPECT_EQ(g.min_degree(), 7);
  EXPECT_TRUE(hs_condition(g, 3));
  EXPECT_THROW(hs_condition(Graph::complete(7), 3), InputError);
}

TEST(MinDegreeCondition, ImpliesFactor) {
  std::mt19937_64 rng(17);
  int fired = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int k = 2 + trial % 3;
    const int n = k * (2 + trial % 4);
    const Graph g = random_graph(n, 0.75 + 0.05 * (trial % 5), rng);
    if (!hs_condition(g, k)) continue;
    ++fired;
    const auto f = find_kk_factor(g, k);
    ASSERT_TRUE(f);
    ASSERT_TRUE(verify(g, *f));
  }
  EXPECT_GT(fired, 100);
}

TEST(Fischer, Examples) {
  EXPECT_TRUE(fischer_condition(MultipartiteGraph::complete(3, 3), 3));
  {
    GraphBuilder b(complete_multipartite_graph(3, 3));
    b.remove_edge(0, 3);
    const MultipartiteGraph mg(std::move(b).build(), MultipartiteGraph::complete(3, 3).parts());
    EXPECT_FALSE(fischer_condition(mg, 3));
  }
  {
    GraphBuilder b(complete_multipartite_graph(3, 4));
    for (int i = 0; i < 4; ++i) b.remove_edge(i, 4 + i);
    const MultipartiteGraph mg(std::move(b).build(), MultipartiteGraph::complete(3, 4).parts());
    EXPECT_TRUE(fischer_condition(mg, 3));
  }
  EXPECT_THROW(fischer_condition(MultipartiteGraph(Graph(4), {{0, 1, 2}, {3}}), 2), InputError);
}

TEST(Fischer, ImpliesMultipartiteFactor) {
  std::mt19937_64 rng(5);
  int fired = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const int k = 3 + trial % 2;
    const int size = 2 + trial % 3;
    const auto host = MultipartiteGraph::complete(static_cast<std::size_t>(k), static_cast<std::size_t>(size));
    std::bernoulli_distribution drop(0.08);
    GraphBuilder b(host.graph());
    for (const auto& [u, v] : host.graph().edges())
      if (drop(rng)) b.remove_edge(u, v);
    const MultipartiteGraph mg(std::move(b).build(), host.parts());
    if (!fischer_condition(mg, k)) continue;
    ++fired;
    const auto f = find_kk_factor(mg.graph(), k);
    ASSERT_TRUE(f);
    ASSERT_TRUE(verify(mg.graph(), *f));
  }
  EXPECT_GT(fired, 100);
}

TEST(Decomposition, Examples) {
  auto k7 = find_kk_decomposition(Graph::complete(7), 3);
  ASSERT_TRUE(k7);
  EXPECT_EQ(k7->cliques.size(), 7u);
  EXPECT_TRUE(verify(Graph::complete(7), *k7));
  EXPECT_FALSE(find_kk_decomposition(Graph::complete(6), 3));
  auto k9 = find_kk_decomposition(Graph::complete(9), 3);
  ASSERT_TRUE(k9);
  EXPECT_EQ(k9->cliques.size(), 12u);
  EXPECT_TRUE(verify(Graph::complete(9), *k9));
  EXPECT_THROW(find_kk_decomposition(Graph::complete(4), 2), InputError);
}

TEST(Decomposition, BothBranchRulesProduceValidCertificates) {
  SolverOptions first;
  first.rule = BranchRule::kFirstItem;
  for (int n : {7, 9, 13}) {
    const Graph g = Graph::complete(static_cast<std::size_t>(n));
    auto a = find_kk_decomposition(g, 3, first);
    auto b = find_kk_decomposition(g, 3);
    ASSERT_TRUE(a && b);
    EXPECT_TRUE(verify(g, *a));
    EXPECT_TRUE(verify(g, *b));
  }
  auto k4 = find_kk_decomposition(Graph::complete(13), 4);
  ASSERT_TRUE(k4);
  EXPECT_EQ(k4->cliques.size(), 13u);
}

TEST(Decomposition, IsDeterministic) {
  const Graph g = Graph::complete(15);
  EXPECT_EQ(find_kk_decomposition(g, 3)->cliques, find_kk_decomposition(g, 3)->cliques);
}

TEST(Decomposition, NodeBudgetIsResourceError) {
  SolverOptions tight;
  tight.budget.nodes = 3;
  EXPECT_THROW(find_kk_decomposition(Graph::complete(15), 3, tight), ResourceError);
}

TEST(Decomposition, RandomCertificatesVerify) {
  std::mt19937_64 rng(3);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_graph(9, 0.7, rng);
    const auto d = find_kk_decomposition(g, 3);
    if (!d) continue;
    ++found;
    ASSERT_TRUE(verify(g, *d));
  }
  SUCCEED() << found << " decomposable";
}

TEST(Decomposition, ContainingKeepsFixedCliquesWhole) {
  // K_4s of K_{3,3,3,3}; each fixed partial clique must sit inside one block.
  const Graph host = complete_multipartite_graph(4, 3);
  const std::vector<Clique> fixed{{0, 3, 6}, {1, 4}};
  const auto d = find_kk_decomposition_containing(host, 4, fixed);
  ASSERT_TRUE(d);
  EXPECT_TRUE(verify(host, *d));
  for (const auto& a : fixed) {
    bool inside = false;
    for (const auto& q : d->cliques) inside |= std::includes(q.begin(), q.end(), a.begin(), a.end());
    EXPECT_TRUE(inside);
  }
}

TEST(NearFactorCover, CompleteGraphWithSTriangleRemoved) {
  const Graph g = Graph::complete(9);
  const RemovedEdgeSet r(9, {{0, 1}, {0, 2}, {1, 2}});
  const auto c = near_factor_cover(g, {0, 1, 2}, {3, 4, 5, 6, 7, 8}, 3, r);
  EXPECT_TRUE(c.uncovered.empty());
  ASSERT_EQ(c.cliques.size(), 3u);
  const Graph h = r.remove_from(g);
  EXPECT_TRUE(verify(h, Factor{3, c.cliques}));
  for (const auto& q : c.cliques) {
    EXPECT_EQ(std::count_if(q.begin(), q.end(), [](Vertex v) { return v < 3; }), 1);
  }
}

TEST(NearFactorCover, PlainFactorWithoutRemovals) {
  const Graph g = Graph::complete(12);
  const auto c = near_factor_cover(g, {0, 1, 2, 3}, {4, 5, 6, 7, 8, 9, 10, 11}, 4, RemovedEdgeSet(12, {}));
  EXPECT_TRUE(c.uncovered.empty());
  EXPECT_TRUE(verify(g, Factor{4, c.cliques}));
}

TEST(NearFactorCover, LeavesAtMostKMinusOneTVertices) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3;
    const int s = 2 + trial % 3, t = 4 + trial % 5;
    const Graph g = Graph::complete(static_cast<std::size_t>(s + t));
    std::vector<Edge> removed;
    std::bernoulli_distribution coin(0.5);
    for (int u = 0; u < s; ++u)
      for (int v = u + 1; v < s; ++v)
        if (coin(rng)) removed.emplace_back(u, v);
    std::vector<Vertex> ss, ts;
    for (int v = 0; v < s; ++v) ss.push_back(v);
    for (int v = s; v < s + t; ++v) ts.push_back(v);
    try {
      const auto c = near_factor_cover(g, ss, ts, k, RemovedEdgeSet(g.order(), removed));
      ASSERT_EQ(c.uncovered.size(), static_cast<std::size_t>((s + t) % k));
      for (Vertex v : c.uncovered) EXPECT_GE(v, s);
      ASSERT_TRUE(detail::verify_cliques(RemovedEdgeSet(g.order(), removed).remove_from(g), k, c.cliques));
    } catch (const InfeasibleError&) {
      // Only possible when the S-vertices cannot all find T-partners.
      EXPECT_LT(t, 2 * s);
    }
  }
}

TEST(NearFactorCover, SharpnessShapeIsInfeasible) {
  for (auto [k, r] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 1}}) {
    const auto inst = lemma31_sharpness(k, r);
    EXPECT_THROW(near_factor_cover(inst.g, inst.s_set, inst.t_set, k, inst.removed), InfeasibleError);
  }
}

TEST(NearFactorCover, RejectsRemovedEdgesOutsideS) {
  const Graph g = Graph::complete(6);
  EXPECT_THROW(near_factor_cover(g, {0, 1}, {2, 3, 4, 5}, 3, RemovedEdgeSet(6, {{0, 2}})), InputError);
  EXPECT_THROW(near_factor_cover(g, {0, 1}, {1, 2, 3, 4, 5}, 3, RemovedEdgeSet(6, {})), InputError);
}

TEST(MultipartiteFactor, Examples) {
  const auto k333 = MultipartiteGraph::complete(3, 3);
  std::vector<PartSplit> splits{{{0}, {1, 2}}, {{3}, {4, 5}}, {{6}, {7, 8}}};
  const auto f = multipartite_factor(k333, splits, RemovedEdgeSet(9, {}));
  EXPECT_EQ(f.factor.cliques.size(), 3u);
  EXPECT_TRUE(verify(k333.graph(), f.factor));

  const auto k444 = MultipartiteGraph::complete(3, 4);
  std::vector<PartSplit> s4{{{0, 1}, {2, 3}}, {{4, 5}, {6, 7}}, {{8, 9}, {10, 11}}};
  const RemovedEdgeSet one(12, {{0, 4}});
  const auto g = multipartite_factor(k444, s4, one);
  EXPECT_TRUE(verify(one.remove_from(k444.graph()), g.factor));
}

TEST(MultipartiteFactor, SharpnessShapeIsInfeasible) {
  for (auto [k, m] : {std::pair{3, 1}, std::pair{3, 4}, std::pair{4, 1}}) {
    const auto inst = lemma42_sharpness(k, m);
    EXPECT_THROW(multipartite_factor(inst.mg, inst.splits, inst.removed), InfeasibleError);
  }
}

TEST(MultipartiteFactor, RandomRemovalsGiveVerifiedFactorsOrExactInfeasibility) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3, size = 4;
    const auto mg = MultipartiteGraph::complete(k, size);
    std::vector<PartSplit> splits(k);
    for (int p = 0; p < k; ++p)
      for (int i = 0; i < size; ++i) (i < 2 ? splits[p].s : splits[p].t).push_back(p * size + i);
    std::vector<Edge> removed;
    std::bernoulli_distribution coin(0.3);
    for (int p = 0; p < k; ++p)
      for (int q = p + 1; q < k; ++q)
        for (Vertex u : splits[p].s)
          for (Vertex v : splits[q].s)
            if (coin(rng)) removed.emplace_back(u, v);
    const RemovedEdgeSet rs(mg.graph().order(), removed);
    const Graph h = rs.remove_from(mg.graph());
    try {
      const auto f = multipartite_factor(mg, splits, rs);
      ASSERT_TRUE(verify(h, f.factor));
    } catch (const InfeasibleError&) {
      ASSERT_FALSE(find_kk_factor(h, k));
    }
  }
}

TEST(Sqrt, CeilingsAreExact) {
  for (std::int64_t x = 0; x < 5000; ++x) {
    const std::int64_t c = ceil_sqrt(x);
    ASSERT_GE(c * c, x);
    ASSERT_TRUE(c == 0 || (c - 1) * (c - 1) < x);
    const std::int64_t f = floor_sqrt(x);
    ASSERT_LE(f * f, x);
    ASSERT_GT((f + 1) * (f + 1), x);
  }
  EXPECT_EQ(ceil_scaled_sqrt(6, 1), 6);
  EXPECT_EQ(ceil_scaled_sqrt(2, 2), 3);
}
