#include <gtest/gtest.h>

#include <random>

#include "designkit/deficiency.hpp"
#include "support.hpp"

using namespace designkit;
using namespace testing_support;

namespace {

// Smallest t with a Hamiltonian g * K_t, by permutation search.
int naive_ham_deficiency(const Graph& g) {
  for (int t = 0;; ++t)
    if (naive_hamiltonian(join(g, static_cast<std::size_t>(t)))) return t;
}

int naive_triangle_deficiency(const Graph& g) {
  const int n = static_cast<int>(g.order());
  for (int t = (3 - n % 3) % 3;; t += 3)
    if (naive_triangle_factor(join(g, static_cast<std::size_t>(t)))) return t;
}

Graph with_edge(const Graph& g, Vertex u, Vertex v) {
  GraphBuilder b(g);
  b.add_edge(u, v);
  return std::move(b).build();
}

Graph two_edges() {
  GraphBuilder b(4);
  b.add_edge(0, 1);
  b.add_edge(2, 3);
  return std::move(b).build();
}

}  // namespace

TEST(HamBound, Examples) {
  const auto a = ham_max_edges(6, 1);
  EXPECT_EQ(a.max_edges, 10);
  EXPECT_EQ(a.regime, Regime::kSmallT);
  EXPECT_FALSE(a.even);
  const auto b = ham_max_edges(6, 3);
  EXPECT_EQ(b.max_edges, 5);
  EXPECT_EQ(b.regime, Regime::kLargeT);
  const auto c = ham_max_edges(6, 2);
  EXPECT_EQ(c.max_edges, 6);
  EXPECT_EQ(c.regime, Regime::kTie);
  EXPECT_TRUE(c.even);
  EXPECT_STREQ(to_string(c.regime), "tie");
}

TEST(HamBound, Errors) {
  EXPECT_THROW(ham_max_edges(6, 0), InputError);
  EXPECT_THROW(ham_max_edges(2, 1), InputError);
  EXPECT_FALSE(ham_max_edges(4, 4).attainable);
  EXPECT_TRUE(ham_max_edges(4, 3).attainable);
}

TEST(HamBound, FormulaByHand) {
  for (int n = 3; n <= 40; ++n)
    for (int t = 1; t < n; ++t) {
      const std::int64_t u = (n + t) % 2 == 0 ? (n + t) / 2 - 1 : (n + t - 1) / 2;
      auto f = [&](std::int64_t i) { return i * (n + t - 1 - i) - i * (i - 1) / 2; };
      ASSERT_EQ(ham_max_edges(n, t).max_edges, n * (n - 1) / 2 - std::min(f(t), f(u)));
    }
}

TEST(HamBound, MatchesEnumerationOnSmallGrid) {
  for (int n = 3; n <= 6; ++n)
    for (int t = 1; t <= 3; ++t) {
      const auto brute = brute_max_edges(n, t, Property::kHamiltonian);
      if (t >= n) {
        EXPECT_FALSE(brute.max_edges) << n << "," << t;
        continue;
      }
      ASSERT_TRUE(brute.max_edges) << n << "," << t;
      EXPECT_EQ(*brute.max_edges, ham_max_edges(n, t).max_edges) << n << "," << t;
      EXPECT_FALSE(naive_hamiltonian(join(brute.witness, static_cast<std::size_t>(t))));
      EXPECT_EQ(brute.witness.edge_count(), *brute.max_edges);
    }
}

TEST(OreBound, Examples) {
  EXPECT_EQ(ore_bound(5), 7);
  EXPECT_EQ(ore_bound(3), 2);
  EXPECT_EQ(ore_bound(10), 37);
  EXPECT_THROW(ore_bound(2), InputError);
}

TEST(OreBound, MatchesEnumerationAtZero) {
  for (int n = 3; n <= 6; ++n) EXPECT_EQ(*brute_max_edges(n, 0, Property::kHamiltonian).max_edges, ore_bound(n));
}

TEST(HamDeficiency, Examples) {
  EXPECT_EQ(ham_deficiency(cycle_graph(5)), 0);
  EXPECT_EQ(ham_deficiency(path_graph(4)), 1);
  EXPECT_EQ(ham_deficiency(empty_graph(4)), 4);
  EXPECT_THROW(ham_deficiency(empty_graph(4), 3), ResourceError);
}

TEST(HamDeficiency, AgreesWithPermutationSearch) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 400; ++trial) {
    const Graph g = random_graph(1 + trial % 6, 0.3, rng);
    ASSERT_EQ(ham_deficiency(g), naive_ham_deficiency(g));
  }
}

TEST(HamDeficiency, AddingAnEdgeNeverHurts) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 8;
    const Graph g = random_graph(n, 0.3, rng);
    const int d = ham_deficiency(g);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!g.adjacent(u, v)) ASSERT_LE(ham_deficiency(with_edge(g, u, v)), d);
  }
}

TEST(PathCoverEquivalence, Examples) {
  EXPECT_TRUE(path_cover_equivalence_check(path_graph(4)));
  EXPECT_TRUE(path_cover_equivalence_check(empty_graph(4)));
  EXPECT_TRUE(path_cover_equivalence_check(two_edges()));
  EXPECT_EQ(ham_deficiency(two_edges()), 2);
  EXPECT_THROW(path_cover_equivalence_check(cycle_graph(5)), InputError);
  EXPECT_THROW(path_cover_equivalence_check(Graph(1)), InputError);
}

TEST(PathCoverEquivalence, AllGraphsOnFiveVertices) {
  for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
    const Graph g = graph_from_mask(5, mask);
    if (naive_hamiltonian(g)) continue;
    ASSERT_EQ(naive_ham_deficiency(g), naive_path_cover(g)) << mask;
    ASSERT_TRUE(path_cover_equivalence_check(g)) << mask;
  }
}

TEST(TriangleBound, Examples) {
  const auto a = triangle_max_edges(8, 1);
  EXPECT_EQ(a.k, 1);
  EXPECT_EQ(a.max_edges, 21);
  const auto b = triangle_max_edges(7, 2);
  EXPECT_EQ(b.k, 2);
  EXPECT_EQ(b.max_edges, 12);
  const auto c = triangle_max_edges(6, 3);
  EXPECT_EQ(c.max_edges, 6);
  EXPECT_TRUE(c.unproven_regime);
  EXPECT_FALSE(triangle_max_edges(2999, 1).unproven_regime);
  EXPECT_THROW(triangle_max_edges(7, 1), InputError);
}

TEST(TriangleBound, EnumerationIsAtLeastTheFormula) {
  // The formula is a lower bound at every size; equality is only claimed for large n.
  for (int n = 2; n <= 6; ++n)
    for (int t = 1; t <= 3; ++t) {
      if ((n + t) % 3 != 0 || (t + 2) / 2 + (t % 2 == 0 ? 1 : 0) > n) continue;
      const auto brute = brute_max_edges(n, t, Property::kTriangleFactor);
      ASSERT_TRUE(brute.max_edges);
      EXPECT_GE(*brute.max_edges, triangle_max_edges(n, t).max_edges) << n << "," << t;
      EXPECT_FALSE(naive_triangle_factor(join(brute.witness, static_cast<std::size_t>(t))));
    }
}

TEST(FactorDeficiency, Examples) {
  EXPECT_EQ(factor_deficiency(Graph::complete(3), 3), 0);
  EXPECT_EQ(factor_deficiency(empty_graph(3), 3), 6);
  EXPECT_EQ(factor_deficiency(cycle_graph(4), 3), 2);
  EXPECT_THROW(factor_deficiency(empty_graph(3), 3, 3), ResourceError);
  EXPECT_THROW(factor_deficiency(empty_graph(3), 1), InputError);
}

TEST(FactorDeficiency, AgreesWithPartitionSearch) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_graph(1 + trial % 7, 0.45, rng);
    ASSERT_EQ(factor_deficiency(g, 3), naive_triangle_deficiency(g));
  }
}

TEST(FactorDeficiency, AddingAnEdgeNeverHurts) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 7;
    const Graph g = random_graph(n, 0.4, rng);
    const int d = factor_deficiency(g, 3);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!g.adjacent(u, v)) ASSERT_LE(factor_deficiency(with_edge(g, u, v), 3), d);
  }
}

TEST(BruteOracle, Examples) {
  const auto a = brute_max_edges(4, 1, Property::kHamiltonian);
  EXPECT_EQ(*a.max_edges, 3);
  EXPECT_EQ(degree_sequence(a.witness).back(), 3);  // K_{1,3}: no other 3-edge graph on 4 vertices has degree 3
  EXPECT_EQ(*brute_max_edges(6, 1, Property::kHamiltonian).max_edges, 10);
  EXPECT_TRUE(brute_max_edges(5, 1, Property::kTriangleFactor).max_edges);
  EXPECT_THROW(brute_max_edges(8, 1, Property::kHamiltonian), ResourceError);
  EXPECT_FALSE(brute_max_edges(3, 3, Property::kHamiltonian).max_edges);
}

TEST(BruteOracle, ThreadsAgree) {
  BruteOptions one, four;
  one.classes = four.classes = true;
  four.threads = 4;
  for (int t = 1; t <= 2; ++t) {
    const auto a = brute_max_edges(6, t, Property::kHamiltonian, one);
    const auto b = brute_max_edges(6, t, Property::kHamiltonian, four);
    EXPECT_EQ(a.max_edges, b.max_edges);
    EXPECT_EQ(a.extremal_classes.size(), b.extremal_classes.size());
  }
}

TEST(BruteOracle, TwoClassesAtTie) {
  BruteOptions opts;
  opts.classes = true;
  EXPECT_EQ(brute_max_edges(6, 2, Property::kHamiltonian, opts).extremal_classes.size(), 2u);
  EXPECT_EQ(brute_max_edges(6, 1, Property::kHamiltonian, opts).extremal_classes.size(), 1u);
}
