#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ramanujan/constructions.hpp"
#include "ramanujan/errors.hpp"
#include "ramanujan/graph.hpp"
#include "ramanujan/groups.hpp"
#include "ramanujan/patterns.hpp"
#include "ramanujan/tree_m.hpp"
#include "ramanujan/tree_walk.hpp"

using namespace ramanujan;

TEST(Validate, AcceptsHalfLoopsAndLoopPairs) {
  std::vector<DirectedEdge> edges{{0, 0, 0}, {0, 0, 2}, {0, 0, 1}};
  auto rep = validate(1, edges);
  ASSERT_TRUE(rep.ok);
  EXPECT_EQ(rep.degrees[0], 3u);
  EXPECT_EQ(rep.regular_degree, 3u);
}

TEST(Validate, RejectsBrokenInvolution) {
  std::vector<DirectedEdge> edges{{0, 1, 1}, {1, 0, 1}};
  auto rep = validate(2, edges);
  EXPECT_FALSE(rep.ok);
  ASSERT_TRUE(rep.offending_edge.has_value());
  EXPECT_THROW(SerreGraph(2, edges), StructuralError);
}

TEST(Validate, RejectsSelfInverseNonLoop) {
  std::vector<DirectedEdge> edges{{0, 1, 0}};
  EXPECT_FALSE(validate(2, edges).ok);
}

TEST(Validate, RejectsMismatchedEndpoints) {
  std::vector<DirectedEdge> edges{{0, 1, 1}, {2, 0, 0}};
  EXPECT_FALSE(validate(3, edges).ok);
}

TEST(Graph, OutEdgesInIdOrder) {
  GraphBuilder b(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_half_loop(1);
  auto g = std::move(b).build("p3");
  auto out = g.out_edges(1);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end()));
  EXPECT_EQ(g.degree(1), 3u);
  EXPECT_FALSE(g.regular_degree().has_value());
  EXPECT_EQ(g.max_degree(), 3u);
}

TEST(Graph, RegularizeWithHalfLoops) {
  auto g = add_half_loops_to_regularize(path_graph(4), 3);
  EXPECT_EQ(g.regular_degree(), 3u);
  EXPECT_EQ(g.edge_count(), 6u + 2 * 2 + 2 * 1);
  EXPECT_THROW(add_half_loops_to_regularize(complete_graph(5), 3), PreconditionError);
}

TEST(Graph, SplitLoops) {
  auto g = split_loops_into_half_loops(rose(2));
  EXPECT_EQ(g.regular_degree(), 4u);
  for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_TRUE(g.is_half_loop(e));
}

TEST(Graph, ComponentsAndBipartiteness) {
  auto g = disjoint_union(cycle_graph(6), complete_graph(4));
  auto c = connected_components(g);
  ASSERT_EQ(c.count(), 2u);
  EXPECT_TRUE(c.bipartite[c.component_of[0]]);
  EXPECT_FALSE(c.bipartite[c.component_of[6]]);
  auto h = connected_components(half_loop_bouquet(3));
  EXPECT_FALSE(h.bipartite[0]);
}

TEST(Graph, BfsDistances) {
  auto d = bfs_distances(cycle_graph(7), 0);
  EXPECT_EQ(d[3], 3u);
  EXPECT_EQ(d[4], 3u);
  auto u = bfs_distances(disjoint_union(path_graph(2), path_graph(2)), 0);
  EXPECT_EQ(u[2], SIZE_MAX);
}

TEST(Sgf, RoundTrip) {
  auto g = disjoint_union(petersen_graph(), rose(1));
  std::stringstream ss;
  write_sgf(ss, g);
  auto h = read_sgf(ss);
  EXPECT_EQ(g, h);
}

TEST(Sgf, ParseErrorsCarryLineNumbers) {
  std::istringstream bad("sgf 1 2 2\ne 0 0 1 1\ne 0 1 0 0\n");
  try {
    read_sgf(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream junk("sgf 1 1 1\ne 0 0 0 0 extra\n");
  EXPECT_THROW(read_sgf(junk), ParseError);
  std::istringstream missing("sgf 1 2 2\ne 0 0 1 1\n");
  EXPECT_THROW(read_sgf(missing), ParseError);
  std::istringstream involution("sgf 1 2 2\ne 0 0 1 0\ne 1 1 0 0\n");
  EXPECT_THROW(read_sgf(involution), StructuralError);
}

TEST(Constructions, Degrees) {
  EXPECT_EQ(complete_graph(5).regular_degree(), 4u);
  EXPECT_EQ(petersen_graph().regular_degree(), 3u);
  EXPECT_EQ(rose(3).regular_degree(), 6u);
  EXPECT_EQ(half_loop_bouquet(5).regular_degree(), 5u);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = configuration_model(3, 50, seed);
    EXPECT_EQ(g.regular_degree(), 3u);
    EXPECT_EQ(g.vertex_count(), 50u);
  }
  EXPECT_THROW(configuration_model(3, 5, 0), PreconditionError);
  auto t = planted_triangles(4, 60, 10, 3);
  EXPECT_EQ(t.regular_degree(), 4u);
}

TEST(Constructions, ConfigurationModelIsDeterministic) {
  EXPECT_EQ(configuration_model(4, 30, 11), configuration_model(4, 30, 11));
  EXPECT_FALSE(configuration_model(4, 30, 11) == configuration_model(4, 30, 12));
}

TEST(Constructions, BoundedDegreeGraphs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = random_bounded_degree_graph(30, 4, 15, seed);
    EXPECT_LE(g.max_degree(), 4u);
    EXPECT_EQ(connected_components(g).count(), 1u);
  }
}

TEST(Constructions, TreeBallSizes) {
  auto t = regular_tree_ball(3, 4);
  EXPECT_EQ(t.graph.vertex_count(), 1u + 3 + 6 + 12 + 24);
  EXPECT_TRUE(is_loop_free_tree(t.graph));
}

TEST(Constructions, FreeProductBallHasTriangles) {
  auto b = free_product_ball({3, 2}, 6);
  EXPECT_EQ(b.graph.degree(b.root), 3u);
  auto p = ball(b, 1);
  EXPECT_FALSE(p.is_tree);
}

TEST(Patterns, IsomorphicBallsShareCanonicalForm) {
  auto g = configuration_model(3, 40, 5);
  std::vector<VertexId> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::vector<DirectedEdge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.source], perm[e.target], e.inverse});
  SerreGraph h(g.vertex_count(), edges);
  for (VertexId v = 0; v < 10; ++v)
    for (std::size_t r = 1; r <= 3; ++r)
      EXPECT_EQ(ball(g, v, r).canonical, ball(h, perm[v], r).canonical);
}

TEST(Patterns, DistinguishesLoopKinds) {
  auto a = ball(half_loop_bouquet(2), 0, 1);
  auto b = ball(rose(1), 0, 1);
  EXPECT_NE(a.canonical, b.canonical);
  EXPECT_FALSE(a.is_tree);
  EXPECT_FALSE(b.is_tree);
}

TEST(Patterns, RootMatters) {
  auto p = path_graph(3);
  EXPECT_NE(canonical_form(p, 0), canonical_form(p, 1));
  EXPECT_EQ(canonical_form(p, 0), canonical_form(p, 2));
}

TEST(Patterns, DistinguishesCycleLengths) {
  EXPECT_NE(canonical_form(cycle_graph(6), 0),
            canonical_form(disjoint_union(cycle_graph(3), cycle_graph(3)), 0));
  auto k33 = [] {
    GraphBuilder b(6);
    for (VertexId i = 0; i < 3; ++i)
      for (VertexId j = 3; j < 6; ++j) b.add_edge(i, j);
    return std::move(b).build();
  }();
  auto prism = [] {
    GraphBuilder b(6);
    for (VertexId i = 0; i < 3; ++i) {
      b.add_edge(i, (i + 1) % 3);
      b.add_edge(3 + i, 3 + (i + 1) % 3);
      b.add_edge(i, 3 + i);
    }
    return std::move(b).build();
  }();
  EXPECT_NE(canonical_form(k33, 0), canonical_form(prism, 0));
}

TEST(Patterns, PetersenVertexTransitive) {
  auto g = petersen_graph();
  auto c0 = canonical_form(g, 0);
  for (VertexId v = 1; v < 10; ++v) EXPECT_EQ(canonical_form(g, v), c0);
}

TEST(Patterns, TreeBallIsTree) {
  auto t = regular_tree_ball(4, 3);
  auto p = ball(t, 2);
  EXPECT_TRUE(p.is_tree);
  EXPECT_EQ(p.rooted.graph.vertex_count(), 1u + 4 + 12);
}

TEST(Groups, CayleyGraphsAreRegular) {
  for (auto grp : {symmetric_group(4), cyclic_group(7), klein_four_group(), dihedral_group(5),
                   alternating_group_5()}) {
    auto g = cayley_graph(grp);
    EXPECT_EQ(g.vertex_count(), grp.order);
    EXPECT_EQ(g.regular_degree(), grp.generator_count());
    EXPECT_EQ(connected_components(g).count(), 1u);
  }
  EXPECT_EQ(alternating_group_5().order, 60u);
  EXPECT_EQ(symmetric_group(4).order, 24u);
}

TEST(Groups, NonGeneratingSetRejected) {
  EXPECT_THROW(group_from_permutations({{1, 2, 0}}, "rotation"), PreconditionError);
}

TEST(Groups, SchreierQuotientCovers) {
  auto grp = symmetric_group(4);
  auto q = schreier_quotient(grp, 0);
  EXPECT_TRUE(q.covering_verified);
  EXPECT_TRUE(q.loop_at_identity);
  EXPECT_EQ(q.subgroup_order, 2u);
  EXPECT_EQ(q.quotient.vertex_count(), 12u);
  EXPECT_EQ(q.quotient.regular_degree(), grp.generator_count());
}

TEST(Groups, CoveringCheckRejectsBadMap) {
  auto grp = symmetric_group(4);
  auto cay = cayley_graph(grp);
  auto q = schreier_quotient(grp, 0);
  EXPECT_TRUE(verify_covering(cay, q.quotient, q.coset_of, grp.generator_count()));
  std::vector<VertexId> bad(grp.order, 0);
  EXPECT_FALSE(verify_covering(cay, q.quotient, bad, grp.generator_count()));
}

namespace {

// Closed walks at the root of a finite pattern, counted directly.
std::vector<mpz_class> brute_returns(const SerreGraph& g, VertexId root, std::size_t nmax) {
  std::vector<mpz_class> cur(g.vertex_count(), 0), out;
  cur[root] = 1;
  out.push_back(1);
  for (std::size_t n = 1; n <= nmax; ++n) {
    std::vector<mpz_class> next(g.vertex_count(), 0);
    for (const auto& e : g.edges()) next[e.target] += cur[e.source];
    cur = std::move(next);
    out.push_back(cur[root]);
  }
  return out;
}

}  // namespace

TEST(TreeM, ReturnCountsMatchExplicitBall) {
  auto g = random_bounded_degree_graph(8, 3, 4, 2);
  const std::size_t m = 4, nmax = 10;
  auto lumped = tree_m_return_counts(g, m, 0, nmax);
  auto b = tree_m_ball(g, m, 0, nmax / 2 + 1);
  auto direct = brute_returns(b.pattern.rooted.graph, 0, nmax);
  for (std::size_t n = 0; n <= nmax; ++n) EXPECT_EQ(lumped[n], direct[n]) << n;
}

TEST(TreeM, BallDegrees) {
  auto g = path_graph(3);
  auto b = tree_m_ball(g, 3, 1, 3);
  const auto& pg = b.pattern.rooted.graph;
  auto dist = bfs_distances(pg, 0);
  for (VertexId v = 0; v < pg.vertex_count(); ++v)
    if (dist[v] < 3) EXPECT_EQ(pg.degree(v), 3u);
  EXPECT_THROW(tree_m_ball(complete_graph(5), 3, 0, 2), PreconditionError);
}

TEST(TreeM, TreeBaseGivesRegularTree) {
  // Tree_m of a single vertex is T_m.
  GraphBuilder b(1);
  auto g = std::move(b).build();
  auto c = tree_m_return_counts(g, 3, 0, 12);
  TreeWalkTables t(3, 12);
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(c[n], t.count(n, 0));
}
