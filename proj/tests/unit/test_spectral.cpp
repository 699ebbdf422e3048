#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ramanujan/constructions.hpp"
#include "ramanujan/errors.hpp"
#include "ramanujan/groups.hpp"
#include "ramanujan/linalg.hpp"
#include "ramanujan/random.hpp"
#include "ramanujan/spectral.hpp"
#include "ramanujan/tree_walk.hpp"

using namespace ramanujan;

namespace {

std::size_t multiplicity(const SpectralSummary& s, double value) {
  for (auto [v, m] : s.distinct)
    if (std::fabs(v - value) < 1e-8) return m;
  return 0;
}

}  // namespace

TEST(Linalg, TridiagonalKnownSpectrum) {
  // Path Laplacian-like matrix with eigenvalues 2 cos(pi j / (n+1)).
  const std::size_t n = 12;
  std::vector<double> diag(n, 0.0), off(n - 1, 1.0);
  DenseMatrix vec;
  auto ev = tridiagonal_eigen(diag, off, &vec);
  for (std::size_t j = 0; j < n; ++j)
    EXPECT_NEAR(ev[j], 2 * std::cos(M_PI * static_cast<double>(n - j) / (n + 1)), 1e-13);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0;
    for (std::size_t k = 0; k < n; ++k) norm += vec(i, k) * vec(i, k);
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

TEST(Linalg, DenseValuesAndVectorsAgree) {
  const std::size_t n = 40;
  DenseMatrix a(n);
  auto rng = make_stream(3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = uniform01(rng) - 0.5;
  auto vals = symmetric_eigenvalues(a);
  auto sys = symmetric_eigensystem(a);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(vals[i], sys.values[i], 1e-12);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a(r, k) * sys.vectors(i, k);
      EXPECT_NEAR(s, sys.values[i] * sys.vectors(i, r), 1e-11);
    }
  }
  double trace = 0, sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    trace += a(i, i);
    sum += vals[i];
  }
  EXPECT_NEAR(trace, sum, 1e-12);
}

TEST(Linalg, LanczosMatchesDense) {
  auto g = configuration_model(3, 300, 4);
  auto dense = markov_spectrum(g);
  auto lanczos = markov_spectrum(g, SpectrumOptions{100, 0, 1e-8});
  EXPECT_EQ(lanczos.method, "lanczos");
  EXPECT_NEAR(lanczos.rho, dense.rho, 1e-9);
}

TEST(MarkovSpectrum, CompleteGraph) {
  auto s = markov_spectrum(complete_graph(4));
  EXPECT_NEAR(s.rho, 1.0 / 3, 1e-12);
  EXPECT_TRUE(s.ramanujan);
  EXPECT_EQ(multiplicity(s, -1.0 / 3), 3u);
  EXPECT_EQ(multiplicity(s, 1.0), 1u);
  EXPECT_LT(s.residual, 1e-10);
}

TEST(MarkovSpectrum, Petersen) {
  auto s = markov_spectrum(petersen_graph());
  EXPECT_EQ(multiplicity(s, 1.0 / 3), 5u);
  EXPECT_EQ(multiplicity(s, -2.0 / 3), 4u);
  EXPECT_NEAR(s.rho, 2.0 / 3, 1e-12);
  EXPECT_TRUE(s.ramanujan);
}

TEST(MarkovSpectrum, BipartiteCycleUsesDistinctValues) {
  auto s = markov_spectrum(cycle_graph(6));
  EXPECT_TRUE(s.is_bipartite);
  EXPECT_NEAR(s.rho, 0.5, 1e-12);
  EXPECT_EQ(multiplicity(s, -1.0), 1u);
  EXPECT_EQ(multiplicity(s, 0.5), 2u);
}

TEST(MarkovSpectrum, ComponentsGiveMultipleOnes) {
  auto s = markov_spectrum(disjoint_union(complete_graph(4), complete_graph(4)));
  EXPECT_EQ(multiplicity(s, 1.0), 2u);
  EXPECT_EQ(s.components, 2u);
  std::size_t total = 0;
  for (auto [v, m] : s.distinct) total += m;
  EXPECT_EQ(total, 8u);
}

TEST(MarkovSpectrum, LoopsOnDiagonal) {
  auto s = markov_spectrum(half_loop_bouquet(3));
  ASSERT_EQ(s.eigenvalues.size(), 1u);
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-15);
  EXPECT_EQ(s.rho, 0.0);
  auto m = markov_matrix(rose(2));
  EXPECT_NEAR(m(0, 0), 1.0, 1e-15);
}

TEST(MarkovSpectrum, RejectsIrregular) {
  EXPECT_THROW(markov_spectrum(path_graph(3)), PreconditionError);
}

TEST(MarkovSpectrum, LargeGraphsHaveSpectralGapBound) {
  // |G| >= 8d implies rho >= 1/(d-1).
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto g = configuration_model(4, 40, seed);
    EXPECT_GE(markov_spectrum(g).rho, 1.0 / 3);
  }
}

TEST(SpectralMeasure, MomentsAreReturnProbabilities) {
  for (const auto& g : {petersen_graph(), configuration_model(3, 30, 1), complete_graph(5),
                        cycle_graph(9)}) {
    auto rootless = spectral_measure(g);
    for (VertexId v : {0u, 3u}) {
      auto rooted = spectral_measure(g, v);
      auto p = walk_return_probabilities(g, v, 20);
      for (std::size_t k = 0; k <= 20; ++k) EXPECT_NEAR(rooted.moment(k), p[k].get_d(), 1e-8);
    }
    for (std::size_t k = 0; k <= 20; ++k) {
      double avg = 0;
      for (VertexId v = 0; v < g.vertex_count(); ++v) avg += walk_return_probabilities(g, v, k)[k].get_d();
      EXPECT_NEAR(rootless.moment(k), avg / static_cast<double>(g.vertex_count()), 1e-8);
    }
  }
}

TEST(SpectralMeasure, Examples) {
  EXPECT_NEAR(spectral_measure(complete_graph(4), 0u).moment(2), 1.0 / 3, 1e-12);
  auto mu = spectral_measure(disjoint_union(complete_graph(4), complete_graph(4)));
  EXPECT_NEAR(mu.mass(1.0, 1.0), 0.25, 1e-12);
  EXPECT_NEAR(spectral_measure(half_loop_bouquet(3), 0u).moment(1), 1.0, 1e-15);
}

TEST(HittingBound, Examples) {
  auto k4 = hitting_bound_check(complete_graph(4), 0, {0}, 2);
  EXPECT_NEAR(k4[2].lhs, 1.0 / 3, 1e-15);
  EXPECT_NEAR(k4[2].rhs, 1.0 / 9 + 0.5, 1e-12);
  EXPECT_TRUE(k4[2].passed());
  auto pet = hitting_bound_check(petersen_graph(), 0, {0}, 30);
  for (const auto& r : pet) EXPECT_TRUE(r.passed()) << r.name;
  std::vector<VertexId> all(10);
  std::iota(all.begin(), all.end(), 0);
  for (const auto& r : hitting_bound_check(petersen_graph(), 0, all, 10)) {
    EXPECT_NEAR(r.lhs, 1.0, 1e-15);
    EXPECT_TRUE(r.passed());
  }
}

TEST(HittingBound, BipartiteGraphs) {
  for (const auto& r : hitting_bound_check(cycle_graph(8), 0, {0, 4}, 40)) EXPECT_TRUE(r.passed()) << r.name;
}

TEST(HittingBound, DisconnectedNotApplicable) {
  auto reps = hitting_bound_check(disjoint_union(complete_graph(4), complete_graph(4)), 0, {0}, 3);
  for (const auto& r : reps) EXPECT_EQ(r.verdict, Verdict::kNotApplicable);
}

TEST(Cogrowth, Examples) {
  auto rose2 = nonbacktracking_cogrowth(rose(2));
  EXPECT_NEAR(rose2.alpha, 3.0, 1e-10);
  EXPECT_NEAR(rose2.rho_cover, 1.0, 1e-12);
  auto k4 = nonbacktracking_cogrowth(complete_graph(4));
  EXPECT_NEAR(k4.alpha, 2.0, 1e-10);
  EXPECT_EQ(k4.alpha_integer, 2u);
  auto tree = nonbacktracking_cogrowth(regular_tree_ball(3, 3).graph);
  EXPECT_TRUE(tree.degenerate);
  EXPECT_EQ(tree.alpha, 0.0);
}

TEST(Cogrowth, PowerIterationOnIrregularGraphs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = random_bounded_degree_graph(20, 4, 10, seed);
    auto c = nonbacktracking_cogrowth(g);
    EXPECT_FALSE(c.alpha_integer.has_value());
    // Direct count growth approaches alpha from the closed-walk side.
    auto counts = nonbacktracking_return_counts(g, 0, 60);
    mpz_class total = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) total += nonbacktracking_return_counts(g, v, 60)[60];
    const double est = std::pow(total.get_d(), 1.0 / 60);
    EXPECT_NEAR(std::log(est), std::log(c.alpha), 0.1) << seed;
  }
}

TEST(Cogrowth, BipartiteIrregularFallsBack) {
  // Even cycle with a pendant path keeps the operator periodic.
  GraphBuilder b(6);
  for (VertexId i = 0; i < 4; ++i) b.add_edge(i, (i + 1) % 4);
  b.add_edge(0, 4);
  b.add_edge(4, 5);
  b.add_edge(2, 5);
  auto c = nonbacktracking_cogrowth(std::move(b).build());
  EXPECT_GT(c.alpha, 1.0);
  EXPECT_LT(c.alpha, 2.0);
}

TEST(Cogrowth, RoseFamily) {
  for (std::size_t r = 1; r <= 5; ++r) EXPECT_NEAR(nonbacktracking_cogrowth(rose(r)).alpha, 2.0 * r - 1, 1e-8);
}

TEST(Cogrowth, DirectCountsOnK4) {
  auto c = nonbacktracking_return_counts(complete_graph(4), 0, 30);
  EXPECT_EQ(c[1], 0);
  EXPECT_EQ(c[2], 0);
  EXPECT_EQ(c[3], 6);
  EXPECT_NEAR(std::pow(c[30].get_d(), 1.0 / 30), 2.0, 0.1);
}

TEST(Grigorchuk, Examples) {
  EXPECT_NEAR(grigorchuk_rho(4, 3), 1.0, 1e-15);
  EXPECT_NEAR(grigorchuk_rho(4, std::sqrt(3.0)), 2 * std::sqrt(3.0) / 4, 1e-15);
  EXPECT_NEAR(grigorchuk_rho(10, 2), 0.6, 1e-15);
  EXPECT_THROW(grigorchuk_rho(4, 3.5), PreconditionError);
  EXPECT_THROW(grigorchuk_rho(4, 0), PreconditionError);
}

TEST(TreeMCriterion, CompleteGraphBoundary) {
  auto at5 = tree_m_ramanujan(complete_graph(4), 5);
  EXPECT_TRUE(at5.exact);
  EXPECT_TRUE(at5.ramanujan);
  EXPECT_EQ(at5.threshold, 5.0);
  auto at4 = tree_m_ramanujan(complete_graph(4), 4);
  EXPECT_FALSE(at4.ramanujan);
  EXPECT_THROW(tree_m_ramanujan(complete_graph(4), 2), PreconditionError);
}

TEST(TreeMCriterion, SufficientBound) {
  for (std::size_t d : {3u, 4u, 5u}) {
    auto g = configuration_model(d, 20, d);
    auto t = tree_m_ramanujan(g, d * d - 2 * d + 2);
    EXPECT_TRUE(t.sufficient_bound);
    EXPECT_TRUE(t.ramanujan);
  }
}

TEST(Rayleigh, SphericalFunctionIdentity) {
  const double lhs = (spherical_function(3, 4) + 2 * spherical_function(3, 6)) / 3;
  EXPECT_NEAR(lhs, tree_rho(3) * spherical_function(3, 5), 1e-15);
  EXPECT_EQ(spherical_function(5, 0), 1.0);
}

TEST(Rayleigh, TreeBallsIncreaseTowardRho) {
  double prev = 0;
  for (std::size_t r : {4u, 8u, 12u}) {
    auto t = regular_tree_ball(3, r + 1);
    auto b = rayleigh_lower_bound(ball(t, r + 1, false), 3, r);
    EXPECT_TRUE(b.g0_is_one);
    EXPECT_LT(b.identity_error, 1e-13);
    EXPECT_LT(b.value, tree_rho(3));
    EXPECT_GT(b.value, prev);
    prev = b.value;
  }
  auto t = regular_tree_ball(3, 5);
  EXPECT_THROW(rayleigh_lower_bound(ball(t, 5, false), 3, 5), PreconditionError);
}

TEST(Rayleigh, TriangleEverywhereBeatsTree) {
  auto fp = free_product_ball({3, 2}, 16);
  auto p = ball(fp, 16, false);
  auto r = rayleigh_lower_bound(p, 3, 15);
  auto dl = dirichlet_lower_bound(p, 3, 15);
  EXPECT_GT(dl, tree_rho(3) + 1.0 / 48);
  EXPECT_GT(r.value, 0.0);
}

TEST(Schreier, QuotientSpectrumInsideCover) {
  auto grp = symmetric_group(4);
  auto cover = markov_spectrum(cayley_graph(grp));
  auto q = markov_spectrum(schreier_quotient(grp, 0).quotient);
  for (double x : q.eigenvalues) {
    bool found = false;
    for (double y : cover.eigenvalues) found = found || std::fabs(x - y) < 1e-8;
    EXPECT_TRUE(found) << x;
  }
  EXPECT_LE(q.rho, cover.rho + 1e-8);
}
