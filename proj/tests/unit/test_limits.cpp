#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ramanujan/constructions.hpp"
#include "ramanujan/errors.hpp"
#include "ramanujan/limits.hpp"
#include "ramanujan/tree_walk.hpp"

using namespace ramanujan;

TEST(Histogram, VertexTransitiveIsPointMass) {
  for (const auto& g : {complete_graph(4), petersen_graph(), cycle_graph(7)}) {
    auto h = bs_histogram(g, 1);
    ASSERT_EQ(h.size(), 1u);
    EXPECT_EQ(h.frequency(h.counts.begin()->first), 1);
  }
  EXPECT_EQ(bs_histogram(petersen_graph(), 2).size(), 1u);
}

TEST(Histogram, DisjointUnionSplits) {
  auto g = disjoint_union(complete_graph(4), cycle_graph(6));
  auto h = bs_histogram(g, 1);
  ASSERT_EQ(h.size(), 2u);
  std::vector<mpq_class> f;
  for (const auto& [k, c] : h.counts) f.push_back(h.frequency(k));
  std::sort(f.begin(), f.end());
  EXPECT_EQ(f[0], mpq_class(2, 5));
  EXPECT_EQ(f[1], mpq_class(3, 5));
  double total = 0;
  for (const auto& q : f) total += q.get_d();
  EXPECT_DOUBLE_EQ(total, 1.0);
}

TEST(ConfigurationModel, Deterministic) {
  std::ostringstream a, b;
  write_sgf(a, configuration_model(3, 1024, 7));
  write_sgf(b, configuration_model(3, 1024, 7));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_THROW(configuration_model(3, 5, 1), PreconditionError);
}

TEST(ConfigurationModel, TwoVertexLawMatchesMatchingCount) {
  // Six half-edges have 15 perfect matchings: 6 give three parallel edges,
  // 9 give one edge plus a loop at each end.
  const int draws = 10000;
  int theta = 0;
  for (int s = 0; s < draws; ++s) {
    auto g = configuration_model(3, 2, 1000 + s);
    int cross = 0;
    for (auto e : g.out_edges(0))
      if (g.edge(e).target == 1) ++cross;
    ASSERT_TRUE(cross == 1 || cross == 3);
    if (cross == 3) ++theta;
  }
  const double p = 6.0 / 15, sd = std::sqrt(p * (1 - p) / draws);
  EXPECT_NEAR(theta / double(draws), p, 4 * sd);
}

TEST(KestenMcKay, CdfShape) {
  for (unsigned d : {3u, 4u, 7u}) {
    EXPECT_NEAR(kesten_mckay_cdf(d, 0.0), 0.5, 1e-12);
    EXPECT_EQ(kesten_mckay_cdf(d, -1.0), 0.0);
    EXPECT_EQ(kesten_mckay_cdf(d, 1.0), 1.0);
    double prev = 0;
    for (int i = -100; i <= 100; ++i) {
      double f = kesten_mckay_cdf(d, i / 100.0);
      EXPECT_GE(f, prev - 1e-15);
      prev = f;
    }
    // Second moment by parts: int x^2 dF = 1 - int_{-1}^{1} 2x F(x) dx ... on
    // a symmetric law this is 2 int_0^1 x (1 - F(x)) dx.
    double m2 = 0;
    const int steps = 20000;
    for (int i = 0; i < steps; ++i) {
      double x = (i + 0.5) / steps;
      m2 += 2 * x * (1 - kesten_mckay_cdf(d, x)) / steps * 2;
    }
    EXPECT_NEAR(m2, kesten_mckay_moment(d, 2), 1e-6);
  }
}

TEST(KestenMcKay, QuantilesHaveSmallDistance) {
  const unsigned d = 3;
  std::vector<double> q;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    double target = (i + 0.5) / n, lo = -1, hi = 1;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (kesten_mckay_cdf(d, mid) < target ? lo : hi) = mid;
    }
    q.push_back(lo);
  }
  EXPECT_LT(wasserstein_to_kesten_mckay(q, d), 1e-3);
  EXPECT_NEAR(wasserstein_to_kesten_mckay(std::vector<double>(10, 1.0), d),
              1.0 - 0.0, 1e-3);  // all mass at 1: W1 = 1 - mean(KM) = 1
}

TEST(Mass, Examples) {
  EXPECT_DOUBLE_EQ(weakly_ramanujan_mass(petersen_graph()), 0.9);
  EXPECT_DOUBLE_EQ(weakly_ramanujan_mass(complete_graph(4)), 0.75);
  // d = 2: rho(T_2) = 1 and the closed window contains the whole spectrum.
  EXPECT_DOUBLE_EQ(weakly_ramanujan_mass(cycle_graph(6)), 1.0);
}

TEST(LocalLimit, MomentIdentityAndTrends) {
  std::vector<SerreGraph> seq;
  for (std::size_t n : {64u, 256u, 1024u}) seq.push_back(configuration_model(3, n, 11));
  auto rep = local_limit_diagnostic(seq, 2, 5);
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& row : rep.rows) EXPECT_LT(row.moment_error, 1e-8);
  EXPECT_TRUE(rep.cycles_decreasing);
  EXPECT_TRUE(rep.defect_decreasing);
  EXPECT_TRUE(rep.wasserstein_decreasing);

  auto flat = local_limit_diagnostic({complete_graph(4), complete_graph(4)}, 1, 3);
  for (const auto& row : flat.rows) {
    EXPECT_GT(row.cycle_density[2], 0.5);
    EXPECT_EQ(row.tree_defect, 1.0);
    EXPECT_GT(row.wasserstein, 0.1);
    EXPECT_LT(row.moment_error, 1e-12);
  }
}

TEST(Fleet, MassGrowsWithSizeAndPlantingHurts) {
  FleetOptions opts;
  opts.sizes = {128, 256};
  opts.seeds = 10;
  opts.kmax = 3;
  auto plain = summarize_fleet(run_fleet(opts));
  ASSERT_EQ(plain.size(), 2u);
  const double se = std::sqrt((plain[0].sd_mass * plain[0].sd_mass + plain[1].sd_mass * plain[1].sd_mass) / 10);
  EXPECT_GE(plain[1].mean_mass, plain[0].mean_mass - 3 * se);
  opts.planted_density = 0.1;
  auto planted = summarize_fleet(run_fleet(opts));
  for (std::size_t i = 0; i < 2; ++i) EXPECT_LT(planted[i].mean_mass, plain[i].mean_mass);
  auto again = run_fleet(opts);
  EXPECT_EQ(again.front().seed, fleet_seed(1, 128, 0));
  EXPECT_EQ(again.front().triangles, 13u);
}
