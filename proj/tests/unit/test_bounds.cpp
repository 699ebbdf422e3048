#include <gtest/gtest.h>

#include <cmath>

#include "ramanujan/bounds.hpp"
#include "ramanujan/constructions.hpp"
#include "ramanujan/errors.hpp"
#include "ramanujan/tree_walk.hpp"

using namespace ramanujan;

TEST(Constants, Examples) {
  EXPECT_EQ(nu_k(3, 1), mpz_class("25600000000000"));
  EXPECT_EQ(c_k(3, 1), mpq_class(1, 16));
  EXPECT_EQ(c_k(3, 2), mpq_class(1, 8));
  EXPECT_EQ(ell_k(3, 1), mpz_class("4800000000"));
  EXPECT_THROW(nu_k(2, 1), PreconditionError);
}

TEST(Constants, HandSubstitution) {
  for (unsigned d : {3u, 4u, 5u})
    for (std::size_t k : {1u, 2u, 3u}) {
      long double nu = 2e11L * k;
      long double ell = 6e8L;
      for (std::size_t i = 0; i < k; ++i) {
        nu *= 16.0L * (d - 1) * (d - 1) * (d - 1);
        ell *= 4.0L * d - 4;
      }
      EXPECT_EQ(nu_k(d, k), mpz_class(std::to_string(static_cast<unsigned long long>(nu / 1000)) + "000"));
      EXPECT_NEAR(ell_k(d, k).get_d(), static_cast<double>(ell), 1.0);
      if (k > 1) EXPECT_EQ(c_k(d, k) * 2 * static_cast<unsigned long>(std::pow(d - 1, k)), 1);
    }
}

TEST(SpectralCycleBound, SmallGraphsAreGated) {
  EXPECT_EQ(spectral_cycle_bound(complete_graph(4), 1).rho_bound.verdict, Verdict::kNotApplicable);
  EXPECT_EQ(spectral_cycle_bound(petersen_graph(), 3).rho_bound.verdict, Verdict::kNotApplicable);
  EXPECT_THROW(spectral_cycle_bound(path_graph(5), 1), PreconditionError);
}

TEST(SpectralCycleBound, RandomCubicGraph) {
  auto g = configuration_model(3, 1024, 17);
  auto spec = markov_spectrum(g);
  for (std::size_t k = 1; k <= 4; ++k) {
    auto r = spectral_cycle_bound(g, k, &spec);
    EXPECT_TRUE(r.rho_bound.passed()) << k;
    EXPECT_NE(r.ramanujan.verdict, Verdict::kFail);
    auto alt = spectral_cycle_bound(g, k, &spec, LogBase::kDegreeMinusOne);
    EXPECT_TRUE(alt.rho_bound.passed());
  }
}

TEST(ClosedWalks, HalfLengthSquaresMatchDirectCounts) {
  for (const auto& g : {petersen_graph(), configuration_model(4, 30, 2), half_loop_bouquet(3), rose(2)}) {
    auto direct = closed_walk_counts(g, 0, 12);
    for (std::size_t len = 0; len <= 12; len += 2) EXPECT_EQ(closed_walks_at(g, 0, len), direct[len]);
  }
  auto t = regular_tree_ball(3, 14);
  EXPECT_EQ(closed_walks_at(t.graph, t.root, 28), tree_walk_tables(3, 28)->count(28, 0));
  mpz_class all;
  mpz_ui_pow_ui(all.get_mpz_t(), 5, 60);
  EXPECT_EQ(closed_walks_at(half_loop_bouquet(5), 0, 60), all);
}

TEST(ReturnCycleBound, Examples) {
  auto g = configuration_model(3, 4096, 5);
  auto r = return_cycle_bound(g, 4, 2);
  EXPECT_TRUE(r.passed()) << r.lhs << ' ' << r.rhs;
  EXPECT_THROW(return_cycle_bound(g, 3, 1), PreconditionError);
  EXPECT_EQ(return_cycle_bound(configuration_model(3, 100, 1), 4, 3).verdict, Verdict::kNotApplicable);
}

TEST(Distance, Examples) {
  auto a = distance_bound(3, 0, 3);
  EXPECT_EQ(a.exponent, 2u);
  EXPECT_EQ(a.gap, mpq_class(1, 48));
  EXPECT_NEAR(a.value, 2 * std::sqrt(2.0) / 3 + 1.0 / 48, 1e-15);
  auto b = distance_bound(4, 1, 4);
  EXPECT_EQ(b.gap * 4 * 6561, 2);
  for (unsigned d = 3; d < 12; ++d) EXPECT_GT(distance_bound(d, 1, 3).gap, distance_bound(d + 1, 1, 3).gap);
}

TEST(EssGirth, Constraint) {
  auto r = ess_girth_bound(1e6, 3, 1.0, 1.0 / (30 * std::log(2.0)), 1e-3);
  EXPECT_NEAR(r.beta_max, 1.0 / (14 * std::log(2.0)), 1e-15);
  EXPECT_NEAR(r.k, std::log(std::log(1e6)) / (30 * std::log(2.0)), 1e-12);
  EXPECT_THROW(ess_girth_bound(1e6, 3, 1.0, 0.2, 0.01), PreconditionError);
  auto rep = ess_girth_report(configuration_model(3, 2048, 1));
  EXPECT_EQ(rep.verdict, Verdict::kInformational);
}

TEST(NullcycleInequality, ExactAndSampled) {
  auto g = complete_graph(4);
  for (std::size_t ell : {1u, 3u, 1000u}) {
    auto r = nullcycle_inequality(g, 0, 2, 3, ell, 0, 1);
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(r.check.passed());
  }
  auto mc = nullcycle_inequality(petersen_graph(), 0, 4, 5, 2, 2000, 3, 0);
  EXPECT_FALSE(mc.exact);
  EXPECT_TRUE(mc.check.passed());
}
