#pragma once

// Local statistics of finite graphs that matter in the large-graph limit:
// ball histograms, cycle densities, distance of the spectral measure from
// Kesten-McKay, and fleets of random regular graphs.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ramanujan/graph.hpp"
#include "ramanujan/spectral.hpp"

namespace ramanujan {

struct PatternHistogram {
  std::size_t radius = 0;
  std::size_t vertices = 0;
  std::map<std::string, std::size_t> counts;  // canonical ball -> number of roots

  mpq_class frequency(const std::string& canonical) const;
  std::size_t size() const { return counts.size(); }
};

/// Exact frequencies of r-balls, sweeping every vertex.
PatternHistogram bs_histogram(const SerreGraph& g, std::size_t r);

/// Fraction of roots whose r-ball is not a loop-free tree. For a d-regular
/// graph this is the total-variation distance from the T_d point mass.
double tree_ball_defect(const SerreGraph& g, std::size_t r);

/// CDF of the Kesten-McKay law of T_d on the Markov scale [-1, 1].
double kesten_mckay_cdf(unsigned d, double x);

/// W1 distance between the eigenvalue distribution and Kesten-McKay.
double wasserstein_to_kesten_mckay(const std::vector<double>& eigenvalues, unsigned d);

/// mean_v p_{v,k} for k = 0..kmax, by walk propagation in double.
std::vector<double> mean_return_probabilities(const SerreGraph& g, std::size_t kmax);

/// Fraction of eigenvalues in [-rho(T_d) - tol, rho(T_d) + tol], with tol
/// the eigensolver residual (at least 1e-9).
double weakly_ramanujan_mass(const SpectralSummary& s);
double weakly_ramanujan_mass(const SerreGraph& g);

struct LocalStatsRow {
  std::string label;
  std::size_t vertices = 0;
  std::vector<double> cycle_density;   // index L-1: gamma_L / |G| for L = 1..kmax
  double tree_defect = 0;              // TV of r-ball law from the tree point mass
  double wasserstein = 0;              // W1(mu_G, Kesten-McKay)
  double moment_error = 0;             // max_k |int x^k dmu_G - mean_v p_{v,k}|, k <= 20
  double mass = 0;                     // weakly Ramanujan mass
  double rho = 0;
};

struct LocalLimitReport {
  std::size_t radius = 0, kmax = 0;
  std::vector<LocalStatsRow> rows;
  // Each column non-increasing along the sequence (within 1e-12).
  bool cycles_decreasing = false, defect_decreasing = false, wasserstein_decreasing = false;
};

LocalLimitReport local_limit_diagnostic(const std::vector<SerreGraph>& graphs, std::size_t r,
                                       std::size_t kmax);

struct FleetOptions {
  unsigned d = 3;
  std::vector<std::size_t> sizes{64, 256, 1024};
  std::size_t seeds = 10;
  std::uint64_t base_seed = 1;
  double planted_density = 0;  // triangles = round(density * n)
  std::size_t radius = 2;
  std::size_t kmax = 5;
};

struct FleetRow {
  unsigned d = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t triangles = 0;
  LocalStatsRow stats;
  double residual = 0;
};

/// Seed for graph i of size n: a fixed function of (base_seed, n, i).
std::uint64_t fleet_seed(std::uint64_t base_seed, std::size_t n, std::size_t i);

/// Graph i of size n. run_fleet is the ordered loop over (size, i).
FleetRow fleet_row(const FleetOptions& opts, std::size_t n, std::size_t i);

std::vector<FleetRow> run_fleet(const FleetOptions& opts);

struct FleetSummary {
  std::size_t n = 0;
  std::size_t count = 0;
  double mean_mass = 0, sd_mass = 0;
  double mean_wasserstein = 0, mean_defect = 0;
};

/// Per-size mean and sample standard deviation of the mass.
std::vector<FleetSummary> summarize_fleet(const std::vector<FleetRow>& rows);

}  // namespace ramanujan
