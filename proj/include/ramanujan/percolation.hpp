#pragma once

// Site percolation on a window of Z^2 and sphere growth in the universal
// cover of the origin's cluster.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "ramanujan/graph.hpp"

namespace ramanujan {

struct PercolationWindow {
  std::size_t width = 0, height = 0;
  double p = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> open;     // row-major, width * height
  std::size_t origin_site = 0;        // centre of the window
  SerreGraph cluster;                 // induced subgraph, vertex 0 = origin (if open)
  std::vector<std::size_t> sites;     // cluster vertex -> site index
  bool reaches_boundary = false;
  std::size_t boundary_distance = 0;  // cluster distance from the origin to the window edge

  bool empty() const { return cluster.vertex_count() == 0; }
};

/// Site i is open iff the i-th uniform draw of the seeded stream is below
/// p, so windows with the same seed are coupled monotonically in p.
PercolationWindow percolate(std::size_t width, std::size_t height, double p, std::uint64_t seed);

enum class LoopPolicy {
  kAttached,  // half-loops add no cover vertices: spheres of the cover of the cluster
  kUnfold,    // half-loops are steps of a reduced path (and reverse themselves)
};

/// |S_n| for n = 0..nmax: reduced paths of length n from root.
std::vector<mpz_class> cover_sphere_sizes(const SerreGraph& g, VertexId root, std::size_t nmax,
                                          LoopPolicy policy = LoopPolicy::kAttached);

struct GrowthEstimate {
  double value = 0;          // min over the tail of |S_n|^{1/n}
  std::size_t from = 0, to = 0;
  bool boundary_truncated = false;  // part of the tail was cut by clean_limit
};

/// Tail minimum of |S_n|^{1/n} over the last tail_fraction of n in
/// 1..sizes.size()-1, restricted to n <= clean_limit.
GrowthEstimate lower_growth_estimate(const std::vector<mpz_class>& sizes, double tail_fraction = 0.25,
                                     std::size_t clean_limit = SIZE_MAX);

struct GrowthRun {
  std::size_t attempt = 0;
  PercolationWindow window;
  std::vector<mpz_class> sizes;
  GrowthEstimate estimate;
};

/// percolate, regularize to degree 4 with half-loops, count cover spheres.
GrowthRun percolation_growth(std::size_t size, double p, std::uint64_t seed, std::size_t nmax,
                             double tail_fraction = 0.25,
                             LoopPolicy policy = LoopPolicy::kAttached);

/// Seed of the given attempt; attempt 0 is the seed itself.
std::uint64_t attempt_seed(std::uint64_t seed, std::size_t attempt);

/// Conditions on the origin cluster reaching the window edge by redrawing
/// with attempt_seed(seed, 1), (seed, 2), ... Throws ConvergenceError
/// after max_attempts.
GrowthRun conditioned_growth(std::size_t size, double p, std::uint64_t seed, std::size_t nmax,
                             double tail_fraction = 0.25,
                             LoopPolicy policy = LoopPolicy::kAttached,
                             std::size_t max_attempts = 1000);

/// Cluster at p_low is contained in the cluster at p_high (same seed).
bool coupling_monotone(std::size_t width, std::size_t height, double p_low, double p_high,
                       std::uint64_t seed);

}  // namespace ramanujan
