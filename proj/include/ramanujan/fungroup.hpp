#pragma once

// Random walks on the fundamental group: homotopy classes as reduced edge
// words, norms of step sets of walks (kappa), the time-k law of the
// infinite nullcycle and their geometric mean.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ramanujan/graph.hpp"
#include "ramanujan/nullcycle.hpp"
#include "ramanujan/report.hpp"

namespace ramanujan {

using ReducedWord = std::vector<EdgeId>;

/// Homotopy class of a walk: its free reduction. Empty iff nullhomotopic.
ReducedWord homotopy_class(const SerreGraph& g, const Walk& w);

/// The reversed walk, with every edge replaced by its inverse.
std::vector<EdgeId> inverse_edges(const SerreGraph& g, const std::vector<EdgeId>& edges);

/// All walks of length k from x to y, as edge lists.
std::vector<std::vector<EdgeId>> walks_between(const SerreGraph& g, VertexId x, VertexId y,
                                               std::size_t k,
                                               std::size_t budget = 5'000'000);

struct KappaEstimate {
  VertexId x = 0, y = 0;
  std::size_t k = 0;
  mpz_class walk_count;               // |W_k(x,y)|
  // returns[j]: closed words of j steps of the N N^{-1} walk that are the
  // identity, out of |W|^{2j}. Indexed j = 0 .. 2 mmax.
  std::vector<mpz_class> returns;
  std::vector<double> kappa_hat;      // kappa_hat[m-1] = q_{2m}^{1/(4m)}, m = 1..achieved_m
  std::size_t achieved_m = 0;
  bool truncated = false;             // stopped early on the work budget
  bool monotone = true;               // checked exactly on the integer counts
};

/// kappa_k(x,y) from below: exact return counts of the N N^{-1} walk via an
/// excursion recursion on the universal cover.
KappaEstimate kappa_estimate(const SerreGraph& g, VertexId x, VertexId y, std::size_t k,
                             std::size_t mmax, double work_budget = 2e9);

/// Same return counts by brute force over reduced words of pi_1(G, o),
/// with step set { u w w'^{-1} u^{-1} }, u a walk from o to x. Returns
/// counts for j = 0 .. jmax. Throws BudgetError past max_states words.
std::vector<mpz_class> kappa_word_returns(const SerreGraph& g, const Walk& u, VertexId y,
                                          std::size_t k, std::size_t jmax,
                                          std::size_t max_states = 2'000'000);

/// Large-m extrapolation of kappa_hat, assuming q_{2m} ~ C m^{-3/2} kappa^{4m}.
double kappa_extrapolate(const KappaEstimate& e);

/// Exact p(k, n, x): the law of a uniform nullcycle of length n at time k.
std::vector<mpq_class> p_k_exact(const SerreGraph& g, VertexId o, std::size_t k, std::size_t n);

/// n -> infinity limit p_k(x) in closed form (h-transform of the tree walk).
std::vector<double> p_k_limit(const SerreGraph& g, VertexId o, std::size_t k);

struct PkDistribution {
  std::vector<double> values;   // p(k, n, .) at the stopping n
  std::vector<double> limit;    // closed-form limit
  std::size_t n = 0;
  double last_change = 0;       // total variation between n - 2 and n
  double limit_gap = 0;         // total variation to the closed form
  bool stabilized = false;
};

/// Iterates n upward (even) until the total-variation change between n and
/// n + 2 is below tol, or n_limit is reached (stabilized = false).
PkDistribution p_k_distribution(const SerreGraph& g, VertexId o, std::size_t k,
                                double tol = 1e-8, std::size_t n_limit = 40000);

struct KappaStar {
  double value = 0;                   // prod_x kappa_hat(o,x)^{p_k(x)}
  std::vector<std::pair<VertexId, double>> support;   // (x, p_k(x))
  std::vector<KappaEstimate> estimates;               // one per support vertex
  BoundReport diagnostic;  // log rho(G) vs log rho(T_d) - (1/k) log kappa*
};

/// rho defaults to the operator norm of M (1 for finite graphs); pass the
/// spectral radius of the intended infinite graph otherwise.
KappaStar kappa_star(const SerreGraph& g, VertexId o, std::size_t k, std::size_t mmax,
                     std::optional<double> rho = std::nullopt);

struct StepNormReport {
  mpz_class walk_count;      // |W_k(o,x)|
  mpz_class null_count;      // |W_k(o,x) w  cap  N_{k+|w|}|
  KappaEstimate kappa;
  BoundReport upper;         // |W| kappa_hat <= (d rho(T_d))^{k+|w|} at every m
  BoundReport lower;         // null_count <= |W| kappa (extrapolated), informational
};

/// w must be a walk from x to o.
StepNormReport step_norm_check(const SerreGraph& g, VertexId o, VertexId x, const Walk& w,
                                   std::size_t k, std::size_t mmax);

/// |W_{nk}(o,o)| >= sum over nullcycles of prod_j kappa_hat(w_{jk}, w_{(j+1)k})^{-1}.
/// kappa_hat <= kappa, so a pass is stronger than the inequality and a miss
/// is informational.
BoundReport cycle_product_check(const SerreGraph& g, VertexId o, std::size_t n, std::size_t k,
                       std::size_t mmax);

/// The tree case: c[L][0] <= (d rho(T_d))^L = (4(d-1))^{L/2}, L even, exact.
BoundReport tree_cycle_product_check(unsigned d, std::size_t length);

}  // namespace ramanujan
