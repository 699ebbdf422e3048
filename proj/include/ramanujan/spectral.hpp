#pragma once

// Markov-operator spectra, spectral measures, cogrowth and lower bounds on
// the spectral radius.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ramanujan/graph.hpp"
#include "ramanujan/linalg.hpp"
#include "ramanujan/patterns.hpp"
#include "ramanujan/report.hpp"

namespace ramanujan {

struct SpectrumOptions {
  std::size_t dense_limit = 4000;    // above this, Lanczos on the nontrivial part
  std::size_t residual_limit = 1200;  // compute eigenvectors and true residuals up to here
  double cluster_tol = 1e-8;          // eigenvalues closer than this are one distinct value
};

struct SpectralSummary {
  std::size_t degree = 0;
  std::size_t vertices = 0;
  std::size_t components = 0;
  std::vector<double> eigenvalues;                      // ascending; empty for Lanczos
  std::vector<std::pair<double, std::size_t>> distinct;  // (value, multiplicity)
  double rho = 0;
  bool is_bipartite = false;  // every component is bipartite
  bool ramanujan = false;     // rho <= 2 sqrt(d-1) / d
  double weakly_ramanujan_mass = 0;  // NaN when the full spectrum was not computed
  double residual = 0;        // max ||M v - lambda v|| (or a backward-error estimate)
  std::string method;         // "dense", "dense-values", "lanczos"
};

/// Dense matrix of M for a d-regular graph.
DenseMatrix markov_matrix(const SerreGraph& g);

/// y = M x.
void markov_apply(const SerreGraph& g, const std::vector<double>& x, std::vector<double>& y);

/// Spectrum of M. rho is the second largest of the distinct absolute values
/// of the eigenvalues (0 when there is only one). Throws PreconditionError
/// if g is not regular.
SpectralSummary markov_spectrum(const SerreGraph& g, const SpectrumOptions& opts = {});

/// rho(G) from the distinct absolute values of a sorted eigenvalue list.
double rho_from_eigenvalues(const std::vector<double>& eigenvalues, double tol = 1e-8);

/// Discrete measure on [-1, 1].
struct SpectralMeasure {
  std::vector<double> atoms;
  std::vector<double> weights;
  double moment(std::size_t k) const;
  /// Mass of [lo, hi], with a small slack at both ends.
  double mass(double lo, double hi, double slack = 1e-9) const;
};

/// Rootless: eigenvalue distribution. Rooted: <P(.) delta_v, delta_v>.
SpectralMeasure spectral_measure(const SerreGraph& g, std::optional<VertexId> root = {});

/// Number of closed walks of each length 0..kmax at v.
std::vector<mpz_class> closed_walk_counts(const SerreGraph& g, VertexId v, std::size_t kmax);

/// p_{v,k} = closed_walk_counts / d^k for a d-regular graph.
std::vector<mpq_class> walk_return_probabilities(const SerreGraph& g, VertexId v,
                                                 std::size_t kmax);

/// p_n(o, A) <= sqrt|A| rho^n + 2|A|/|G| for n = 0..nmax, exactly on the
/// left. One report per n.
std::vector<BoundReport> hitting_bound_check(const SerreGraph& g, VertexId o,
                                             const std::vector<VertexId>& a, std::size_t nmax);

struct CogrowthSummary {
  double alpha = 0;          // Perron value of the non-backtracking operator
  bool degenerate = false;   // no non-backtracking cycle; alpha = 0
  std::optional<std::size_t> alpha_integer;  // d-1 for d-regular input
  std::string method;        // "power", "power-squared", "power-shifted", "none"
  bool flagged = false;      // fell back from plain power iteration
  std::size_t iterations = 0;
  std::size_t m = 0;         // ambient degree
  double rho_cover = 0;      // rho(Tree_m(G)) by the cogrowth formula
};

/// Perron value of the operator on directed edges e -> e' with
/// source(e') = target(e), e' != inv(e). m defaults to the maximum degree.
CogrowthSummary nonbacktracking_cogrowth(const SerreGraph& g, std::optional<std::size_t> m = {});

/// |V_n(o,o)|: non-backtracking closed walks of length n at o, n = 0..nmax.
std::vector<mpz_class> nonbacktracking_return_counts(const SerreGraph& g, VertexId o,
                                                     std::size_t nmax);

/// Cogrowth formula. Throws PreconditionError unless 0 < alpha <= m - 1.
double grigorchuk_rho(std::size_t m, double alpha);

struct TreeMCriterion {
  std::size_t m = 0;
  double alpha = 0;
  double threshold = 0;   // alpha^2 + 1
  double margin = 0;      // m - threshold
  bool exact = false;     // decided in integers
  bool ramanujan = false;  // m >= alpha^2 + 1
  std::optional<std::size_t> degree;
  bool sufficient_bound = false;  // d-regular and m >= d^2 - 2d + 2
};

/// Throws PreconditionError if m < max degree.
TreeMCriterion tree_m_ramanujan(const SerreGraph& g, std::size_t m);

/// g(n) = (d + (d-2) n) / (d sqrt(d-1)^n).
double spherical_function(std::size_t d, std::size_t n);

struct RayleighBound {
  double value = 0;
  std::size_t radius = 0;
  std::size_t support = 0;      // vertices with dist <= R
  bool g0_is_one = false;
  double identity_error = 0;    // max over 1 <= n <= R of the three-term identity defect
};

/// <M f_R, f_R> / <f_R, f_R> with f_R = g(dist) 1(dist <= R) on a rooted
/// ball of radius >= R+1. Throws PreconditionError if the ball is too small
/// or a vertex at distance <= R does not have degree d.
RayleighBound rayleigh_lower_bound(const Pattern& ball, std::size_t d, std::size_t radius);

/// Largest eigenvalue of M restricted to the vertices at distance <= R.
double dirichlet_lower_bound(const Pattern& ball, std::size_t d, std::size_t radius);

}  // namespace ramanujan
