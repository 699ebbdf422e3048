#pragma once

// Explicit constants and checked inequalities relating short cycles to the
// spectral radius of regular graphs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ramanujan/graph.hpp"
#include "ramanujan/report.hpp"
#include "ramanujan/spectral.hpp"

namespace ramanujan {

/// nu_k = 2e11 * 2^{4k} * (d-1)^{3k} * k.
mpz_class nu_k(unsigned d, std::size_t k);
/// c_1 = 1/16, c_k = (d-1)^{-k} / 2 for k >= 2.
mpq_class c_k(unsigned d, std::size_t k);
/// ell = 6e8 * (4d-4)^k.
mpz_class ell_k(unsigned d, std::size_t k);

enum class LogBase { kDegree, kDegreeMinusOne };

struct SpectralCycleReport {
  BoundReport rho_bound;   // rho(G)/rho(T_d) >= 1 + E gamma_k / nu_k - (1.5 log log |G| + 6) / log |G|
  BoundReport ramanujan;   // E gamma_k <= nu_k (1.5 log log |G| + 6) / log |G|, when rho <= rho(T_d)
  double mean_gamma = 0;
  double rho = 0;
};

/// The spectrum is computed unless supplied. Logs are base d, or base d-1
/// with LogBase::kDegreeMinusOne.
SpectralCycleReport spectral_cycle_bound(const SerreGraph& g, std::size_t k,
                                 const SpectralSummary* spectrum = nullptr,
                                 LogBase base = LogBase::kDegree);

/// Exact p_L(o,o) as a count of closed walks of length L (L even), from
/// the squared half-length walk counts. Works on the local ball only.
mpz_class closed_walks_at(const SerreGraph& g, VertexId o, std::size_t length);

/// Mean over roots of log p_{nk}(o,o) versus
/// nk log rho(T_d) - 1.5 log(nk) - 4 + nk E gamma_k / nu_k.
/// Throws PreconditionError if nk is odd.
BoundReport return_cycle_bound(const SerreGraph& g, std::size_t n, std::size_t k,
                             std::optional<double> mean_gamma = std::nullopt);

struct DistanceBound {
  double tree_rho = 0;
  mpq_class gap;            // (d-2) / (d (d-1)^{2 floor(R + k/2 + 1)})
  std::size_t exponent = 0; // floor(R + k/2 + 1)
  double value = 0;         // tree_rho + gap
};

DistanceBound distance_bound(unsigned d, std::size_t radius, std::size_t k);

struct EssentialGirthBound {
  double beta_max = 0;   // (alpha ^ 1) / (6 log(d-1) + 8 log 2)
  double k = 0;          // beta log log |G|
  double envelope = 0;   // (log |G|)^{-eps}
};

/// Throws PreconditionError unless beta + eps < beta_max.
EssentialGirthBound ess_girth_bound(double graph_size, unsigned d, double alpha, double beta,
                                    double eps);

/// Tree-neighbourhood report for the default beta = 1/(30 log(d-1)):
/// informational, with the observed constant c in
/// fraction >= 1 - c (log |G|)^{-beta}.
BoundReport ess_girth_report(const SerreGraph& g);

struct NullcycleInequality {
  mpz_class closed_walks;   // |W_{nk}(o,o)|
  double rhs = 0;           // (1/14) sum over nullcycles of exp(c_k chi / ell)
  double standard_error = 0;
  bool exact = false;
  BoundReport check;
};

/// |W_{nk}(o,o)| >= (1/14) sum_{w in N_{nk}} exp(c_k chi_w / ell). Exact by
/// enumeration when d^{nk} <= enum_limit, otherwise from `samples` draws
/// of the nullcycle sampler.
NullcycleInequality nullcycle_inequality(const SerreGraph& g, VertexId o, std::size_t n,
                                         std::size_t k, std::size_t ell, std::size_t samples,
                                         std::uint64_t seed,
                                         std::uint64_t enum_limit = 2'000'000);

}  // namespace ramanujan
