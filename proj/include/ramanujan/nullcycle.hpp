#pragma once

// Uniform nullcycles (closed walks that reduce to the empty word), cycle
// triviality, the chi statistic, expected visits and parity probabilities.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ramanujan/graph.hpp"
#include "ramanujan/random.hpp"
#include "ramanujan/report.hpp"
#include "ramanujan/spectral.hpp"
#include "ramanujan/tree_walk.hpp"

namespace ramanujan {

struct Walk {
  VertexId start = 0;
  std::vector<EdgeId> edges;
  std::size_t length() const noexcept { return edges.size(); }
};

/// Vertices w_0 .. w_n. Throws PreconditionError if consecutive edges do
/// not connect.
std::vector<VertexId> walk_vertices(const SerreGraph& g, const Walk& w);

/// Free reduction: repeatedly cancel e followed by inv(e).
std::vector<EdgeId> reduce_walk(const SerreGraph& g, const std::vector<EdgeId>& edges);
bool is_nullcycle(const SerreGraph& g, const Walk& w);

/// All nullcycles of length n at root, by brute force over d^n walks.
/// Throws BudgetError past `budget` walks.
std::vector<Walk> enumerate_nullcycles(const SerreGraph& g, VertexId root, std::size_t n,
                                       std::size_t budget = 20'000'000);

class NullcycleSampler {
 public:
  /// Throws PreconditionError for odd n or a non-regular graph.
  NullcycleSampler(const SerreGraph& g, VertexId root, std::size_t n);

  struct Step {
    std::vector<EdgeId> edges;
    std::vector<mpz_class> weights;  // unnormalized; sums to a[remaining][depth]
  };

  /// Candidate edges and weights from vertex `at` with `remaining` steps
  /// left, tree depth `depth` and stack top `top` (none at depth 0).
  Step step_weights(VertexId at, std::optional<EdgeId> top, std::size_t depth,
                    std::size_t remaining) const;

  Walk sample(Rng& rng) const;

  /// Probability that sample() returns w, as the product of its step
  /// probabilities (zero if w is not a nullcycle of the right length).
  mpq_class path_probability(const Walk& w) const;

  const SerreGraph& graph() const noexcept { return *g_; }
  VertexId root() const noexcept { return root_; }
  std::size_t length() const noexcept { return n_; }

 private:
  const SerreGraph* g_;
  VertexId root_;
  std::size_t n_;
  std::shared_ptr<const TreeWalkTables> tables_;
};

struct CycleClassification {
  bool trivial = false;
  std::optional<EdgeId> witness;  // an edge traversed more often than its reverse
};

/// Trivial iff every directed edge is traversed as often as its reverse
/// (half-loops are their own reverse). A single-step cycle along a loop is
/// nontrivial. Throws PreconditionError if the walk is not closed.
CycleClassification classify_cycle(const SerreGraph& g, const Walk& w);

/// Number of j in [0, len/k) such that the segment [jk, jk+k] is a
/// nontrivial closed k-walk and w_{jk} occurs at most ell times among
/// w_0 .. w_len. Throws PreconditionError if k does not divide the length.
std::size_t chi_statistic(const SerreGraph& g, const Walk& w, std::size_t k, std::size_t ell);

/// Exact counts of non-backtracking walks of length k from root ending at
/// each vertex, k = 0..kmax.
std::vector<std::vector<mpz_class>> nonbacktracking_endpoint_counts(const SerreGraph& g,
                                                                    VertexId root,
                                                                    std::size_t kmax);

struct VisitsReport {
  mpq_class expected;     // E V_A, exact
  double rho = 0;
  BoundReport finite_bound;    // 4e4 |A| (1/(1-rho)^2 + 72 n^2/|G|)
  BoundReport constant_bound;  // 2e7 |A| when rho <= 19/20 and n^2 <= |G|
};

/// Expected number of times j in [0, n] that a uniform nullcycle of
/// length n at root is in A. The spectrum is computed unless supplied.
VisitsReport expected_visits(const SerreGraph& g, VertexId root, const std::vector<VertexId>& a,
                             std::size_t n, const SpectralSummary* spectrum = nullptr);

/// Same value without the spectral bound checks.
mpq_class expected_visits_value(const SerreGraph& g, VertexId root,
                                const std::vector<VertexId>& a, std::size_t n);

struct ParityReport {
  mpq_class value;        // P(X = x mod 2)
  mpq_class binomial_bound;  // C(n/2+k-1, k-1) / C(n+k-1, k-1)
  double exp_bound = 0;   // exp(-1/(4/k + 2/n))
  bool parity_mismatch = false;
  bool below_binomial = false;
  bool below_exp = false;
  bool below_half = false;
  std::string note;
};

/// X uniform on k-tuples of nonnegative integers with sum n (n even).
ParityReport parity_probability(std::size_t n, const std::vector<unsigned>& pattern);

/// P(X = x mod 2) by listing all C(n+k-1, k-1) tuples.
mpq_class parity_probability_enumerated(std::size_t n, const std::vector<unsigned>& pattern);

struct PartitionReport {
  double probability = 0;
  double standard_error = 0;  // 0 when exact
  bool exact = false;
  mpq_class exact_value;      // set when exact
  std::size_t parts = 0;      // m
  double bound = 0;           // 14 exp(-min(m, n/ell)/14)
  BoundReport check;
};

/// P(sum over each part of X_i is even). Exact when C(n+k-1, k-1) <=
/// exact_limit, otherwise Monte Carlo with `samples` draws.
PartitionReport parity_partition_probability(std::size_t n,
                                             const std::vector<std::vector<std::size_t>>& partition,
                                             std::size_t ell, std::size_t samples,
                                             std::uint64_t seed,
                                             std::size_t exact_limit = 10'000'000);

}  // namespace ramanujan
