#pragma once

// Nontrivial closed-walk counts and tree-neighbourhood profiles.
//
// A nontrivial k-cycle is a rooted, directed closed walk of length k that
// classify_cycle() calls nontrivial. Densities are per vertex, so the
// density of G equals the mean of the per-root counts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ramanujan/graph.hpp"

namespace ramanujan {

/// Nontrivial closed walks of length k at v. Throws BudgetError when
/// max_degree^k exceeds `budget`; use gamma_k_estimate instead.
std::uint64_t gamma_k(const SerreGraph& g, VertexId v, std::size_t k,
                      std::uint64_t budget = 100'000'000);

struct GammaEstimate {
  double value = 0;
  double standard_error = 0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of gamma_k(v) from uniform k-step walks
/// (regular graphs only).
GammaEstimate gamma_k_estimate(const SerreGraph& g, VertexId v, std::size_t k,
                               std::size_t samples, std::uint64_t seed);

struct CycleCensus {
  std::size_t k = 0;
  std::vector<std::uint64_t> per_vertex;
  std::uint64_t total = 0;
  double density = 0;  // total / |G|, equal to the mean per-root count
};

CycleCensus cycle_census(const SerreGraph& g, std::size_t k,
                         std::uint64_t budget = 100'000'000);

/// Largest r such that the r-ball at v is a loop-free tree, capped at
/// rmax (returns rmax when no cycle closes within distance rmax, and 0
/// when v itself carries a loop).
std::size_t tree_radius(const SerreGraph& g, VertexId v, std::size_t rmax);

struct GirthProfile {
  std::vector<double> fraction;  // fraction[r-1]: vertices whose r-ball is a tree
  std::vector<std::size_t> tree_radius;
  std::optional<double> beta;       // 1 / (30 log(d-1)), d = max degree >= 3
  std::optional<double> threshold;  // beta log log |G|, when defined
};

GirthProfile essential_girth_profile(const SerreGraph& g, std::size_t rmax);

}  // namespace ramanujan
