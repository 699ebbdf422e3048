#pragma once

// Exact walk counts on the d-regular tree T_d and on Z.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ramanujan/report.hpp"

namespace ramanujan {

/// c[n][k] = number of length-n walks in T_d from the root that end at
/// distance k. Also keeps a[n][k] = c[n][k] / S_k, the number of walks from
/// one fixed vertex at distance k to the root, with S_k = d (d-1)^(k-1).
class TreeWalkTables {
 public:
  TreeWalkTables(unsigned d, std::size_t nmax);

  unsigned degree() const noexcept { return d_; }
  std::size_t nmax() const noexcept { return nmax_; }

  /// Zero outside 0 <= k <= n <= nmax.
  const mpz_class& count(std::size_t n, std::size_t k) const;
  const mpz_class& per_vertex(std::size_t n, std::size_t k) const;
  mpz_class sphere_size(std::size_t k) const;
  mpq_class return_probability(std::size_t n) const;

  void save(std::ostream& out) const;
  /// Returns null if the stream does not hold a consistent table.
  static std::unique_ptr<TreeWalkTables> load(std::istream& in);

 private:
  TreeWalkTables() = default;
  void fill_per_vertex();

  unsigned d_ = 0;
  std::size_t nmax_ = 0;
  std::vector<std::vector<mpz_class>> c_;
  std::vector<std::vector<mpz_class>> a_;
};

/// Shared tables for (d, >= nmax). Uses an in-process cache, and a disk
/// cache in $RAMANUJAN_TABLE_CACHE when that variable is set.
std::shared_ptr<const TreeWalkTables> tree_walk_tables(unsigned d, std::size_t nmax);

/// Cache key used for on-disk tables, e.g. "treewalk-v1-d3-n512".
std::string tree_walk_cache_key(unsigned d, std::size_t nmax);

/// Cache keys of the tables held in this process, sorted.
std::vector<std::string> tree_walk_keys_in_use();

/// r_n = c[n][0] / d^n. Odd n throws unless allow_odd, then returns 0.
mpq_class return_probability(unsigned d, std::size_t n, bool allow_odd = false);

/// rho(T_d) = 2 sqrt(d-1) / d.
double tree_rho(unsigned d);

/// (2/3) rho^n n^{-3/2} < r_n < 10 rho^n n^{-3/2} for even 0 < n <= nmax,
/// decided exactly by squaring both sides. One report per n.
std::vector<BoundReport> check_return_bounds(unsigned d, std::size_t nmax);

/// n-th moment of the Kesten-McKay law of T_d (d >= 3), by the trapezoid
/// rule in the angle variable. Throws ConvergenceError if tol is not met.
double kesten_mckay_moment(unsigned d, std::size_t n, double tol = 1e-14);

/// Dyck-type path counts on Z: w[n][k] = C(n, (n+k)/2) paths from 0 to k,
/// w+[n][k] = (k/n) w[n][k] paths staying positive after time 0, and the
/// excursion column w+[n][0] (Catalan numbers).
class ExcursionTables {
 public:
  explicit ExcursionTables(std::size_t nmax);
  std::size_t nmax() const noexcept { return nmax_; }
  const mpz_class& paths(std::size_t n, std::size_t k) const;
  const mpz_class& positive_paths(std::size_t n, std::size_t k) const;
  const mpz_class& excursions(std::size_t n) const { return positive_paths(n, 0); }

 private:
  std::size_t nmax_;
  std::vector<std::vector<mpz_class>> w_;
  std::vector<std::vector<mpz_class>> wp_;
};

/// Expected number of visits to level k >= 1 of a uniform excursion of
/// length n on Z.
mpq_class excursion_visits_z(const ExcursionTables& t, std::size_t k, std::size_t n);
mpq_class excursion_visits_z(std::size_t k, std::size_t n);

/// P(|X_j| = k) for the uniform bridge of length n in T_d.
mpq_class bridge_distance_probability(const TreeWalkTables& t, std::size_t n, std::size_t j,
                                      std::size_t k);

/// Expected time the uniform bridge of length n in T_d spends at distance k.
mpq_class bridge_visit_expectation(const TreeWalkTables& t, std::size_t k, std::size_t n);
mpq_class bridge_visit_expectation(unsigned d, std::size_t k, std::size_t n);

/// Closed form printed for the infinite bridge:
/// (d-1)(d + (d-2)(|x|+1)) / (d + (d-2)(|x|-1)).
mpq_class infinite_bridge_ratio(unsigned d, std::size_t dist);

/// Limit of p_m(x+, o) / p_m(x-, o) for one child x+ of x and its parent x-:
/// (d + (d-2)(|x|+1)) / ((d-1)(d + (d-2)(|x|-1))).
mpq_class single_child_ratio_limit(unsigned d, std::size_t dist);

/// Limit of the total up/down ratio (all d-1 children against the parent):
/// (d + (d-2)(|x|+1)) / (d + (d-2)(|x|-1)).
mpq_class radial_ratio_limit(unsigned d, std::size_t dist);

/// Exact p_m(x+, o) / p_m(x-, o) from the tables.
mpq_class finite_bridge_ratio(const TreeWalkTables& t, std::size_t m, std::size_t dist);

/// Number of length-m walks from a vertex at distance k to the root, for all
/// k, scaled by a common positive factor. Long double; handles m in the 1e4s.
std::vector<long double> walk_to_root_profile(unsigned d, std::size_t m);

/// p_m(x+, o) / p_m(x-, o) in long double via walk_to_root_profile.
long double bridge_ratio_float(unsigned d, std::size_t dist, std::size_t m);

}  // namespace ramanujan
