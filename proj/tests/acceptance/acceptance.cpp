// Acceptance runner. `acceptance --criterion N` checks one criterion and
// prints a single PASS or FAIL line for it; supporting numbers are printed
// on indented lines before it. Exit status 0 means PASS.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ramanujan/bounds.hpp"
#include "ramanujan/constructions.hpp"
#include "ramanujan/errors.hpp"
#include "ramanujan/fixtures.hpp"
#include "ramanujan/fungroup.hpp"
#include "ramanujan/groups.hpp"
#include "ramanujan/limits.hpp"
#include "ramanujan/nullcycle.hpp"
#include "ramanujan/percolation.hpp"
#include "ramanujan/spectral.hpp"
#include "ramanujan/tree_m.hpp"
#include "ramanujan/tree_walk.hpp"

using namespace ramanujan;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void note(const std::string& s) { std::cout << "  " << s << '\n'; }

EdgeId edge_between(const SerreGraph& g, VertexId u, VertexId v) {
  for (auto e : g.out_edges(u))
    if (g.edge(e).target == v) return e;
  throw PreconditionError("no edge " + std::to_string(u) + "-" + std::to_string(v));
}

Walk walk_through(const SerreGraph& g, const std::vector<VertexId>& vs) {
  Walk w{vs.front(), {}};
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) w.edges.push_back(edge_between(g, vs[i], vs[i + 1]));
  return w;
}

/// Regular fixtures plus random regular graphs of degree 3 and 4.
std::vector<SerreGraph> fleet_graphs() {
  std::vector<SerreGraph> gs;
  for (auto& g : standard_fixtures())
    if (g.regular_degree() && *g.regular_degree() >= 2) gs.push_back(std::move(g));
  for (std::size_t d : {3u, 4u})
    for (std::size_t n : {64u, 256u, 1024u}) {
      auto g = configuration_model(d, n, 100 + n + d);
      g.set_name(fmt("cfg_d%zu_n%zu", d, n));
      gs.push_back(std::move(g));
    }
  return gs;
}

// ---------------------------------------------------------------- criteria

Outcome return_probability_window() {
  Timer t;
  std::size_t checked = 0, bad = 0;
  double worst = INFINITY;
  for (unsigned d : {3u, 4u, 5u, 6u})
    for (const auto& r : check_return_bounds(d, 200)) {
      ++checked;
      if (!r.passed()) ++bad;
      worst = std::min(worst, r.margin);
    }
  const double secs = t.seconds();
  note(fmt("%zu cases, smallest margin %.3g, %.2f s", checked, worst, secs));
  return {bad == 0 && checked == 400 && secs < 10,
          fmt("return-probability window holds in %zu/%zu cases (%.2f s)", checked - bad, checked, secs)};
}

Outcome kesten_mckay_moments() {
  double worst = 0;
  std::size_t cases = 0;
  for (unsigned d = 3; d <= 10; ++d)
    for (std::size_t n = 0; n <= 100; ++n) {
      const double exact = return_probability(d, n, true).get_d();
      worst = std::max(worst, std::fabs(kesten_mckay_moment(d, n) - exact));
      ++cases;
    }
  note(fmt("d = 3..10, n = 0..100: max error %.3g", worst));
  return {worst <= 1e-8, fmt("Kesten-McKay moments match exact returns, max error %.2g over %zu cases", worst, cases)};
}

Outcome visit_expectations() {
  ExcursionTables ex(400);
  mpq_class worst_z = 0;
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= 400; n += 2)
    for (std::size_t k = 1; k <= 10; ++k) {
      mpq_class v = excursion_visits_z(ex, k, n);
      mpq_class ratio = v / static_cast<unsigned long>(k);
      worst_z = std::max(worst_z, ratio);
      if (v > 64 * static_cast<unsigned long>(k)) ++bad;
    }
  note(fmt("excursions on Z: max v/k = %.4f (limit 64)", worst_z.get_d()));
  for (unsigned d : {3u, 4u}) {
    auto t = tree_walk_tables(d, 400);
    double worst_root = 0, worst_k = 0;
    for (std::size_t n = 2; n <= 400; n += 2)
      for (std::size_t k = 0; k <= n / 2; ++k) {
        mpq_class v = bridge_visit_expectation(*t, k, n);
        if (k == 0) {
          worst_root = std::max(worst_root, v.get_d());
          if (v > 301) ++bad;
        } else {
          worst_k = std::max(worst_k, v.get_d() / static_cast<double>(k));
          if (v > 20000 * static_cast<unsigned long>(k)) ++bad;
        }
      }
    note(fmt("T_%u bridges: max visits at the root %.4f (limit 301), max v/k = %.4f (limit 2e4)", d,
             worst_root, worst_k));
  }
  return {bad == 0, fmt("excursion and bridge visit bounds, %zu violations", bad)};
}

Outcome bridge_ratio() {
  const std::size_t m = 10000;
  auto fix = [](std::size_t len, std::size_t x) { return (len + x + 1) % 2 ? len - 1 : len; };
  double worst = 0, worst_corrected = 0, worst_extrapolated = 0;
  std::size_t bad = 0;
  for (unsigned d : {2u, 3u, 4u})
    for (std::size_t x = 1; x <= 5; ++x) {
      const double r = static_cast<double>(bridge_ratio_float(d, x, fix(m, x)));
      const double printed = infinite_bridge_ratio(d, x).get_d();
      const double err = std::fabs(r - printed);
      worst = std::max(worst, err);
      if (err > 1e-6) ++bad;
      const double child = single_child_ratio_limit(d, x).get_d();
      worst_corrected = std::max(worst_corrected, std::fabs(r - child));
      // Richardson step on the C/m term.
      const double r2 = static_cast<double>(bridge_ratio_float(d, x, fix(m / 2, x)));
      const double m1 = static_cast<double>(fix(m / 2, x)), m2 = static_cast<double>(fix(m, x));
      const double extrapolated = (m2 * r - m1 * r2) / (m2 - m1);
      worst_extrapolated = std::max(worst_extrapolated, std::fabs(extrapolated - child));
    }
  for (std::size_t x = 1; x <= 5; ++x)
    if (infinite_bridge_ratio(2, x) != 1) ++bad;
  note(fmt("m = %zu: max |finite - printed limit| = %.3g", m, worst));
  note(fmt("diagnostic: max |finite - single-child limit| = %.3g, after one Richardson step %.3g",
           worst_corrected, worst_extrapolated));
  return {bad == 0, fmt("bridge ratios within 1e-6 of the printed limit in %zu/15 cases", 15 - std::min<std::size_t>(bad, 15))};
}

Outcome sampler_exactness() {
  std::size_t graphs = 0, cases = 0, bad = 0;
  for (const auto& g : fleet_graphs()) {
    ++graphs;
    for (std::size_t n = 2; n <= 8; n += 2) {
      NullcycleSampler s(g, 0, n);
      auto all = enumerate_nullcycles(g, 0, n);
      const mpq_class uniform(1, all.size());
      mpq_class total = 0;
      bool ok = true;
      for (const auto& w : all) {
        auto p = s.path_probability(w);
        total += p;
        ok = ok && p == uniform;
      }
      ok = ok && total == 1;
      ++cases;
      if (!ok) {
        ++bad;
        note(fmt("%s n=%zu: not uniform", g.name().c_str(), n));
      }
    }
  }
  note(fmt("%zu graphs, n = 2, 4, 6, 8", graphs));
  return {bad == 0, fmt("sampler law equals the uniform law exactly in %zu/%zu cases", cases - bad, cases)};
}

Outcome visit_bounds() {
  std::size_t pass_finite = 0, pass_const = 0, na = 0, bad = 0, total = 0;
  double worst_ratio = 0;
  SpectrumOptions opts;
  opts.residual_limit = 0;
  for (const auto& g : fleet_graphs()) {
    const auto spec = markov_spectrum(g, opts);
    const VertexId o = 0;
    std::vector<std::vector<VertexId>> sets{{o}};
    std::vector<VertexId> nb{o};
    for (auto e : g.out_edges(o)) nb.push_back(g.edge(e).target);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    sets.push_back(nb);
    std::vector<VertexId> spread;
    for (VertexId v = 0; v < g.vertex_count(); v += std::max<std::size_t>(1, g.vertex_count() / 8)) spread.push_back(v);
    sets.push_back(spread);
    for (const auto& a : sets)
      for (std::size_t n : {4u, 8u, 16u, 30u}) {
        auto r = expected_visits(g, o, a, n, &spec);
        for (const auto* b : {&r.finite_bound, &r.constant_bound}) {
          ++total;
          if (b->failed()) {
            ++bad;
            note(fmt("%s |A|=%zu n=%zu: %s fails", g.name().c_str(), a.size(), n, b->name.c_str()));
          } else if (b->verdict == Verdict::kNotApplicable) {
            ++na;
          }
        }
        if (r.finite_bound.passed()) {
          ++pass_finite;
          worst_ratio = std::max(worst_ratio, r.finite_bound.lhs / r.finite_bound.rhs);
        }
        if (r.constant_bound.passed()) ++pass_const;
      }
  }
  note(fmt("finite bound passed %zu times (largest lhs/rhs %.3g); constant bound passed %zu times; %zu not applicable",
           pass_finite, worst_ratio, pass_const, na));
  return {bad == 0 && pass_finite > 0 && pass_const > 0,
          fmt("expected-visit bounds: %zu checks, %zu failures", total, bad)};
}

Outcome parity_bounds() {
  std::size_t cases = 0, mismatch = 0, over_exp = 0, over_half = 0;
  for (std::size_t n = 2; n <= 12; n += 2)
    for (std::size_t k = 2; k <= 6; ++k)
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<unsigned> x(k);
        for (std::size_t i = 0; i < k; ++i) x[i] = (mask >> i) & 1;
        auto r = parity_probability(n, x);
        ++cases;
        if (r.value != parity_probability_enumerated(n, x)) ++mismatch;
        if (!r.below_exp) ++over_exp;
        if (!r.below_half) {
          ++over_half;
          if (n <= 4) note(fmt("n=%zu k=%zu pattern %u: P = %s > 1/2", n, k, mask, r.value.get_str().c_str()));
        }
      }
  note(fmt("(a) %zu cases: %zu closed-form mismatches, %zu above the exp bound, %zu above 1/2", cases, mismatch,
           over_exp, over_half));

  std::size_t grid = 0, mc_bad = 0;
  for (std::size_t n : {20u, 60u, 200u, 1000u})
    for (auto [ell, m] : {std::pair<std::size_t, std::size_t>{1, 4}, {2, 8}, {3, 20}, {1, 60}, {2, 40}}) {
      std::vector<std::vector<std::size_t>> parts(m);
      for (std::size_t i = 0; i < m * ell; ++i) parts[i / ell].push_back(i);
      auto r = parity_partition_probability(n, parts, ell, 20000, 1000 * n + 10 * ell + m, 0);
      ++grid;
      const bool ok = r.check.verdict != Verdict::kFail && r.probability - 3 * r.standard_error <= r.bound;
      if (!ok) ++mc_bad;
      if (grid <= 3 || !ok)
        note(fmt("(b) n=%zu ell=%zu m=%zu: %.4f +- %.4f vs bound %.4f", n, ell, m, r.probability,
                 r.standard_error, r.bound));
    }
  note(fmt("(b) %zu-case grid: %zu violations", grid, mc_bad));
  return {mismatch == 0 && over_exp == 0 && over_half == 0 && mc_bad == 0,
          fmt("parity bounds: %zu exact mismatches, %zu cases above 1/2, %zu Monte Carlo violations", mismatch,
              over_half, mc_bad)};
}

Outcome spectral_cycle_suite() {
  Timer t;
  std::map<std::string, std::size_t> count;
  std::size_t bad = 0;
  SpectrumOptions opts;
  opts.residual_limit = 0;
  for (std::size_t d : {3u, 4u})
    for (std::size_t n : {256u, 1024u, 4096u}) {
      std::size_t pass = 0, na = 0;
      for (std::size_t i = 0; i < 10; ++i) {
        auto g = configuration_model(d, n, fleet_seed(5, n * 10 + d, i));
        auto spec = markov_spectrum(g, opts);
        for (std::size_t k = 1; k <= 3; ++k) {
          auto f = spectral_cycle_bound(g, k, &spec);
          const std::vector<BoundReport> reports{f.rho_bound, f.ramanujan, return_cycle_bound(g, 4, k, f.mean_gamma)};
          for (const auto* r = reports.data(); r != reports.data() + reports.size(); ++r) {
            ++count[to_string(r->verdict)];
            if (r->failed()) {
              ++bad;
              note(fmt("d=%zu n=%zu seed %zu k=%zu: %s fails (%.4g vs %.4g)", d, n, i, k, r->name.c_str(),
                       r->lhs, r->rhs));
            }
            if (r->passed()) ++pass;
            if (r->verdict == Verdict::kNotApplicable) ++na;
          }
        }
      }
      note(fmt("d=%zu n=%zu: %zu pass, %zu not applicable (%.1f s so far)", d, n, pass, na, t.seconds()));
    }
  const double secs = t.seconds();
  return {bad == 0 && count["pass"] > 0 && secs < 300,
          fmt("spectral cycle suite: %zu pass, %zu not applicable, %zu fail (%.1f s)", count["pass"],
              count["not applicable"], bad, secs)};
}

Outcome cogrowth_checks() {
  std::size_t bad = 0;
  for (std::size_t r = 1; r <= 6; ++r) {
    auto c = nonbacktracking_cogrowth(rose(r));
    const double rho = grigorchuk_rho(2 * r, c.alpha);
    if (std::fabs(c.alpha - (2.0 * r - 1)) > 1e-8 || std::fabs(rho - 1) > 1e-8) ++bad;
  }
  note(bad ? "rose family: mismatch" : "rose family r = 1..6: alpha = 2r-1, cogrowth rho = 1");
  auto k4 = tree_m_ramanujan(complete_graph(4), 5);
  auto k4below = tree_m_ramanujan(complete_graph(4), 4);
  const bool boundary = k4.exact && k4.threshold == 5 && k4.ramanujan && !k4below.ramanujan;
  note(fmt("K4: threshold %.0f, exact %d, Ramanujan at m=5 %d, at m=4 %d", k4.threshold, k4.exact, k4.ramanujan,
           k4below.ramanujan));
  const std::size_t n = 40, m = 4;
  double worst = 0, worst_ratio = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = random_bounded_degree_graph(16, m, 8, seed);
    auto c = nonbacktracking_cogrowth(g, m);
    auto counts = tree_m_return_counts(g, m, 0, 2 * n + 2);
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), m, 2 * n);
    const double p = mpq_class(counts[2 * n], denom).get_d();
    const double direct = std::pow(p, 1.0 / (2 * n));
    // Ratio estimator with the n^{-3/2} factor of the tree-like regime removed.
    const double ratio = std::sqrt(mpq_class(counts[2 * n + 2], counts[2 * n] * m * m).get_d() *
                                   std::pow((n + 1.0) / n, 1.5));
    worst = std::max(worst, std::fabs(direct - c.rho_cover));
    worst_ratio = std::max(worst_ratio, std::fabs(ratio - c.rho_cover));
    note(fmt("seed %llu: alpha %.4f, cogrowth rho %.5f, p_80^(1/80) %.5f, ratio estimate %.5f",
             static_cast<unsigned long long>(seed), c.alpha, c.rho_cover, direct, ratio));
  }
  note(fmt("max |p_2n^(1/2n) - rho| = %.4f at n = %zu; ratio diagnostic %.4f", worst, n, worst_ratio));
  return {bad == 0 && boundary && worst <= 0.02,
          fmt("cogrowth: rose %s, K4 boundary %s, direct estimates within %.4f (limit 0.02)", bad ? "bad" : "ok",
              boundary ? "exact" : "missed", worst)};
}

Outcome schreier_quotients() {
  std::vector<FiniteGroup> groups{symmetric_group(4), symmetric_group_all_transpositions(4), dihedral_group(6),
                                  alternating_group_5(), klein_four_group()};
  std::size_t ok = 0;
  for (const auto& grp : groups) {
    auto cover = cayley_graph(grp);
    auto q = schreier_quotient(grp, 0);
    auto sc = markov_spectrum(cover);
    auto sq = markov_spectrum(q.quotient);
    bool contained = true;
    for (double x : sq.eigenvalues) {
      bool found = false;
      for (double y : sc.eigenvalues) found = found || std::fabs(x - y) <= 1e-8;
      contained = contained && found;
    }
    const bool good = q.covering_verified && q.loop_at_identity && contained && sq.rho <= sc.rho + 1e-8;
    note(fmt("%s: |G| = %zu, quotient %zu vertices, covering %d, loop %d, contained %d, rho %.6f <= %.6f",
             grp.name.c_str(), grp.order, q.quotient.vertex_count(), q.covering_verified, q.loop_at_identity,
             contained, sq.rho, sc.rho));
    ok += good;
  }
  return {ok == groups.size(), fmt("Schreier quotients verified for %zu/%zu Cayley fixtures", ok, groups.size())};
}

Outcome kappa_checks() {
  std::size_t instances = 0, non_monotone = 0;
  auto rose2 = kappa_estimate(rose(2), 0, 0, 1, 200);
  struct Case {
    SerreGraph g;
    VertexId x, y;
    std::size_t k, mmax;
  };
  std::vector<Case> cases;
  cases.push_back({complete_graph(4), 0, 0, 2, 12});
  cases.push_back({complete_graph(4), 0, 1, 3, 8});
  cases.push_back({petersen_graph(), 0, 0, 2, 12});
  cases.push_back({cycle_graph(6), 0, 3, 3, 20});
  cases.push_back({half_loop_bouquet(3), 0, 0, 2, 12});
  cases.push_back({configuration_model(3, 12, 1), 0, 0, 2, 10});
  cases.push_back({rose(3), 0, 0, 2, 20});
  std::vector<KappaEstimate> all{rose2};
  for (const auto& c : cases) all.push_back(kappa_estimate(c.g, c.x, c.y, c.k, c.mmax));
  for (const auto& e : all) {
    ++instances;
    if (!e.monotone) ++non_monotone;
  }
  const double target = std::sqrt(3.0) / 2;
  const double at200 = rose2.kappa_hat.size() >= 200 ? rose2.kappa_hat[199] : NAN;
  note(fmt("%zu instances, %zu not monotone", instances, non_monotone));
  note(fmt("rose r=2, k=1: kappa_hat_200 = %.6f, sqrt(3)/2 = %.6f, extrapolated %.6f", at200, target,
           kappa_extrapolate(rose2)));

  std::size_t conj_bad = 0;
  {
    auto g = complete_graph(4);
    auto a = kappa_word_returns(g, walk_through(g, {2, 0}), 1, 2, 3);
    auto b = kappa_word_returns(g, walk_through(g, {2, 3, 1, 0}), 1, 2, 3);
    auto e = kappa_estimate(g, 0, 1, 2, 2);
    conj_bad += a != b;
    for (std::size_t j = 0; j <= 3; ++j) conj_bad += e.returns[j] != a[j];
  }
  {
    auto g = petersen_graph();
    auto a = kappa_word_returns(g, walk_through(g, {1, 0}), 5, 2, 4);
    auto b = kappa_word_returns(g, walk_through(g, {1, 2, 3, 4, 0}), 5, 2, 4);
    conj_bad += a != b;
  }
  {
    auto g = rose(2);
    auto a = kappa_word_returns(g, Walk{0, {}}, 0, 1, 6);
    auto b = kappa_word_returns(g, Walk{0, {g.out_edges(0)[0]}}, 0, 1, 6);
    conj_bad += a != b;
  }
  note(fmt("conjugation invariance: %zu mismatches", conj_bad));
  const bool close = std::fabs(at200 - target) <= 1e-2;
  return {non_monotone == 0 && close && conj_bad == 0,
          fmt("kappa: monotone %zu/%zu, rose |kappa_hat_200 - sqrt(3)/2| = %.4f, conjugation %s",
              instances - non_monotone, instances, std::fabs(at200 - target), conj_bad ? "broken" : "exact")};
}

Outcome percolation_growth_check() {
  Timer t;
  const std::size_t seeds = 20, size = 400, nmax = 40;
  std::size_t pass = 0, monotone = 0;
  double lo = INFINITY, hi = 0;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    auto run = conditioned_growth(size, 0.9, seed, nmax);
    const double v = run.estimate.value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (v >= 2.6) ++pass;
    auto up = percolation_growth(size, 0.95, attempt_seed(seed, run.attempt), nmax);
    bool mono = up.estimate.value >= v;
    for (std::size_t n = 0; n <= nmax; ++n) mono = mono && up.sizes[n] >= run.sizes[n];
    monotone += mono;
    if (!mono || v < 2.6)
      note(fmt("seed %llu: estimate %.4f over n = %zu..%zu, p=0.95 %.4f", static_cast<unsigned long long>(seed), v,
               run.estimate.from, run.estimate.to, up.estimate.value));
  }
  const double secs = t.seconds();
  note(fmt("estimates in [%.4f, %.4f]; %zu/%zu seeds >= 2.6; monotone in p on %zu/%zu; %.1f s", lo, hi, pass,
           seeds, monotone, seeds, secs));
  return {10 * pass >= 9 * seeds && monotone == seeds && secs < 120,
          fmt("percolation growth >= 2.6 on %zu/%zu seeds, monotone in p on %zu/%zu (%.1f s)", pass, seeds,
              monotone, seeds, secs)};
}

Outcome weakly_ramanujan_fleet() {
  FleetOptions plain;
  plain.sizes = {128, 256, 512, 1024};
  plain.seeds = 10;
  plain.kmax = 3;
  FleetOptions planted = plain;
  planted.planted_density = 0.1;
  auto a = summarize_fleet(run_fleet(plain));
  auto b = summarize_fleet(run_fleet(planted));
  bool ok = a.size() == b.size();
  for (std::size_t i = 0; ok && i < a.size(); ++i) {
    const double delta = 1 - b[i].mean_mass;
    const double se = std::sqrt(a[i].sd_mass * a[i].sd_mass / a[i].count + b[i].sd_mass * b[i].sd_mass / b[i].count);
    const double gap = a[i].mean_mass - b[i].mean_mass;
    const bool row = delta > 0 && gap > 3 * se;
    note(fmt("n=%zu: plain %.5f (sd %.5f), planted %.5f (sd %.5f), delta %.5f, gap %.5f = %.1f sigma", a[i].n,
             a[i].mean_mass, a[i].sd_mass, b[i].mean_mass, b[i].sd_mass, delta, gap, se > 0 ? gap / se : INFINITY));
    ok = ok && row;
  }
  return {ok, fmt("weakly Ramanujan mass: plain fleet above planted fleet at %s size", ok ? "every" : "not every")};
}

const std::vector<std::function<Outcome()>>& criteria() {
  static const std::vector<std::function<Outcome()>> all{
      return_probability_window, kesten_mckay_moments, visit_expectations, bridge_ratio,
      sampler_exactness,         visit_bounds,         parity_bounds,       spectral_cycle_suite,
      cogrowth_checks,           schreier_quotients,   kappa_checks,       percolation_growth_check,
      weakly_ramanujan_fleet};
  return all;
}

int run_one(std::size_t id) {
  Outcome o;
  try {
    o = criteria().at(id - 1)();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  std::cout << fmt("criterion %2zu: %s  %s", id, o.pass ? "PASS" : "FAIL", o.summary.c_str()) << std::endl;
  return o.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::size_t id = 0;
  app.add_option("--criterion", id, "criterion number; all when omitted")->check(CLI::Range(1, 13));
  CLI11_PARSE(app, argc, argv);
  if (id) return run_one(id);
  int status = 0;
  for (std::size_t i = 1; i <= criteria().size(); ++i) status |= run_one(i);
  return status;
}
