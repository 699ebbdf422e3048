#include "ramanujan/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ramanujan/census.hpp"
#include "ramanujan/constructions.hpp"
#include "ramanujan/errors.hpp"
#include "ramanujan/patterns.hpp"
#include "ramanujan/tree_walk.hpp"

namespace ramanujan {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool non_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1] + 1e-12) return false;
  return true;
}

}  // namespace

mpq_class PatternHistogram::frequency(const std::string& canonical) const {
  auto it = counts.find(canonical);
  if (it == counts.end() || vertices == 0) return 0;
  mpq_class q(static_cast<unsigned long>(it->second), static_cast<unsigned long>(vertices));
  q.canonicalize();
  return q;
}

PatternHistogram bs_histogram(const SerreGraph& g, std::size_t r) {
  PatternHistogram h;
  h.radius = r;
  h.vertices = g.vertex_count();
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++h.counts[ball(g, v, r).canonical];
  return h;
}

double tree_ball_defect(const SerreGraph& g, std::size_t r) {
  if (g.vertex_count() == 0) return 0;
  std::size_t bad = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (tree_radius(g, v, r) < r) ++bad;
  return static_cast<double>(bad) / static_cast<double>(g.vertex_count());
}

double kesten_mckay_cdf(unsigned d, double x) {
  if (d < 3) throw PreconditionError("Kesten-McKay law needs d >= 3");
  const double rho = tree_rho(d);
  if (x <= -rho) return 0;
  if (x >= rho) return 1;
  // x = rho cos(theta); the density becomes smooth in theta.
  const double a = std::acos(x / rho), b = std::numbers::pi;
  auto f = [&](double t) {
    const double s = std::sin(t), c = std::cos(t);
    return s * s / (1 - rho * rho * c * c);
  };
  const std::size_t m = 256;
  const double h = (b - a) / m;
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < m; ++i) sum += f(a + h * i) * (i % 2 ? 4 : 2);
  return std::clamp(d * rho * rho / (2 * std::numbers::pi) * sum * h / 3, 0.0, 1.0);
}

double wasserstein_to_kesten_mckay(const std::vector<double>& eigenvalues, unsigned d) {
  if (eigenvalues.empty()) return kNaN;
  std::vector<double> ev = eigenvalues;
  std::sort(ev.begin(), ev.end());
  // Breakpoints: a uniform grid plus the atoms. Between breakpoints the
  // empirical CDF is constant and the Kesten-McKay CDF is smooth.
  const std::size_t grid = 4000;
  std::vector<double> pts;
  pts.reserve(grid + ev.size() + 1);
  for (std::size_t i = 0; i <= grid; ++i) pts.push_back(-1.0 + 2.0 * i / grid);
  for (double x : ev) pts.push_back(std::clamp(x, -1.0, 1.0));
  std::sort(pts.begin(), pts.end());
  const double n = static_cast<double>(ev.size());
  double w = 0;
  std::size_t below = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    if (hi <= lo) continue;
    while (below < ev.size() && ev[below] <= lo) ++below;
    const double fg = static_cast<double>(below) / n;
    const double mid = 0.5 * (lo + hi);
    w += std::fabs(fg - kesten_mckay_cdf(d, mid)) * (hi - lo);
  }
  return w;
}

std::vector<double> mean_return_probabilities(const SerreGraph& g, std::size_t kmax) {
  const std::size_t n = g.vertex_count();
  std::vector<double> mean(kmax + 1, 0.0);
  std::vector<double> x(n), y(n);
  for (VertexId v = 0; v < n; ++v) {
    std::fill(x.begin(), x.end(), 0.0);
    x[v] = 1;
    mean[0] += 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
      markov_apply(g, x, y);
      std::swap(x, y);
      mean[k] += x[v];
    }
  }
  for (auto& m : mean) m /= static_cast<double>(n);
  return mean;
}

double weakly_ramanujan_mass(const SpectralSummary& s) {
  if (s.eigenvalues.empty()) return kNaN;
  const double edge = tree_rho(static_cast<unsigned>(s.degree)) + std::max(s.residual, 1e-9);
  std::size_t inside = 0;
  for (double x : s.eigenvalues)
    if (std::fabs(x) <= edge) ++inside;
  return static_cast<double>(inside) / static_cast<double>(s.eigenvalues.size());
}

double weakly_ramanujan_mass(const SerreGraph& g) {
  SpectrumOptions opts;
  opts.residual_limit = 0;
  opts.dense_limit = std::max<std::size_t>(opts.dense_limit, g.vertex_count());
  return weakly_ramanujan_mass(markov_spectrum(g, opts));
}

namespace {

LocalStatsRow analyse(const SerreGraph& g, std::size_t r, std::size_t kmax,
                      const SpectrumOptions& opts, double* residual) {
  LocalStatsRow row;
  row.label = g.name();
  row.vertices = g.vertex_count();
  for (std::size_t L = 1; L <= kmax; ++L) row.cycle_density.push_back(cycle_census(g, L).density);
  row.tree_defect = tree_ball_defect(g, r);
  auto s = markov_spectrum(g, opts);
  if (residual) *residual = s.residual;
  row.rho = s.rho;
  row.mass = weakly_ramanujan_mass(s);
  if (s.eigenvalues.empty()) {
    row.wasserstein = kNaN;
    row.moment_error = kNaN;
    return row;
  }
  row.wasserstein = wasserstein_to_kesten_mckay(s.eigenvalues, static_cast<unsigned>(s.degree));
  const std::size_t km = 20;
  auto walks = mean_return_probabilities(g, km);
  std::vector<double> pw(s.eigenvalues.size(), 1.0);
  for (std::size_t k = 0; k <= km; ++k) {
    double m = 0;
    for (double p : pw) m += p;
    m /= static_cast<double>(pw.size());
    row.moment_error = std::max(row.moment_error, std::fabs(m - walks[k]));
    for (std::size_t i = 0; i < pw.size(); ++i) pw[i] *= s.eigenvalues[i];
  }
  return row;
}

}  // namespace

LocalLimitReport local_limit_diagnostic(const std::vector<SerreGraph>& graphs, std::size_t r,
                                       std::size_t kmax) {
  LocalLimitReport rep;
  rep.radius = r;
  rep.kmax = kmax;
  SpectrumOptions opts;
  opts.residual_limit = 0;
  for (const auto& g : graphs) {
    if (!g.regular_degree()) throw PreconditionError("local limit diagnostic needs regular graphs");
    rep.rows.push_back(analyse(g, r, kmax, opts, nullptr));
  }
  std::vector<double> cyc, def, w;
  for (const auto& row : rep.rows) {
    double c = 0;
    for (double x : row.cycle_density) c += x;
    cyc.push_back(c);
    def.push_back(row.tree_defect);
    w.push_back(row.wasserstein);
  }
  rep.cycles_decreasing = non_increasing(cyc);
  rep.defect_decreasing = non_increasing(def);
  rep.wasserstein_decreasing = non_increasing(w);
  return rep;
}

std::uint64_t fleet_seed(std::uint64_t base_seed, std::size_t n, std::size_t i) {
  // splitmix64 of a packed key.
  std::uint64_t z = base_seed * 0x9E3779B97F4A7C15ull + (static_cast<std::uint64_t>(n) << 20) + i;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

FleetRow fleet_row(const FleetOptions& opts, std::size_t n, std::size_t i) {
  if (opts.planted_density < 0 || 3 * opts.planted_density > 1)
    throw PreconditionError("planted density must lie in [0, 1/3]");
  SpectrumOptions sopts;
  sopts.residual_limit = 0;
  sopts.dense_limit = std::max(sopts.dense_limit, n);
  FleetRow row;
  row.d = opts.d;
  row.n = n;
  row.seed = fleet_seed(opts.base_seed, n, i);
  row.triangles = static_cast<std::size_t>(std::llround(opts.planted_density * static_cast<double>(n)));
  auto g = row.triangles ? planted_triangles(opts.d, n, row.triangles, row.seed)
                         : configuration_model(opts.d, n, row.seed);
  row.stats = analyse(g, opts.radius, opts.kmax, sopts, &row.residual);
  return row;
}

std::vector<FleetRow> run_fleet(const FleetOptions& opts) {
  std::vector<FleetRow> rows;
  for (std::size_t n : opts.sizes)
    for (std::size_t i = 0; i < opts.seeds; ++i) rows.push_back(fleet_row(opts, n, i));
  return rows;
}

std::vector<FleetSummary> summarize_fleet(const std::vector<FleetRow>& rows) {
  std::map<std::size_t, std::vector<const FleetRow*>> by_size;
  for (const auto& r : rows) by_size[r.n].push_back(&r);
  std::vector<FleetSummary> out;
  for (const auto& [n, group] : by_size) {
    FleetSummary s;
    s.n = n;
    s.count = group.size();
    for (auto* r : group) {
      s.mean_mass += r->stats.mass;
      s.mean_wasserstein += r->stats.wasserstein;
      s.mean_defect += r->stats.tree_defect;
    }
    const double c = static_cast<double>(s.count);
    s.mean_mass /= c;
    s.mean_wasserstein /= c;
    s.mean_defect /= c;
    double v = 0;
    for (auto* r : group) v += (r->stats.mass - s.mean_mass) * (r->stats.mass - s.mean_mass);
    s.sd_mass = s.count > 1 ? std::sqrt(v / (c - 1)) : 0;
    out.push_back(s);
  }
  return out;
}

}  // namespace ramanujan
