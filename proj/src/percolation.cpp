#include "ramanujan/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "ramanujan/errors.hpp"
#include "ramanujan/random.hpp"

namespace ramanujan {

PercolationWindow percolate(std::size_t width, std::size_t height, double p, std::uint64_t seed) {
  if (!(p >= 0 && p <= 1)) throw PreconditionError("open probability must lie in [0, 1]");
  if (width == 0 || height == 0) throw PreconditionError("empty window");
  PercolationWindow w;
  w.width = width;
  w.height = height;
  w.p = p;
  w.seed = seed;
  const std::size_t n = width * height;
  w.open.resize(n);
  auto rng = make_stream(seed, 9);
  for (std::size_t i = 0; i < n; ++i) w.open[i] = uniform01(rng) < p;
  w.origin_site = (height / 2) * width + width / 2;
  if (!w.open[w.origin_site]) {
    w.cluster = GraphBuilder(0).build("percolation_empty");
    return w;
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kNone), dist;
  std::deque<std::size_t> queue{w.origin_site};
  index[w.origin_site] = 0;
  w.sites.push_back(w.origin_site);
  dist.push_back(0);
  w.boundary_distance = kNone;
  auto on_edge = [&](std::size_t s) {
    const std::size_t x = s % width, y = s / width;
    return x == 0 || y == 0 || x + 1 == width || y + 1 == height;
  };
  auto neighbours = [&](std::size_t s, auto&& f) {
    const std::size_t x = s % width, y = s / width;
    if (x + 1 < width) f(s + 1);
    if (x > 0) f(s - 1);
    if (y + 1 < height) f(s + width);
    if (y > 0) f(s - width);
  };
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    const auto ds = dist[index[s]];
    if (on_edge(s)) w.boundary_distance = std::min(w.boundary_distance, ds);
    neighbours(s, [&](std::size_t t) {
      if (!w.open[t] || index[t] != kNone) return;
      index[t] = w.sites.size();
      w.sites.push_back(t);
      dist.push_back(ds + 1);
      queue.push_back(t);
    });
  }
  w.reaches_boundary = w.boundary_distance != kNone;

  GraphBuilder b(w.sites.size());
  for (std::size_t i = 0; i < w.sites.size(); ++i) {
    const auto s = w.sites[i];
    const std::size_t x = s % width, y = s / width;
    if (x + 1 < width && index[s + 1] != kNone)
      b.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(index[s + 1]));
    if (y + 1 < height && index[s + width] != kNone)
      b.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(index[s + width]));
  }
  w.cluster = std::move(b).build("percolation_" + std::to_string(width) + "x" +
                                 std::to_string(height) + "_s" + std::to_string(seed));
  return w;
}

std::vector<mpz_class> cover_sphere_sizes(const SerreGraph& g, VertexId root, std::size_t nmax,
                                          LoopPolicy policy) {
  if (root >= g.vertex_count()) throw PreconditionError("root out of range");
  auto usable = [&](EdgeId e) { return policy == LoopPolicy::kUnfold || !g.is_half_loop(e); };

  // Paths of length <= nmax never leave the (nmax-1)-ball as a source.
  auto dist = bfs_distances(g, root);
  std::vector<EdgeId> active;
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> slot(g.edge_count(), kNone);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (usable(e) && dist[g.edge(e).source] < nmax) {
      slot[e] = static_cast<std::uint32_t>(active.size());
      active.push_back(e);
    }

  std::vector<mpz_class> sizes{1};
  std::vector<mpz_class> cur(active.size()), next(active.size());
  if (nmax == 0) return sizes;
  mpz_class total = 0;
  for (auto e : g.out_edges(root))
    if (slot[e] != kNone) {
      cur[slot[e]] = 1;
      ++total;
    }
  sizes.push_back(total);
  for (std::size_t n = 2; n <= nmax; ++n) {
    for (auto& x : next) x = 0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (cur[i] == 0) continue;
      const EdgeId e = active[i];
      for (auto f : g.out_edges(g.edge(e).target)) {
        if (f == g.inverse(e) || slot[f] == kNone) continue;
        next[slot[f]] += cur[i];
      }
    }
    std::swap(cur, next);
    total = 0;
    for (const auto& x : cur) total += x;
    sizes.push_back(total);
  }
  return sizes;
}

GrowthEstimate lower_growth_estimate(const std::vector<mpz_class>& sizes, double tail_fraction,
                                     std::size_t clean_limit) {
  if (sizes.size() < 2) throw PreconditionError("need |S_n| for some n >= 1");
  if (!(tail_fraction > 0 && tail_fraction <= 1))
    throw PreconditionError("tail fraction must lie in (0, 1]");
  const std::size_t nmax = sizes.size() - 1;
  GrowthEstimate g;
  g.from = std::max<std::size_t>(
      1, nmax - static_cast<std::size_t>(std::floor(tail_fraction * static_cast<double>(nmax))));
  g.to = nmax;
  if (clean_limit < g.to) {
    g.boundary_truncated = true;
    g.to = clean_limit;
  }
  if (g.to < g.from) {
    g.value = std::numeric_limits<double>::quiet_NaN();
    return g;
  }
  g.value = std::numeric_limits<double>::infinity();
  for (std::size_t n = g.from; n <= g.to; ++n) {
    double v = 0;
    if (sizes[n] > 0) {
      long exp = 0;
      const double mant = mpz_get_d_2exp(&exp, sizes[n].get_mpz_t());
      v = std::exp((std::log(mant) + static_cast<double>(exp) * std::log(2.0)) / static_cast<double>(n));
    }
    g.value = std::min(g.value, v);
  }
  return g;
}

GrowthRun percolation_growth(std::size_t size, double p, std::uint64_t seed, std::size_t nmax,
                             double tail_fraction, LoopPolicy policy) {
  GrowthRun run;
  run.window = percolate(size, size, p, seed);
  if (run.window.empty()) {
    run.sizes.assign(nmax + 1, 0);
    run.sizes[0] = 1;
  } else {
    auto reg = add_half_loops_to_regularize(run.window.cluster, 4);
    run.sizes = cover_sphere_sizes(reg, 0, nmax, policy);
  }
  // A radius-n ball is clean when it stays strictly inside the window.
  const std::size_t clean =
      run.window.reaches_boundary ? run.window.boundary_distance - 1 : SIZE_MAX;
  if (nmax == 0) return run;
  run.estimate = lower_growth_estimate(run.sizes, tail_fraction, run.window.empty() ? 0 : clean);
  return run;
}

std::uint64_t attempt_seed(std::uint64_t seed, std::size_t attempt) {
  return attempt == 0 ? seed : seed ^ (0x9E3779B97F4A7C15ull * attempt);
}

GrowthRun conditioned_growth(std::size_t size, double p, std::uint64_t seed, std::size_t nmax,
                             double tail_fraction, LoopPolicy policy, std::size_t max_attempts) {
  for (std::size_t a = 0; a < max_attempts; ++a) {
    auto w = percolate(size, size, p, attempt_seed(seed, a));
    if (!w.reaches_boundary) continue;
    auto run = percolation_growth(size, p, attempt_seed(seed, a), nmax, tail_fraction, policy);
    run.attempt = a;
    return run;
  }
  throw ConvergenceError("origin cluster never reached the window edge", static_cast<double>(max_attempts));
}

bool coupling_monotone(std::size_t width, std::size_t height, double p_low, double p_high,
                       std::uint64_t seed) {
  auto lo = percolate(width, height, p_low, seed);
  auto hi = percolate(width, height, p_high, seed);
  for (std::size_t i = 0; i < lo.open.size(); ++i)
    if (lo.open[i] && !hi.open[i]) return false;
  std::vector<std::uint8_t> in_hi(hi.open.size(), 0);
  for (auto s : hi.sites) in_hi[s] = 1;
  for (auto s : lo.sites)
    if (!in_hi[s]) return false;
  return true;
}

}  // namespace ramanujan
