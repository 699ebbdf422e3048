#include "ramanujan/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "ramanujan/errors.hpp"
#include "ramanujan/tree_walk.hpp"

namespace ramanujan {

namespace {

std::size_t require_regular(const SerreGraph& g) {
  auto d = g.regular_degree();
  if (!d) throw PreconditionError("graph is not regular");
  if (*d == 0) throw PreconditionError("graph has degree 0");
  return *d;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

DenseMatrix markov_matrix(const SerreGraph& g) {
  const auto d = static_cast<double>(require_regular(g));
  DenseMatrix m(g.vertex_count());
  for (const auto& e : g.edges()) m(e.source, e.target) += 1.0 / d;
  return m;
}

void markov_apply(const SerreGraph& g, const std::vector<double>& x, std::vector<double>& y) {
  const auto d = static_cast<double>(require_regular(g));
  y.assign(g.vertex_count(), 0.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    double s = 0;
    for (auto e : g.out_edges(v)) s += x[g.edge(e).target];
    y[v] = s / d;
  }
}

double rho_from_eigenvalues(const std::vector<double>& eigenvalues, double tol) {
  std::vector<double> abs(eigenvalues.size());
  std::transform(eigenvalues.begin(), eigenvalues.end(), abs.begin(),
                 [](double x) { return std::fabs(x); });
  std::sort(abs.begin(), abs.end(), std::greater<>());
  if (abs.empty()) return 0;
  const double top = abs.front();
  for (double x : abs)
    if (top - x > tol) return x;
  return 0;
}

namespace {

std::vector<std::pair<double, std::size_t>> cluster(const std::vector<double>& sorted, double tol) {
  std::vector<std::pair<double, std::size_t>> out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    double sum = 0;
    while (j < sorted.size() && sorted[j] - sorted[i] <= tol) sum += sorted[j++];
    out.emplace_back(sum / static_cast<double>(j - i), j - i);
    i = j;
  }
  return out;
}

}  // namespace

SpectralSummary markov_spectrum(const SerreGraph& g, const SpectrumOptions& opts) {
  SpectralSummary s;
  s.degree = require_regular(g);
  s.vertices = g.vertex_count();
  const auto comps = connected_components(g);
  s.components = comps.count();
  s.is_bipartite = std::all_of(comps.bipartite.begin(), comps.bipartite.end(),
                               [](bool b) { return b; });
  const double rho_tree = tree_rho(static_cast<unsigned>(s.degree));
  const std::size_t n = g.vertex_count();
  constexpr double kEps = 2.220446049250313e-16;

  if (n <= opts.dense_limit) {
    auto m = markov_matrix(g);
    if (n <= opts.residual_limit) {
      auto sys = symmetric_eigensystem(m);
      double worst = 0;
      std::vector<double> y;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(sys.vectors.row(i), sys.vectors.row(i) + n);
        markov_apply(g, v, y);
        double r = 0;
        for (std::size_t k = 0; k < n; ++k) r += (y[k] - sys.values[i] * v[k]) * (y[k] - sys.values[i] * v[k]);
        worst = std::max(worst, std::sqrt(r));
      }
      s.eigenvalues = std::move(sys.values);
      s.residual = worst;
      s.method = "dense";
    } else {
      s.eigenvalues = symmetric_eigenvalues(std::move(m));
      s.residual = 10.0 * static_cast<double>(n) * kEps;
      s.method = "dense-values";
    }
    s.distinct = cluster(s.eigenvalues, opts.cluster_tol);
    s.rho = rho_from_eigenvalues(s.eigenvalues, opts.cluster_tol);
    std::size_t inside = 0;
    for (double x : s.eigenvalues)
      if (std::fabs(x) <= rho_tree + 1e-9) ++inside;
    s.weakly_ramanujan_mass = static_cast<double>(inside) / static_cast<double>(n);
  } else {
    // Remove the eigenvalues +1 (component indicators) and -1 (bipartite
    // sign vectors); rho is then the largest remaining absolute value.
    std::vector<std::vector<double>> deflate;
    std::vector<std::size_t> size(s.components, 0);
    for (auto c : comps.component_of) ++size[c];
    for (std::size_t c = 0; c < s.components; ++c) {
      std::vector<double> ind(n, 0.0), sign(n, 0.0);
      const double scale = 1.0 / std::sqrt(static_cast<double>(size[c]));
      for (std::size_t v = 0; v < n; ++v)
        if (comps.component_of[v] == c) {
          ind[v] = scale;
          sign[v] = comps.side[v] ? -scale : scale;
        }
      deflate.push_back(std::move(ind));
      if (comps.bipartite[c]) deflate.push_back(std::move(sign));
    }
    LinearOperator op = [&g](const std::vector<double>& x, std::vector<double>& y) {
      markov_apply(g, x, y);
    };
    auto res = lanczos_extremes(op, n, deflate, 1e-10, std::min<std::size_t>(n, 3000), 1);
    s.residual = std::max(res.residual_smallest, res.residual_largest);
    if (!res.converged && s.residual > 1e-8)
      throw ConvergenceError("Lanczos did not reach the residual tolerance", s.residual);
    s.rho = std::max(std::fabs(res.smallest), std::fabs(res.largest));
    if (deflate.size() >= n) s.rho = 0;
    s.distinct.emplace_back(1.0, s.components);
    s.weakly_ramanujan_mass = kNaN;
    s.method = "lanczos";
  }
  s.ramanujan = s.rho <= rho_tree + 1e-12;
  return s;
}

double SpectralMeasure::moment(std::size_t k) const {
  double s = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    s += weights[i] * std::pow(atoms[i], static_cast<double>(k));
  return s;
}

double SpectralMeasure::mass(double lo, double hi, double slack) const {
  double s = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] >= lo - slack && atoms[i] <= hi + slack) s += weights[i];
  return s;
}

SpectralMeasure spectral_measure(const SerreGraph& g, std::optional<VertexId> root) {
  require_regular(g);
  const std::size_t n = g.vertex_count();
  std::vector<double> values, weights;
  if (root) {
    if (*root >= n) throw PreconditionError("root out of range");
    auto sys = symmetric_eigensystem(markov_matrix(g));
    values = sys.values;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = sys.vectors(i, *root);
      weights.push_back(c * c);
    }
  } else {
    values = symmetric_eigenvalues(markov_matrix(g));
    weights.assign(n, 1.0 / static_cast<double>(n));
  }
  SpectralMeasure mu;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    double w = 0, x = 0;
    while (j < n && values[j] - values[i] <= 1e-9) {
      w += weights[j];
      x += values[j];
      ++j;
    }
    mu.atoms.push_back(x / static_cast<double>(j - i));
    mu.weights.push_back(w);
    i = j;
  }
  return mu;
}

std::vector<mpz_class> closed_walk_counts(const SerreGraph& g, VertexId v, std::size_t kmax) {
  if (v >= g.vertex_count()) throw PreconditionError("vertex out of range");
  std::vector<mpz_class> cur(g.vertex_count(), 0), next(g.vertex_count());
  cur[v] = 1;
  std::vector<mpz_class> out{1};
  for (std::size_t k = 1; k <= kmax; ++k) {
    for (auto& x : next) x = 0;
    for (const auto& e : g.edges())
      if (cur[e.source] != 0) next[e.target] += cur[e.source];
    std::swap(cur, next);
    out.push_back(cur[v]);
  }
  return out;
}

std::vector<mpq_class> walk_return_probabilities(const SerreGraph& g, VertexId v,
                                                 std::size_t kmax) {
  const auto d = require_regular(g);
  auto counts = closed_walk_counts(g, v, kmax);
  std::vector<mpq_class> out;
  mpz_class pw = 1;
  for (std::size_t k = 0; k <= kmax; ++k) {
    mpq_class q(counts[k], pw);
    q.canonicalize();
    out.push_back(q);
    pw *= static_cast<unsigned long>(d);
  }
  return out;
}

std::vector<BoundReport> hitting_bound_check(const SerreGraph& g, VertexId o,
                                             const std::vector<VertexId>& a, std::size_t nmax) {
  const auto d = require_regular(g);
  const std::size_t n = g.vertex_count();
  if (o >= n) throw PreconditionError("vertex out of range");
  std::set<VertexId> target(a.begin(), a.end());
  for (auto x : target)
    if (x >= n) throw PreconditionError("vertex out of range");
  const auto comps = connected_components(g);
  const auto spec = markov_spectrum(g);
  const double sa = static_cast<double>(target.size());
  const double ratio = 2.0 * sa / static_cast<double>(n);

  std::vector<mpz_class> cur(n, 0), next(n);
  cur[o] = 1;
  mpz_class pw = 1;
  std::vector<BoundReport> out;
  for (std::size_t k = 0; k <= nmax; ++k) {
    if (k > 0) {
      for (auto& x : next) x = 0;
      for (const auto& e : g.edges())
        if (cur[e.source] != 0) next[e.target] += cur[e.source];
      std::swap(cur, next);
      pw *= static_cast<unsigned long>(d);
    }
    mpz_class hit = 0;
    for (auto x : target) hit += cur[x];
    mpq_class p(hit, pw);
    p.canonicalize();
    BoundReport r;
    r.name = "hitting n=" + std::to_string(k);
    r.relation = "lhs <= rhs";
    r.hypotheses = {{"connected", comps.count() == 1}, {"regular", true}};
    r.lhs = p.get_d();
    r.rhs = std::sqrt(sa) * std::pow(spec.rho, static_cast<double>(k)) + ratio;
    r.tolerance = 1e-12;
    r.margin = r.rhs - r.lhs;
    r.constants = {{"rho", std::to_string(spec.rho)}, {"n", std::to_string(k)}};
    settle(r, r.lhs <= r.rhs * (1 + r.tolerance));
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

// Strongly connected components of the non-backtracking edge digraph
// (iterative Tarjan). Returns the component id per edge and the count.
std::pair<std::vector<std::size_t>, std::size_t> edge_sccs(const SerreGraph& g) {
  const std::size_t m = g.edge_count();
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(m, kUnset), low(m, 0), comp(m, kUnset);
  std::vector<bool> on_stack(m, false);
  std::vector<EdgeId> stack;
  std::size_t counter = 0, ncomp = 0;
  struct Frame {
    EdgeId e;
    std::size_t next;
  };
  for (EdgeId s = 0; s < m; ++s) {
    if (index[s] != kUnset) continue;
    std::vector<Frame> call{{s, 0}};
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = true;
    while (!call.empty()) {
      auto& f = call.back();
      auto succ = g.out_edges(g.edge(f.e).target);
      bool pushed = false;
      while (f.next < succ.size()) {
        EdgeId w = succ[f.next++];
        if (w == g.inverse(f.e)) continue;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
          pushed = true;
          break;
        }
        if (on_stack[w]) low[f.e] = std::min(low[f.e], index[w]);
      }
      if (pushed) continue;
      const EdgeId v = f.e;
      if (low[v] == index[v]) {
        EdgeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().e] = std::min(low[call.back().e], low[v]);
    }
  }
  return {comp, ncomp};
}

struct PerronResult {
  double value = 0;
  bool converged = false;
  std::size_t iterations = 0;
};

// Power iteration with Collatz-Wielandt bounds on one irreducible block.
// mode 0: B, mode 1: B^2, mode 2: B + I.
PerronResult perron_block(const SerreGraph& g, const std::vector<EdgeId>& block,
                          const std::vector<std::size_t>& local, const std::vector<std::size_t>& comp,
                          std::size_t c, int mode, std::size_t max_iter) {
  const std::size_t k = block.size();
  std::vector<double> x(k, 1.0), y(k), z(k);
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < k; ++i) {
      const EdgeId e = block[i];
      double s = 0;
      for (auto w : g.out_edges(g.edge(e).target))
        if (w != g.inverse(e) && comp[w] == c) s += in[local[w]];
      out[i] = s;
    }
  };
  PerronResult r;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    apply(x, y);
    if (mode == 1) {
      apply(y, z);
      std::swap(y, z);
    } else if (mode == 2) {
      for (std::size_t i = 0; i < k; ++i) y[i] += x[i];
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0, norm = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double q = y[i] / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      norm = std::max(norm, y[i]);
    }
    for (std::size_t i = 0; i < k; ++i) x[i] = std::max(y[i] / norm, 1e-300);
    r.iterations = it;
    double v = 0.5 * (lo + hi);
    if (hi - lo <= 1e-10 * hi) {
      r.converged = true;
      if (mode == 1) v = std::sqrt(v);
      if (mode == 2) v -= 1.0;
      r.value = v;
      return r;
    }
  }
  return r;
}

}  // namespace

CogrowthSummary nonbacktracking_cogrowth(const SerreGraph& g, std::optional<std::size_t> m) {
  CogrowthSummary s;
  s.m = m.value_or(g.max_degree());
  auto [comp, ncomp] = edge_sccs(g);
  std::vector<std::vector<EdgeId>> blocks(ncomp);
  std::vector<std::size_t> local(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    local[e] = blocks[comp[e]].size();
    blocks[comp[e]].push_back(e);
  }
  // A block carries cycles iff it has an internal transition.
  auto cyclic = [&](std::size_t c) {
    for (auto e : blocks[c])
      for (auto w : g.out_edges(g.edge(e).target))
        if (w != g.inverse(e) && comp[w] == c) return true;
    return false;
  };
  constexpr std::size_t kMaxIter = 200000;
  s.method = "none";
  bool any = false;
  for (std::size_t c = 0; c < ncomp; ++c) {
    if (!cyclic(c)) continue;
    any = true;
    PerronResult best;
    const char* method = "power";
    for (int mode = 0; mode < 3; ++mode) {
      best = perron_block(g, blocks[c], local, comp, c, mode, mode == 0 ? kMaxIter / 10 : kMaxIter);
      if (best.converged) {
        method = mode == 0 ? "power" : mode == 1 ? "power-squared" : "power-shifted";
        if (mode > 0) s.flagged = true;
        break;
      }
    }
    if (!best.converged) throw ConvergenceError("non-backtracking power iteration did not converge", 0);
    s.iterations += best.iterations;
    if (best.value > s.alpha || s.method == "none") {
      s.alpha = std::max(s.alpha, best.value);
      s.method = method;
    }
  }
  s.degenerate = !any;
  if (auto d = g.regular_degree(); d && *d >= 1) {
    s.alpha_integer = any ? *d - 1 : 0;
    if (any) s.alpha = static_cast<double>(*d - 1);
  } else if (!any) {
    s.alpha_integer = 0;
  }
  if (s.m >= 2) {
    const double root = std::sqrt(static_cast<double>(s.m - 1));
    s.rho_cover = s.alpha <= root ? 2.0 * root / static_cast<double>(s.m)
                                  : grigorchuk_rho(s.m, std::min(s.alpha, static_cast<double>(s.m - 1)));
  } else {
    s.rho_cover = kNaN;
  }
  return s;
}

std::vector<mpz_class> nonbacktracking_return_counts(const SerreGraph& g, VertexId o,
                                                     std::size_t nmax) {
  if (o >= g.vertex_count()) throw PreconditionError("vertex out of range");
  std::vector<mpz_class> out{1};
  std::vector<mpz_class> cur(g.edge_count(), 0), next(g.edge_count());
  for (auto e : g.out_edges(o)) cur[e] = 1;
  for (std::size_t n = 1; n <= nmax; ++n) {
    if (n > 1) {
      for (auto& x : next) x = 0;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (cur[e] == 0) continue;
        for (auto w : g.out_edges(g.edge(e).target))
          if (w != g.inverse(e)) next[w] += cur[e];
      }
      std::swap(cur, next);
    }
    mpz_class back = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (g.edge(e).target == o) back += cur[e];
    out.push_back(back);
  }
  return out;
}

double grigorchuk_rho(std::size_t m, double alpha) {
  if (m < 2) throw PreconditionError("ambient degree must be at least 2");
  const double top = static_cast<double>(m - 1);
  if (!(alpha > 0) || alpha > top * (1 + 1e-12))
    throw PreconditionError("alpha must lie in (0, m-1]");
  const double root = std::sqrt(top);
  const double md = static_cast<double>(m);
  if (alpha > root) return root / md * (alpha / root + root / alpha);
  return 2.0 * root / md;
}

TreeMCriterion tree_m_ramanujan(const SerreGraph& g, std::size_t m) {
  if (m < g.max_degree()) throw PreconditionError("m is smaller than the maximum degree");
  TreeMCriterion t;
  t.m = m;
  t.degree = g.regular_degree();
  auto cg = nonbacktracking_cogrowth(g, m);
  t.alpha = cg.alpha;
  t.threshold = t.alpha * t.alpha + 1;
  t.margin = static_cast<double>(m) - t.threshold;
  if (cg.alpha_integer) {
    const std::size_t a = *cg.alpha_integer;
    t.exact = true;
    t.ramanujan = m >= a * a + 1;
  } else {
    t.ramanujan = t.margin >= -1e-12;
  }
  if (t.degree && *t.degree >= 1) {
    const std::size_t d = *t.degree;
    t.sufficient_bound = m + 2 * d >= d * d + 2;
  }
  return t;
}

double spherical_function(std::size_t d, std::size_t n) {
  const double dd = static_cast<double>(d);
  const double nn = static_cast<double>(n);
  return (dd + (dd - 2) * nn) / (dd * std::pow(std::sqrt(dd - 1), nn));
}

namespace {

std::vector<std::size_t> checked_ball_distances(const Pattern& ball, std::size_t d, std::size_t radius) {
  if (ball.radius < radius + 1)
    throw PreconditionError("ball radius must be at least R+1");
  const auto& g = ball.rooted.graph;
  auto dist = bfs_distances(g, ball.rooted.root);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (dist[v] <= radius && g.degree(v) != d)
      throw PreconditionError("vertex inside the ball does not have degree d");
  return dist;
}

}  // namespace

RayleighBound rayleigh_lower_bound(const Pattern& ball, std::size_t d, std::size_t radius) {
  if (d < 2) throw PreconditionError("degree must be at least 2");
  auto dist = checked_ball_distances(ball, d, radius);
  const auto& g = ball.rooted.graph;
  RayleighBound r;
  r.radius = radius;
  std::vector<double> f(g.vertex_count(), 0.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (dist[v] <= radius) {
      f[v] = spherical_function(d, dist[v]);
      ++r.support;
    }
  double num = 0, den = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] > radius) continue;
    double mf = 0;
    for (auto e : g.out_edges(v)) mf += f[g.edge(e).target];
    num += f[v] * mf / static_cast<double>(d);
    den += f[v] * f[v];
  }
  r.value = num / den;
  r.g0_is_one = spherical_function(d, 0) == 1.0;
  const double dd = static_cast<double>(d);
  for (std::size_t n = 1; n <= radius; ++n) {
    const double lhs = (spherical_function(d, n - 1) + (dd - 1) * spherical_function(d, n + 1)) / dd;
    const double rhs = tree_rho(static_cast<unsigned>(d)) * spherical_function(d, n);
    r.identity_error = std::max(r.identity_error, std::fabs(lhs - rhs) / std::fabs(rhs));
  }
  return r;
}

double dirichlet_lower_bound(const Pattern& ball, std::size_t d, std::size_t radius) {
  auto dist = checked_ball_distances(ball, d, radius);
  const auto& g = ball.rooted.graph;
  std::vector<std::size_t> idx(g.vertex_count(), 0);
  std::vector<VertexId> inside;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (dist[v] <= radius) {
      idx[v] = inside.size();
      inside.push_back(v);
    }
  const double dd = static_cast<double>(d);
  LinearOperator op = [&](const std::vector<double>& x, std::vector<double>& y) {
    y.assign(inside.size(), 0.0);
    for (std::size_t i = 0; i < inside.size(); ++i) {
      double s = 0;
      for (auto e : g.out_edges(inside[i])) {
        auto w = g.edge(e).target;
        if (dist[w] <= radius) s += x[idx[w]];
      }
      y[i] = s / dd;
    }
  };
  auto res = lanczos_extremes(op, inside.size(), {}, 1e-10, std::min<std::size_t>(inside.size(), 1500), 7);
  return res.largest;
}

}  // namespace ramanujan
