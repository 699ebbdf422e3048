#include "ramanujan/fungroup.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "ramanujan/errors.hpp"
#include "ramanujan/spectral.hpp"
#include "ramanujan/tree_walk.hpp"

namespace ramanujan {

namespace {

double log_mpz(const mpz_class& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

mpz_class pow_mpz(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

unsigned degree_of(const SerreGraph& g) {
  auto d = g.regular_degree();
  if (!d || *d < 2) throw PreconditionError("graph must be d-regular with d >= 2");
  return static_cast<unsigned>(*d);
}

// Number of walks of length k from x to y.
mpz_class walk_count(const SerreGraph& g, VertexId x, VertexId y, std::size_t k) {
  std::vector<mpz_class> cur(g.vertex_count(), 0), next(g.vertex_count());
  cur[x] = 1;
  for (std::size_t s = 0; s < k; ++s) {
    for (auto& v : next) v = 0;
    for (const auto& e : g.edges())
      if (cur[e.source] != 0) next[e.target] += cur[e.source];
    std::swap(cur, next);
  }
  return cur[y];
}

}  // namespace

ReducedWord homotopy_class(const SerreGraph& g, const Walk& w) {
  walk_vertices(g, w);
  return reduce_walk(g, w.edges);
}

std::vector<EdgeId> inverse_edges(const SerreGraph& g, const std::vector<EdgeId>& edges) {
  std::vector<EdgeId> out(edges.rbegin(), edges.rend());
  for (auto& e : out) e = g.inverse(e);
  return out;
}

std::vector<std::vector<EdgeId>> walks_between(const SerreGraph& g, VertexId x, VertexId y,
                                               std::size_t k, std::size_t budget) {
  if (x >= g.vertex_count() || y >= g.vertex_count()) throw PreconditionError("vertex out of range");
  auto dist = bfs_distances(g, y);
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> path;
  std::size_t nodes = 0;
  std::function<void(VertexId)> rec = [&](VertexId at) {
    if (++nodes > budget) throw BudgetError("walk enumeration exceeded budget");
    if (path.size() == k) {
      if (at == y) out.push_back(path);
      return;
    }
    if (dist[at] > k - path.size()) return;
    for (auto e : g.out_edges(at)) {
      path.push_back(e);
      rec(g.edge(e).target);
      path.pop_back();
    }
  };
  rec(x);
  return out;
}

KappaEstimate kappa_estimate(const SerreGraph& g, VertexId x, VertexId y, std::size_t k,
                             std::size_t mmax, double work_budget) {
  if (k == 0 || mmax == 0) throw PreconditionError("k and mmax must be positive");
  if (x >= g.vertex_count() || y >= g.vertex_count()) throw PreconditionError("vertex out of range");
  KappaEstimate r;
  r.x = x;
  r.y = y;
  r.k = k;
  r.walk_count = walk_count(g, x, y, k);
  if (r.walk_count == 0) throw PreconditionError("no walks of length k from x to y");

  const std::size_t phases = 2 * k;
  const double per_h2 = static_cast<double>(g.edge_count()) * static_cast<double>(phases) *
                        static_cast<double>(std::max<std::size_t>(g.max_degree(), 1)) / 2;
  std::size_t m = mmax;
  while (m > 1 && per_h2 * std::pow(2.0 * static_cast<double>(m * k), 2) > work_budget) --m;
  r.truncated = m < mmax;
  r.achieved_m = m;
  const std::size_t hmax = 2 * m * k;  // half-length of the longest walk

  // Walk position must be x at times 0 mod 2k and y at times k mod 2k.
  auto ok = [&](VertexId v, std::size_t phase) {
    if (phase == 0) return v == x;
    if (phase == k) return v == y;
    return true;
  };
  const std::size_t stride = hmax + 1;
  // b[(e * phases + phase) * stride + h]: closed walks of length 2h at the
  // far end of e, starting at that phase, that never cross back over e.
  std::vector<mpz_class> b(g.edge_count() * phases * stride, 0);
  std::vector<mpz_class> a(phases * stride, 0);
  auto B = [&](EdgeId e, std::size_t phase, std::size_t h) -> mpz_class& {
    return b[(e * phases + phase % phases) * stride + h];
  };
  auto A = [&](std::size_t phase, std::size_t h) -> mpz_class& { return a[(phase % phases) * stride + h]; };

  mpz_class acc, t;
  for (std::size_t h = 0; h <= hmax; ++h) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const VertexId w = g.edge(e).target;
      for (std::size_t ph = 0; ph < phases; ++ph) {
        if (!ok(w, ph)) continue;
        if (h == 0) {
          B(e, ph, 0) = 1;
          continue;
        }
        acc = 0;
        for (auto f : g.out_edges(w)) {
          if (f == g.inverse(e)) continue;
          for (std::size_t h1 = 0; h1 < h; ++h1) {
            const auto& first = B(f, ph + 1, h1);
            if (first == 0) continue;
            const auto& rest = B(e, ph + 2 * h1 + 2, h - h1 - 1);
            if (rest == 0) continue;
            mpz_mul(t.get_mpz_t(), first.get_mpz_t(), rest.get_mpz_t());
            acc += t;
          }
        }
        B(e, ph, h) = acc;
      }
    }
    for (std::size_t ph = 0; ph < phases; ++ph) {
      if (!ok(x, ph)) continue;
      if (h == 0) {
        A(ph, 0) = 1;
        continue;
      }
      acc = 0;
      for (auto e : g.out_edges(x))
        for (std::size_t h1 = 0; h1 < h; ++h1) {
          const auto& first = B(e, ph + 1, h1);
          if (first == 0) continue;
          const auto& rest = A(ph + 2 * h1 + 2, h - h1 - 1);
          if (rest == 0) continue;
          mpz_mul(t.get_mpz_t(), first.get_mpz_t(), rest.get_mpz_t());
          acc += t;
        }
      A(ph, h) = acc;
    }
  }

  for (std::size_t j = 0; j <= 2 * m; ++j) r.returns.push_back(A(0, j * k));
  const double log_w = log_mpz(r.walk_count);
  for (std::size_t i = 1; i <= m; ++i) {
    const auto& q = r.returns[2 * i];
    const double four_m = 4.0 * static_cast<double>(i);
    r.kappa_hat.push_back(q == 0 ? 0.0 : std::exp(log_mpz(q) / four_m - log_w));
  }
  // q_{2m}^{1/(4m)} <= q_{2m+2}^{1/(4m+4)}  <=>  a_m^{m+1} <= a_{m+1}^m on the counts.
  for (std::size_t i = 1; i < m; ++i)
    if (pow_mpz(r.returns[2 * i], i + 1) > pow_mpz(r.returns[2 * i + 2], i)) r.monotone = false;
  return r;
}

std::vector<mpz_class> kappa_word_returns(const SerreGraph& g, const Walk& u, VertexId y,
                                          std::size_t k, std::size_t jmax,
                                          std::size_t max_states) {
  const VertexId x = walk_vertices(g, u).back();
  auto walks = walks_between(g, x, y, k);
  const auto u_inv = inverse_edges(g, u.edges);
  std::vector<ReducedWord> steps;
  for (const auto& w1 : walks)
    for (const auto& w2 : walks) {
      std::vector<EdgeId> s = u.edges;
      s.insert(s.end(), w1.begin(), w1.end());
      auto back = inverse_edges(g, w2);
      s.insert(s.end(), back.begin(), back.end());
      s.insert(s.end(), u_inv.begin(), u_inv.end());
      steps.push_back(reduce_walk(g, s));
    }
  std::map<ReducedWord, mpz_class> cur{{{}, 1}};
  std::vector<mpz_class> out{1};
  for (std::size_t j = 1; j <= jmax; ++j) {
    std::map<ReducedWord, mpz_class> next;
    for (const auto& [word, c] : cur)
      for (const auto& s : steps) {
        ReducedWord w = word;
        for (auto e : s) {
          if (!w.empty() && g.inverse(w.back()) == e)
            w.pop_back();
          else
            w.push_back(e);
        }
        next[std::move(w)] += c;
      }
    if (next.size() > max_states) throw BudgetError("word state space exceeded budget");
    cur = std::move(next);
    auto it = cur.find({});
    out.push_back(it == cur.end() ? mpz_class(0) : it->second);
  }
  return out;
}

double kappa_extrapolate(const KappaEstimate& e) {
  const std::size_t m1 = e.achieved_m, m2 = e.achieved_m / 2;
  if (m2 == 0) return e.kappa_hat.empty() ? 0.0 : e.kappa_hat.back();
  const auto& q1 = e.returns[2 * m1];
  const auto& q2 = e.returns[2 * m2];
  if (q1 == 0 || q2 == 0) return 0.0;
  const double log_w = log_mpz(e.walk_count);
  const double l1 = log_mpz(q1) - 4.0 * static_cast<double>(m1) * log_w;
  const double l2 = log_mpz(q2) - 4.0 * static_cast<double>(m2) * log_w;
  const double slope = (l1 - l2 + 1.5 * std::log(static_cast<double>(m1) / static_cast<double>(m2))) /
                       (4.0 * static_cast<double>(m1 - m2));
  return std::clamp(std::exp(slope), 0.0, 1.0);
}

std::vector<mpq_class> p_k_exact(const SerreGraph& g, VertexId o, std::size_t k, std::size_t n) {
  const unsigned d = degree_of(g);
  if (n % 2 || n < k) throw PreconditionError("n must be even and at least k");
  auto t = tree_walk_tables(d, n);
  auto nb = nonbacktracking_endpoint_counts(g, o, k);
  std::vector<mpq_class> p(g.vertex_count(), 0);
  for (std::size_t l = 0; l <= k; ++l) {
    const mpz_class w = t->per_vertex(k, l) * t->per_vertex(n - k, l);
    if (w == 0) continue;
    for (VertexId x = 0; x < g.vertex_count(); ++x)
      if (nb[l][x] != 0) p[x] += mpq_class(nb[l][x] * w, t->count(n, 0));
  }
  for (auto& v : p) v.canonicalize();
  return p;
}

std::vector<double> p_k_limit(const SerreGraph& g, VertexId o, std::size_t k) {
  const unsigned d = degree_of(g);
  auto t = tree_walk_tables(d, k);
  auto nb = nonbacktracking_endpoint_counts(g, o, k);
  const double dd = d;
  const double log_scale = static_cast<double>(k) * std::log(dd * tree_rho(d));
  std::vector<double> p(g.vertex_count(), 0.0);
  for (std::size_t l = 0; l <= k; ++l) {
    const auto& a = t->per_vertex(k, l);
    if (a == 0) continue;
    const double ld = static_cast<double>(l);
    // phi(l) = (1 + (d-2) l / d) (d-1)^{-l/2}, harmonic for the tree walk at rho(T_d).
    const double log_phi = std::log(1 + (dd - 2) * ld / dd) - ld / 2 * std::log(dd - 1);
    const double w = std::exp(log_mpz(a) + log_phi - log_scale);
    for (VertexId x = 0; x < g.vertex_count(); ++x)
      if (nb[l][x] != 0) p[x] += nb[l][x].get_d() * w;
  }
  return p;
}

namespace {

// Per-vertex tree walk counts a[m][.] as doubles with a running log scale.
struct ScaledRow {
  std::vector<double> v{1.0};
  double log_scale = 0;

  void step(unsigned d) {
    std::vector<double> next(v.size() + 1, 0.0);
    const double dm1 = d - 1;
    next[0] = v.size() > 1 ? d * v[1] : 0.0;
    for (std::size_t l = 1; l < next.size(); ++l)
      next[l] = v[l - 1] + (l + 1 < v.size() ? dm1 * v[l + 1] : 0.0);
    const double top = *std::max_element(next.begin(), next.end());
    for (auto& x : next) x /= top;
    log_scale += std::log(top);
    v = std::move(next);
  }
};

}  // namespace

PkDistribution p_k_distribution(const SerreGraph& g, VertexId o, std::size_t k, double tol,
                                std::size_t n_limit) {
  const unsigned d = degree_of(g);
  auto t = tree_walk_tables(d, k);
  auto nb = nonbacktracking_endpoint_counts(g, o, k);
  PkDistribution r;
  r.limit = p_k_limit(g, o, k);

  std::size_t n = std::max<std::size_t>(2, k + k % 2);
  ScaledRow early, late;  // a[n-k][.] and a[n][.]
  for (std::size_t i = 0; i < n - k; ++i) early.step(d);
  for (std::size_t i = 0; i < n; ++i) late.step(d);

  std::vector<double> log_a(k + 1, -INFINITY);
  for (std::size_t l = 0; l <= k; ++l)
    if (t->per_vertex(k, l) != 0) log_a[l] = log_mpz(t->per_vertex(k, l));

  auto evaluate = [&] {
    std::vector<double> p(g.vertex_count(), 0.0);
    for (std::size_t l = 0; l <= k && l < early.v.size(); ++l) {
      if (std::isinf(log_a[l]) || early.v[l] == 0) continue;
      const double w = std::exp(log_a[l] + std::log(early.v[l]) + early.log_scale - late.log_scale -
                                std::log(late.v[0]));
      for (VertexId x = 0; x < g.vertex_count(); ++x)
        if (nb[l][x] != 0) p[x] += nb[l][x].get_d() * w;
    }
    return p;
  };
  auto tv = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return s / 2;
  };

  r.values = evaluate();
  r.n = n;
  while (n + 2 <= n_limit) {
    for (int i = 0; i < 2; ++i) {
      early.step(d);
      late.step(d);
    }
    n += 2;
    auto next = evaluate();
    r.last_change = tv(next, r.values);
    r.values = std::move(next);
    r.n = n;
    if (r.last_change < tol) {
      r.stabilized = true;
      break;
    }
  }
  r.limit_gap = tv(r.values, r.limit);
  return r;
}

KappaStar kappa_star(const SerreGraph& g, VertexId o, std::size_t k, std::size_t mmax,
                     std::optional<double> rho) {
  const unsigned d = degree_of(g);
  KappaStar r;
  auto limit = p_k_limit(g, o, k);
  double log_star = 0;
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    if (limit[x] <= 0) continue;
    r.support.push_back({x, limit[x]});
    r.estimates.push_back(kappa_estimate(g, o, x, k, mmax));
    const double kh = r.estimates.back().kappa_hat.back();
    log_star += limit[x] * std::log(kh);
  }
  r.value = std::exp(log_star);

  const double norm = rho ? *rho : 1.0;
  auto& b = r.diagnostic;
  b.name = "kappa star";
  b.relation = "lhs >= rhs";
  b.hypotheses = {{"d >= 3", d >= 3}};
  b.lhs = std::log(norm);
  b.rhs = std::log(tree_rho(d)) - log_star / static_cast<double>(k);
  b.margin = b.lhs - b.rhs;
  b.constants = {{"k", std::to_string(k)}, {"mmax", std::to_string(mmax)}};
  if (!b.hypotheses_hold()) {
    b.verdict = Verdict::kNotApplicable;
  } else if (b.margin >= 0) {
    b.verdict = Verdict::kPass;
  } else {
    b.verdict = Verdict::kInformational;
    b.note = "kappa_hat underestimates kappa, so the rhs is too large; a miss is not a counterexample";
  }
  return r;
}

StepNormReport step_norm_check(const SerreGraph& g, VertexId o, VertexId x, const Walk& w,
                                   std::size_t k, std::size_t mmax) {
  const unsigned d = degree_of(g);
  auto wv = walk_vertices(g, w);
  if (w.start != x || wv.back() != o) throw PreconditionError("w must be a walk from x to o");
  StepNormReport r;
  auto walks = walks_between(g, o, x, k);
  r.walk_count = walks.size();
  r.null_count = 0;
  for (auto path : walks) {
    path.insert(path.end(), w.edges.begin(), w.edges.end());
    if (reduce_walk(g, path).empty()) ++r.null_count;
  }
  r.kappa = kappa_estimate(g, o, x, k, mmax);
  const double total = static_cast<double>(k + w.length());
  const double cap = total * std::log(2 * std::sqrt(static_cast<double>(d) - 1));

  auto& up = r.upper;
  up.name = "step norm, upper";
  up.relation = "lhs <= rhs";
  up.hypotheses = {{"d >= 2", d >= 2}};
  const double log_w = std::log(r.walk_count.get_d());
  double worst = -INFINITY;
  for (double kh : r.kappa.kappa_hat) worst = std::max(worst, log_w + std::log(kh));
  up.lhs = worst;
  up.rhs = cap;
  up.margin = up.rhs - up.lhs;
  up.tolerance = 1e-12 * std::fabs(cap);
  up.note = "logs; kappa_hat <= kappa makes this weaker than the exact inequality";
  settle(up, up.margin + up.tolerance >= 0);

  auto& lo = r.lower;
  lo.name = "step norm, lower";
  lo.relation = "lhs <= rhs";
  lo.lhs = r.null_count.get_d();
  lo.rhs = r.walk_count.get_d() * kappa_extrapolate(r.kappa);
  lo.margin = lo.rhs - lo.lhs;
  lo.verdict = Verdict::kInformational;
  lo.note = lo.margin >= 0 ? "holds with extrapolated kappa" : "misses with extrapolated kappa";
  return r;
}

BoundReport cycle_product_check(const SerreGraph& g, VertexId o, std::size_t n, std::size_t k,
                       std::size_t mmax) {
  degree_of(g);
  const std::size_t len = n * k;
  if (len % 2) throw PreconditionError("nk must be even");
  std::map<std::pair<VertexId, VertexId>, double> kappa;
  double sum = 0;
  for (const auto& w : enumerate_nullcycles(g, o, len)) {
    auto vs = walk_vertices(g, w);
    double prod = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const auto key = std::make_pair(vs[j * k], vs[(j + 1) * k]);
      auto it = kappa.find(key);
      if (it == kappa.end())
        it = kappa.emplace(key, kappa_estimate(g, key.first, key.second, k, mmax).kappa_hat.back()).first;
      prod /= it->second;
    }
    sum += prod;
  }
  BoundReport b;
  b.name = "nullcycle kappa sum";
  b.relation = "lhs >= rhs";
  b.lhs = closed_walk_counts(g, o, len)[len].get_d();
  b.rhs = sum;
  b.margin = b.lhs - b.rhs;
  b.tolerance = 1e-9 * b.lhs;
  if (b.margin + b.tolerance >= 0) {
    b.verdict = Verdict::kPass;
  } else {
    b.verdict = Verdict::kInformational;
    b.note = "kappa_hat underestimates kappa, so the rhs is too large; a miss is not a counterexample";
  }
  return b;
}

BoundReport tree_cycle_product_check(unsigned d, std::size_t length) {
  if (d < 2 || length % 2) throw PreconditionError("need d >= 2 and even length");
  auto t = tree_walk_tables(d, length);
  mpz_class cap;
  mpz_ui_pow_ui(cap.get_mpz_t(), 4ul * (d - 1), length / 2);
  BoundReport b;
  b.name = "tree nullcycle growth";
  b.relation = "lhs <= rhs";
  b.lhs = log_mpz(t->count(length, 0));
  b.rhs = log_mpz(cap);
  b.margin = b.rhs - b.lhs;
  b.note = "logs; compared exactly";
  settle(b, t->count(length, 0) <= cap);
  return b;
}

}  // namespace ramanujan
