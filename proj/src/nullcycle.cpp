#include "ramanujan/nullcycle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>

#include "ramanujan/errors.hpp"
#include "ramanujan/spectral.hpp"

namespace ramanujan {

std::vector<VertexId> walk_vertices(const SerreGraph& g, const Walk& w) {
  if (w.start >= g.vertex_count()) throw PreconditionError("walk start out of range");
  std::vector<VertexId> out{w.start};
  for (auto e : w.edges) {
    if (e >= g.edge_count() || g.edge(e).source != out.back())
      throw PreconditionError("walk edges do not connect");
    out.push_back(g.edge(e).target);
  }
  return out;
}

std::vector<EdgeId> reduce_walk(const SerreGraph& g, const std::vector<EdgeId>& edges) {
  std::vector<EdgeId> stack;
  for (auto e : edges) {
    if (!stack.empty() && g.inverse(stack.back()) == e)
      stack.pop_back();
    else
      stack.push_back(e);
  }
  return stack;
}

bool is_nullcycle(const SerreGraph& g, const Walk& w) {
  walk_vertices(g, w);
  return reduce_walk(g, w.edges).empty();
}

std::vector<Walk> enumerate_nullcycles(const SerreGraph& g, VertexId root, std::size_t n,
                                       std::size_t budget) {
  if (root >= g.vertex_count()) throw PreconditionError("root out of range");
  std::vector<Walk> out;
  std::vector<EdgeId> path, stack;
  std::size_t nodes = 0;
  std::function<void(VertexId)> rec = [&](VertexId at) {
    if (++nodes > budget) throw BudgetError("nullcycle enumeration exceeded budget");
    if (path.size() == n) {
      if (stack.empty()) out.push_back({root, path});
      return;
    }
    if (stack.size() > n - path.size()) return;
    for (auto e : g.out_edges(at)) {
      const bool cancels = !stack.empty() && g.inverse(stack.back()) == e;
      EdgeId popped = 0;
      if (cancels) {
        popped = stack.back();
        stack.pop_back();
      } else {
        stack.push_back(e);
      }
      path.push_back(e);
      rec(g.edge(e).target);
      path.pop_back();
      if (cancels)
        stack.push_back(popped);
      else
        stack.pop_back();
    }
  };
  rec(root);
  return out;
}

NullcycleSampler::NullcycleSampler(const SerreGraph& g, VertexId root, std::size_t n)
    : g_(&g), root_(root), n_(n) {
  if (n % 2) throw PreconditionError("nullcycle length must be even");
  auto d = g.regular_degree();
  if (!d || *d < 2) throw PreconditionError("nullcycle sampling needs a d-regular graph, d >= 2");
  if (root >= g.vertex_count()) throw PreconditionError("root out of range");
  tables_ = tree_walk_tables(static_cast<unsigned>(*d), n);
}

NullcycleSampler::Step NullcycleSampler::step_weights(VertexId at, std::optional<EdgeId> top,
                                                      std::size_t depth,
                                                      std::size_t remaining) const {
  Step s;
  if (remaining == 0) return s;
  for (auto e : g_->out_edges(at)) {
    s.edges.push_back(e);
    if (depth > 0 && top && e == g_->inverse(*top))
      s.weights.push_back(tables_->per_vertex(remaining - 1, depth - 1));
    else
      s.weights.push_back(tables_->per_vertex(remaining - 1, depth + 1));
  }
  return s;
}

namespace {

// Uniform in [0, n) by rejection on random bit strings.
mpz_class uniform_below(Rng& rng, const mpz_class& n) {
  if (n.fits_ulong_p()) return mpz_class(ramanujan::uniform_below(rng, n.get_ui()));
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  mpz_class x;
  do {
    for (auto& w : buf) w = rng();
    if (bits % 64) buf.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
    mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  } while (x >= n);
  return x;
}

}  // namespace

Walk NullcycleSampler::sample(Rng& rng) const {
  Walk w{root_, {}};
  std::vector<EdgeId> stack;
  VertexId at = root_;
  for (std::size_t s = 0; s < n_; ++s) {
    std::optional<EdgeId> top;
    if (!stack.empty()) top = stack.back();
    auto step = step_weights(at, top, stack.size(), n_ - s);
    mpz_class total = 0;
    for (const auto& x : step.weights) total += x;
    mpz_class u = uniform_below(rng, total);
    std::size_t i = 0;
    while (u >= step.weights[i]) {
      u -= step.weights[i];
      ++i;
    }
    const EdgeId e = step.edges[i];
    if (top && e == g_->inverse(*top))
      stack.pop_back();
    else
      stack.push_back(e);
    w.edges.push_back(e);
    at = g_->edge(e).target;
  }
  return w;
}

mpq_class NullcycleSampler::path_probability(const Walk& w) const {
  if (w.start != root_ || w.length() != n_) return 0;
  std::vector<EdgeId> stack;
  VertexId at = root_;
  mpz_class num = 1, den = 1;
  for (std::size_t s = 0; s < n_; ++s) {
    std::optional<EdgeId> top;
    if (!stack.empty()) top = stack.back();
    auto step = step_weights(at, top, stack.size(), n_ - s);
    mpz_class total = 0;
    std::optional<std::size_t> chosen;
    for (std::size_t i = 0; i < step.edges.size(); ++i) {
      total += step.weights[i];
      if (step.edges[i] == w.edges[s]) chosen = i;
    }
    if (!chosen || total == 0) return 0;
    num *= step.weights[*chosen];
    den *= total;
    if (num == 0) return 0;
    const EdgeId e = w.edges[s];
    if (top && e == g_->inverse(*top))
      stack.pop_back();
    else
      stack.push_back(e);
    at = g_->edge(e).target;
  }
  mpq_class p(num, den);
  p.canonicalize();
  return p;
}

CycleClassification classify_cycle(const SerreGraph& g, const Walk& w) {
  auto verts = walk_vertices(g, w);
  if (verts.front() != verts.back()) throw PreconditionError("walk is not closed");
  CycleClassification c;
  if (w.length() == 1) {
    c.trivial = false;
    c.witness = w.edges[0];
    return c;
  }
  std::unordered_map<EdgeId, long> count;
  for (auto e : w.edges) ++count[e];
  c.trivial = true;
  for (auto [e, k] : count) {
    auto it = count.find(g.inverse(e));
    const long back = it == count.end() ? 0 : it->second;
    if (k > back && (!c.witness || e < *c.witness)) {
      c.trivial = false;
      c.witness = e;
    }
  }
  return c;
}

std::size_t chi_statistic(const SerreGraph& g, const Walk& w, std::size_t k, std::size_t ell) {
  if (k == 0 || w.length() % k) throw PreconditionError("k must divide the walk length");
  auto verts = walk_vertices(g, w);
  std::unordered_map<VertexId, std::size_t> visits;
  for (auto v : verts) ++visits[v];
  std::size_t chi = 0;
  for (std::size_t j = 0; j * k < w.length(); ++j) {
    const auto a = j * k;
    if (verts[a] != verts[a + k]) continue;
    if (visits[verts[a]] > ell) continue;
    Walk seg{verts[a], std::vector<EdgeId>(w.edges.begin() + static_cast<long>(a),
                                           w.edges.begin() + static_cast<long>(a + k))};
    if (!classify_cycle(g, seg).trivial) ++chi;
  }
  return chi;
}

std::vector<std::vector<mpz_class>> nonbacktracking_endpoint_counts(const SerreGraph& g,
                                                                    VertexId root,
                                                                    std::size_t kmax) {
  if (root >= g.vertex_count()) throw PreconditionError("root out of range");
  std::vector<std::vector<mpz_class>> out;
  std::vector<mpz_class> at(g.vertex_count(), 0);
  at[root] = 1;
  out.push_back(at);
  std::vector<mpz_class> cur(g.edge_count(), 0), next(g.edge_count());
  for (auto e : g.out_edges(root)) cur[e] = 1;
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (k > 1) {
      for (auto& x : next) x = 0;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (cur[e] == 0) continue;
        for (auto f : g.out_edges(g.edge(e).target))
          if (f != g.inverse(e)) next[f] += cur[e];
      }
      std::swap(cur, next);
    }
    for (auto& x : at) x = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (cur[e] != 0) at[g.edge(e).target] += cur[e];
    out.push_back(at);
  }
  return out;
}

mpq_class expected_visits_value(const SerreGraph& g, VertexId root, const std::vector<VertexId>& a,
                                std::size_t n) {
  if (n % 2) throw PreconditionError("nullcycle length must be even");
  auto d = g.regular_degree();
  if (!d || *d < 2) throw PreconditionError("expected visits need a d-regular graph, d >= 2");
  std::set<VertexId> target(a.begin(), a.end());
  for (auto x : target)
    if (x >= g.vertex_count()) throw PreconditionError("vertex out of range");
  auto t = tree_walk_tables(static_cast<unsigned>(*d), n);
  auto nb = nonbacktracking_endpoint_counts(g, root, n / 2);
  mpq_class total = 0;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    mpz_class time_at_k = 0;
    for (std::size_t j = k; j + k <= n; ++j) time_at_k += t->count(j, k) * t->count(n - j, k);
    if (time_at_k == 0) continue;
    mpz_class hits = 0;
    for (auto x : target) hits += nb[k][x];
    const auto sk = t->sphere_size(k);
    mpq_class term(time_at_k * hits, sk * sk * t->count(n, 0));
    term.canonicalize();
    total += term;
  }
  return total;
}

VisitsReport expected_visits(const SerreGraph& g, VertexId root, const std::vector<VertexId>& a,
                             std::size_t n, const SpectralSummary* spectrum) {
  VisitsReport r;
  r.expected = expected_visits_value(g, root, a, n);
  const auto d = *g.regular_degree();
  const auto spec = spectrum ? *spectrum : markov_spectrum(g);
  r.rho = spec.rho;
  const double sa = static_cast<double>(std::set<VertexId>(a.begin(), a.end()).size());
  const double gsize = static_cast<double>(g.vertex_count());
  const double nn = static_cast<double>(n);
  const bool connected = spec.components == 1;

  auto& f = r.finite_bound;
  f.name = "nullcycle visits, finite graph";
  f.relation = "lhs <= rhs";
  f.hypotheses = {{"d >= 3", d >= 3}, {"connected", connected}};
  f.lhs = r.expected.get_d();
  f.rhs = 4e4 * sa * (1.0 / ((1 - r.rho) * (1 - r.rho)) + 72 * nn * nn / gsize);
  f.margin = f.rhs - f.lhs;
  f.constants = {{"rho", std::to_string(r.rho)}, {"n", std::to_string(n)}};
  settle(f, f.lhs <= f.rhs);

  auto& c = r.constant_bound;
  c.name = "nullcycle visits, constant";
  c.relation = "lhs <= rhs";
  c.hypotheses = {{"d >= 3", d >= 3},
                  {"connected", connected},
                  {"rho <= 19/20", r.rho <= 0.95},
                  {"n^2 <= |G|", n * n <= g.vertex_count()}};
  c.lhs = f.lhs;
  c.rhs = 2e7 * sa;
  c.margin = c.rhs - c.lhs;
  c.constants = f.constants;
  settle(c, c.lhs <= c.rhs);
  return r;
}

namespace {

mpz_class binom(std::size_t n, std::size_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Calls f on every k-tuple of nonnegative integers summing to n.
void for_each_composition(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> x(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == k) {
      x[i] = left;
      f(x);
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      x[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (k == 0) return;
  rec(0, n);
}

}  // namespace

ParityReport parity_probability(std::size_t n, const std::vector<unsigned>& pattern) {
  const std::size_t k = pattern.size();
  if (n < 2 || n % 2) throw PreconditionError("n must be even and at least 2");
  if (k < 2) throw PreconditionError("tuple length must be at least 2");
  std::size_t j = 0;
  for (auto x : pattern) j += x % 2;
  ParityReport r;
  const mpz_class total = binom(n + k - 1, k - 1);
  r.binomial_bound = mpq_class(binom(n / 2 + k - 1, k - 1), total);
  r.binomial_bound.canonicalize();
  if (j % 2 || j > n) {
    r.parity_mismatch = true;
    r.value = 0;
    r.note = j % 2 ? "odd number of odd entries cannot sum to an even n" : "more odd entries than n";
  } else {
    r.value = mpq_class(binom(n / 2 - j / 2 + k - 1, k - 1), total);
    r.value.canonicalize();
  }
  const double kd = static_cast<double>(k), nd = static_cast<double>(n);
  r.exp_bound = std::exp(-1.0 / (4.0 / kd + 2.0 / nd));
  r.below_binomial = r.value <= r.binomial_bound;
  r.below_exp = r.binomial_bound.get_d() <= r.exp_bound * (1 + 1e-12);
  r.below_half = r.value <= mpq_class(1, 2);
  return r;
}

mpq_class parity_probability_enumerated(std::size_t n, const std::vector<unsigned>& pattern) {
  const std::size_t k = pattern.size();
  mpz_class hit = 0, all = 0;
  for_each_composition(n, k, [&](const std::vector<std::size_t>& x) {
    ++all;
    for (std::size_t i = 0; i < k; ++i)
      if (x[i] % 2 != pattern[i] % 2) return;
    ++hit;
  });
  mpq_class p(hit, all);
  p.canonicalize();
  return p;
}

PartitionReport parity_partition_probability(std::size_t n,
                                             const std::vector<std::vector<std::size_t>>& partition,
                                             std::size_t ell, std::size_t samples,
                                             std::uint64_t seed, std::size_t exact_limit) {
  std::size_t k = 0;
  bool nonempty = !partition.empty();
  for (const auto& p : partition) {
    nonempty = nonempty && !p.empty();
    for (auto i : p) k = std::max(k, i + 1);
  }
  std::vector<std::size_t> part_of(k, SIZE_MAX);
  bool disjoint = true;
  for (std::size_t p = 0; p < partition.size(); ++p)
    for (auto i : partition[p]) {
      disjoint = disjoint && part_of[i] == SIZE_MAX;
      part_of[i] = p;
    }
  const bool covers = std::none_of(part_of.begin(), part_of.end(), [](auto x) { return x == SIZE_MAX; });
  if (!disjoint || !covers) throw PreconditionError("parts must partition {0..k-1}");

  PartitionReport r;
  r.parts = partition.size();
  const double m = static_cast<double>(r.parts);
  r.bound = 14.0 * std::exp(-std::min(m, static_cast<double>(n) / static_cast<double>(ell)) / 14.0);

  auto all_even = [&](const std::vector<std::size_t>& x) {
    std::vector<std::size_t> sums(partition.size(), 0);
    for (std::size_t i = 0; i < k; ++i) sums[part_of[i]] += x[i];
    return std::all_of(sums.begin(), sums.end(), [](auto s) { return s % 2 == 0; });
  };

  const mpz_class total = binom(n + k - 1, k - 1);
  if (total <= exact_limit) {
    mpz_class hit = 0;
    for_each_composition(n, k, [&](const std::vector<std::size_t>& x) {
      if (all_even(x)) ++hit;
    });
    r.exact = true;
    r.exact_value = mpq_class(hit, total);
    r.exact_value.canonicalize();
    r.probability = r.exact_value.get_d();
  } else {
    // Uniform composition: k-1 bar positions among n+k-1 slots.
    auto rng = make_stream(seed);
    const std::size_t slots = n + k - 1;
    std::size_t hit = 0;
    std::vector<std::size_t> x(k), bars;
    for (std::size_t s = 0; s < samples; ++s) {
      std::set<std::size_t> chosen;
      for (std::size_t j = slots - (k - 1); j < slots; ++j) {
        std::size_t t = uniform_below(rng, j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
      }
      bars.assign(chosen.begin(), chosen.end());
      std::size_t prev = 0;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        x[i] = bars[i] - prev;
        prev = bars[i] + 1;
      }
      x[k - 1] = slots - prev;
      if (all_even(x)) ++hit;
    }
    r.probability = static_cast<double>(hit) / static_cast<double>(samples);
    r.standard_error = std::sqrt(r.probability * (1 - r.probability) / static_cast<double>(samples));
  }

  auto& c = r.check;
  c.name = "partition parity";
  c.relation = "lhs <= rhs";
  c.hypotheses = {{"parts nonempty", nonempty},
                  {"ell >= 2", ell >= 2},
                  {"k <= m ell", k <= r.parts * ell},
                  {"n even", n % 2 == 0}};
  c.lhs = r.probability;
  c.rhs = r.bound;
  c.tolerance = 3 * r.standard_error;
  c.margin = c.rhs - c.lhs;
  settle(c, c.lhs - c.tolerance <= c.rhs);
  return r;
}

}  // namespace ramanujan
