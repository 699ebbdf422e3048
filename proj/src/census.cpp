#include "ramanujan/census.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "ramanujan/errors.hpp"
#include "ramanujan/nullcycle.hpp"
#include "ramanujan/random.hpp"

namespace ramanujan {

namespace {

// Closed-walk enumeration with an incremental count of unbalanced
// {e, inv e} pairs. The imbalance vector is left zeroed after each run.
class CycleCounter {
 public:
  explicit CycleCounter(const SerreGraph& g) : g_(g), imbalance_(g.edge_count(), 0) {}

  std::uint64_t count(VertexId v, std::size_t k) {
    root_ = v;
    k_ = k;
    near_.clear();
    reach_ = k / 2 + 1;
    std::deque<VertexId> queue{v};
    near_[v] = 0;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      if (near_[u] == reach_) continue;
      for (auto e : g_.out_edges(u)) {
        auto w = g_.edge(e).target;
        if (near_.emplace(w, near_[u] + 1).second) queue.push_back(w);
      }
    }
    found_ = 0;
    unbalanced_ = 0;
    walk(v, 0);
    return found_;
  }

 private:
  bool can_return(VertexId at, std::size_t remaining) const {
    auto it = near_.find(at);
    if (it == near_.end()) return remaining > reach_;
    return it->second <= remaining;
  }

  void shift(EdgeId e, int sign) {
    if (g_.is_half_loop(e)) return;
    const EdgeId p = std::min(e, g_.inverse(e));
    int& x = imbalance_[p];
    const bool was = x != 0;
    x += e == p ? sign : -sign;
    const bool is = x != 0;
    if (was && !is) --unbalanced_;
    if (!was && is) ++unbalanced_;
  }

  void walk(VertexId at, std::size_t len) {
    if (len == k_) {
      if (at == root_ && (k_ == 1 || unbalanced_ > 0)) ++found_;
      return;
    }
    if (!can_return(at, k_ - len)) return;
    for (auto e : g_.out_edges(at)) {
      shift(e, +1);
      walk(g_.edge(e).target, len + 1);
      shift(e, -1);
    }
  }

  const SerreGraph& g_;
  std::vector<int> imbalance_;
  std::unordered_map<VertexId, std::size_t> near_;
  std::size_t reach_ = 0;
  VertexId root_ = 0;
  std::size_t k_ = 0;
  std::size_t unbalanced_ = 0;
  std::uint64_t found_ = 0;
};

void check_budget(const SerreGraph& g, std::size_t k, std::uint64_t budget) {
  if (k == 0) throw PreconditionError("k must be at least 1");
  const double walks = std::pow(static_cast<double>(g.max_degree()), static_cast<double>(k));
  if (walks > static_cast<double>(budget))
    throw BudgetError("d^k exceeds the enumeration budget; use the Monte Carlo estimate");
}

}  // namespace

std::uint64_t gamma_k(const SerreGraph& g, VertexId v, std::size_t k, std::uint64_t budget) {
  if (v >= g.vertex_count()) throw PreconditionError("vertex out of range");
  check_budget(g, k, budget);
  return CycleCounter(g).count(v, k);
}

GammaEstimate gamma_k_estimate(const SerreGraph& g, VertexId v, std::size_t k,
                               std::size_t samples, std::uint64_t seed) {
  auto d = g.regular_degree();
  if (!d || *d == 0) throw PreconditionError("estimate needs a regular graph");
  if (k == 0 || samples == 0) throw PreconditionError("k and samples must be positive");
  auto rng = make_stream(seed);
  std::size_t hits = 0;
  Walk w{v, std::vector<EdgeId>(k)};
  for (std::size_t s = 0; s < samples; ++s) {
    VertexId at = v;
    for (std::size_t i = 0; i < k; ++i) {
      auto out = g.out_edges(at);
      w.edges[i] = out[uniform_below(rng, out.size())];
      at = g.edge(w.edges[i]).target;
    }
    if (at == v && !classify_cycle(g, w).trivial) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  const double scale = std::pow(static_cast<double>(*d), static_cast<double>(k));
  GammaEstimate e;
  e.samples = samples;
  e.value = scale * p;
  e.standard_error = scale * std::sqrt(p * (1 - p) / static_cast<double>(samples));
  return e;
}

CycleCensus cycle_census(const SerreGraph& g, std::size_t k, std::uint64_t budget) {
  check_budget(g, k, budget);
  CycleCensus c;
  c.k = k;
  CycleCounter counter(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    c.per_vertex.push_back(counter.count(v, k));
    c.total += c.per_vertex.back();
  }
  if (g.vertex_count()) c.density = static_cast<double>(c.total) / static_cast<double>(g.vertex_count());
  return c;
}

std::size_t tree_radius(const SerreGraph& g, VertexId v, std::size_t rmax) {
  if (v >= g.vertex_count()) throw PreconditionError("vertex out of range");
  // The r-ball is the induced subgraph, so an extra edge between vertices at
  // distances a and b breaks every ball of radius >= max(a, b).
  std::unordered_map<VertexId, std::size_t> dist{{v, 0}};
  std::unordered_map<VertexId, EdgeId> parent;
  std::deque<VertexId> queue{v};
  std::size_t bad = rmax + 1;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    const auto du = dist[u];
    if (du >= bad) break;
    for (auto e : g.out_edges(u)) {
      auto it = parent.find(u);
      if (it != parent.end() && g.inverse(it->second) == e) continue;
      auto w = g.edge(e).target;
      auto [pos, fresh] = dist.emplace(w, du + 1);
      if (fresh) {
        if (du + 1 <= rmax) {
          parent[w] = e;
          queue.push_back(w);
        }
      } else {
        bad = std::min(bad, std::max(du, pos->second));
      }
    }
  }
  return bad == 0 ? 0 : bad - 1;
}

GirthProfile essential_girth_profile(const SerreGraph& g, std::size_t rmax) {
  GirthProfile p;
  p.fraction.assign(rmax, 0.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    p.tree_radius.push_back(tree_radius(g, v, rmax));
    for (std::size_t r = 1; r <= p.tree_radius.back(); ++r) p.fraction[r - 1] += 1;
  }
  const double n = static_cast<double>(g.vertex_count());
  if (n > 0)
    for (auto& f : p.fraction) f /= n;
  const auto d = g.max_degree();
  if (d >= 3) {
    p.beta = 1.0 / (30.0 * std::log(static_cast<double>(d - 1)));
    if (n > std::exp(1.0)) p.threshold = *p.beta * std::log(std::log(n));
  }
  return p;
}

}  // namespace ramanujan
