#include "ramanujan/constructions.hpp"

#include <map>
#include <set>
#include <utility>

#include "ramanujan/errors.hpp"
#include "ramanujan/random.hpp"

namespace ramanujan {

SerreGraph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build("K" + std::to_string(n));
}

SerreGraph petersen_graph() {
  GraphBuilder b(10);
  for (VertexId i = 0; i < 5; ++i) {
    b.add_edge(i, (i + 1) % 5);
    b.add_edge(i, i + 5);
    b.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return std::move(b).build("petersen");
}

SerreGraph cycle_graph(std::size_t n) {
  GraphBuilder b(n);
  for (VertexId i = 0; i < n; ++i) b.add_edge(i, static_cast<VertexId>((i + 1) % n));
  return std::move(b).build("C" + std::to_string(n));
}

SerreGraph path_graph(std::size_t n) {
  GraphBuilder b(n);
  for (VertexId i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return std::move(b).build("P" + std::to_string(n));
}

SerreGraph rose(std::size_t r) {
  GraphBuilder b(1);
  for (std::size_t i = 0; i < r; ++i) b.add_edge(0, 0);
  return std::move(b).build("rose" + std::to_string(r));
}

SerreGraph half_loop_bouquet(std::size_t d) {
  GraphBuilder b(1);
  for (std::size_t i = 0; i < d; ++i) b.add_half_loop(0);
  return std::move(b).build("bouquet" + std::to_string(d));
}

RootedGraph regular_tree_ball(std::size_t d, std::size_t r) {
  GraphBuilder b(1);
  std::vector<VertexId> frontier{0};
  for (std::size_t depth = 0; depth < r; ++depth) {
    std::vector<VertexId> next;
    for (auto v : frontier) {
      auto children = depth == 0 ? d : d - 1;
      for (std::size_t i = 0; i < children; ++i) {
        auto w = b.add_vertex();
        b.add_edge(v, w);
        next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  return {std::move(b).build("T" + std::to_string(d) + "ball" + std::to_string(r)), 0};
}

namespace {

SerreGraph match_half_edges(std::size_t n, std::vector<VertexId> half, GraphBuilder b, Rng& rng,
                            std::string name) {
  (void)n;
  shuffle(half.begin(), half.end(), rng);
  for (std::size_t i = 0; i + 1 < half.size(); i += 2) b.add_edge(half[i], half[i + 1]);
  return std::move(b).build(std::move(name));
}

}  // namespace

SerreGraph configuration_model(std::size_t d, std::size_t n, std::uint64_t seed) {
  if ((d * n) % 2 != 0)
    throw PreconditionError("configuration model needs d*n even (d=" + std::to_string(d) +
                            ", n=" + std::to_string(n) + ")");
  auto rng = make_stream(seed);
  std::vector<VertexId> half;
  half.reserve(d * n);
  for (VertexId v = 0; v < n; ++v)
    for (std::size_t i = 0; i < d; ++i) half.push_back(v);
  return match_half_edges(n, std::move(half), GraphBuilder(n), rng,
                          "cm_d" + std::to_string(d) + "_n" + std::to_string(n) + "_s" +
                              std::to_string(seed));
}

SerreGraph planted_triangles(std::size_t d, std::size_t n, std::size_t triangles,
                             std::uint64_t seed) {
  if (d < 2) throw PreconditionError("planted triangles need d >= 2");
  if (3 * triangles > n) throw PreconditionError("too many triangles for n vertices");
  if ((d * n) % 2 != 0) throw PreconditionError("d*n must be even");
  auto rng = make_stream(seed, 1);
  std::vector<VertexId> perm(n);
  for (VertexId v = 0; v < n; ++v) perm[v] = v;
  shuffle(perm.begin(), perm.end(), rng);
  GraphBuilder b(n);
  std::vector<VertexId> half;
  for (std::size_t t = 0; t < triangles; ++t) {
    auto x = perm[3 * t], y = perm[3 * t + 1], z = perm[3 * t + 2];
    b.add_edge(x, y);
    b.add_edge(y, z);
    b.add_edge(z, x);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto used = i < 3 * triangles ? 2 : 0;
    for (std::size_t j = used; j < d; ++j) half.push_back(perm[i]);
  }
  return match_half_edges(n, std::move(half), std::move(b), rng,
                          "planted_d" + std::to_string(d) + "_n" + std::to_string(n) + "_t" +
                              std::to_string(triangles) + "_s" + std::to_string(seed));
}

SerreGraph random_bounded_degree_graph(std::size_t n, std::size_t max_degree,
                                       std::size_t extra_edges, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("empty graph requested");
  if (max_degree < 2 && n > 2) throw PreconditionError("max degree too small to connect");
  auto rng = make_stream(seed, 2);
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> deg(n, 0);
  std::set<std::pair<VertexId, VertexId>> present;
  GraphBuilder b(n);
  auto add = [&](VertexId u, VertexId v) {
    b.add_edge(u, v);
    ++deg[u];
    ++deg[v];
    present.insert({std::min(u, v), std::max(u, v)});
  };
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<VertexId> open;
    for (std::size_t j = 0; j < i; ++j)
      if (deg[order[j]] < max_degree) open.push_back(order[j]);
    add(order[i], open[uniform_below(rng, open.size())]);
  }
  for (std::size_t attempt = 0, added = 0; added < extra_edges && attempt < 100 * extra_edges;
       ++attempt) {
    auto u = static_cast<VertexId>(uniform_below(rng, n));
    auto v = static_cast<VertexId>(uniform_below(rng, n));
    if (u == v || deg[u] >= max_degree || deg[v] >= max_degree) continue;
    if (present.count({std::min(u, v), std::max(u, v)})) continue;
    add(u, v);
    ++added;
  }
  return std::move(b).build("rbd_n" + std::to_string(n) + "_s" + std::to_string(seed));
}

RootedGraph free_product_ball(const std::vector<unsigned>& factor_orders, std::size_t r) {
  struct Gen {
    std::size_t factor;
    int step;
  };
  std::vector<Gen> gens;
  for (std::size_t f = 0; f < factor_orders.size(); ++f) {
    if (factor_orders[f] == 1) throw PreconditionError("trivial factor in free product");
    gens.push_back({f, 1});
    if (factor_orders[f] != 2) gens.push_back({f, -1});
  }
  auto inverse_gen = [&](std::size_t s) {
    for (std::size_t t = 0; t < gens.size(); ++t)
      if (gens[t].factor == gens[s].factor &&
          (factor_orders[gens[s].factor] == 2 || gens[t].step == -gens[s].step))
        return t;
    return s;
  };
  using Word = std::vector<std::pair<std::size_t, long>>;  // (factor, exponent)
  auto multiply = [&](Word w, std::size_t s) {
    auto f = gens[s].factor;
    auto q = factor_orders[f];
    if (!w.empty() && w.back().first == f) {
      long e = w.back().second + gens[s].step;
      if (q != 0) e = ((e % static_cast<long>(q)) + q) % q;
      if (e == 0)
        w.pop_back();
      else
        w.back().second = e;
    } else {
      long e = gens[s].step;
      if (q != 0) e = ((e % static_cast<long>(q)) + q) % q;
      w.emplace_back(f, e);
    }
    return w;
  };
  std::map<Word, VertexId> index{{Word{}, 0}};
  std::vector<Word> words{Word{}};
  std::vector<std::size_t> depth{0};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (depth[i] == r) continue;
    for (std::size_t s = 0; s < gens.size(); ++s) {
      auto y = multiply(words[i], s);
      if (index.emplace(y, static_cast<VertexId>(words.size())).second) {
        words.push_back(std::move(y));
        depth.push_back(depth[i] + 1);
      }
    }
  }
  // Edge (x, s) gets id x * |S| + s when both ends are in the ball; compact afterwards.
  const auto k = gens.size();
  std::vector<std::int64_t> id(words.size() * k, -1);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t x = 0; x < words.size(); ++x)
    for (std::size_t s = 0; s < k; ++s)
      if (index.count(multiply(words[x], s))) {
        id[x * k + s] = static_cast<std::int64_t>(slots.size());
        slots.emplace_back(x, s);
      }
  std::vector<DirectedEdge> edges;
  edges.reserve(slots.size());
  for (auto [x, s] : slots) {
    auto y = index.at(multiply(words[x], s));
    edges.push_back({static_cast<VertexId>(x), y,
                     static_cast<EdgeId>(id[y * k + inverse_gen(s)])});
  }
  std::string name = "freeprod";
  for (auto q : factor_orders) name += "_" + std::to_string(q);
  return {SerreGraph(words.size(), std::move(edges), name), 0};
}

namespace {

std::vector<std::uint32_t> transposition(std::size_t n, std::size_t i, std::size_t j) {
  std::vector<std::uint32_t> p(n);
  for (std::uint32_t x = 0; x < n; ++x) p[x] = x;
  std::swap(p[i], p[j]);
  return p;
}

}  // namespace

FiniteGroup symmetric_group(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(transposition(n, i, i + 1));
  return group_from_permutations(gens, "S" + std::to_string(n));
}

FiniteGroup symmetric_group_all_transpositions(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) gens.push_back(transposition(n, i, j));
  return group_from_permutations(gens, "S" + std::to_string(n) + "all");
}

FiniteGroup cyclic_group(std::size_t n) {
  std::vector<std::uint32_t> plus(n), minus(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    plus[x] = static_cast<std::uint32_t>((x + 1) % n);
    minus[x] = static_cast<std::uint32_t>((x + n - 1) % n);
  }
  return group_from_permutations({plus, minus}, "Z" + std::to_string(n));
}

FiniteGroup klein_four_group() {
  return group_from_permutations({{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, "V4");
}

FiniteGroup dihedral_group(std::size_t n) {
  std::vector<std::uint32_t> a(n), b(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    a[x] = static_cast<std::uint32_t>((n - x) % n);
    b[x] = static_cast<std::uint32_t>((n + 1 - x) % n);
  }
  return group_from_permutations({a, b}, "D" + std::to_string(n));
}

FiniteGroup alternating_group_5() {
  return group_from_permutations({{1, 0, 3, 2, 4}, {2, 1, 4, 3, 0}, {4, 1, 0, 3, 2}}, "A5");
}

}  // namespace ramanujan
