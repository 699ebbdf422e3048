#include "ramanujan/tree_m.hpp"

#include <limits>

#include "ramanujan/errors.hpp"

namespace ramanujan {

TreeMBall tree_m_ball(const SerreGraph& g, std::size_t m, VertexId root, std::size_t r) {
  if (g.max_degree() > m)
    throw PreconditionError("Tree_m needs m >= max degree (m=" + std::to_string(m) +
                            ", max degree=" + std::to_string(g.max_degree()) + ")");
  if (root >= g.vertex_count()) throw PreconditionError("root out of range");
  auto dist = bfs_distances(g, root);
  GraphBuilder b(0);
  std::vector<VertexId> id(g.vertex_count(), std::numeric_limits<VertexId>::max());
  std::vector<bool> original;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (dist[v] <= r) {
      id[v] = b.add_vertex();
      original.push_back(true);
    }
  // Copy the induced edges with their loop structure; ids are rebuilt pairwise.
  std::vector<bool> done(g.edge_count(), false);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& de = g.edge(e);
    if (done[e] || dist[de.source] > r || dist[de.target] > r) continue;
    done[e] = done[de.inverse] = true;
    if (g.is_half_loop(e))
      b.add_half_loop(id[de.source]);
    else
      b.add_edge(id[de.source], id[de.target]);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] >= r) continue;
    std::vector<std::pair<VertexId, std::size_t>> frontier;
    for (auto i = g.degree(v); i < m; ++i) {
      auto w = b.add_vertex();
      original.push_back(false);
      b.add_edge(id[v], w);
      frontier.emplace_back(w, dist[v] + 1);
    }
    while (!frontier.empty()) {
      auto [x, dx] = frontier.back();
      frontier.pop_back();
      if (dx >= r) continue;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        auto w = b.add_vertex();
        original.push_back(false);
        b.add_edge(x, w);
        frontier.emplace_back(w, dx + 1);
      }
    }
  }
  auto full = std::move(b).build(g.name() + "_tree" + std::to_string(m));
  TreeMBall out;
  out.pattern = ball(full, id[root], r);
  // ball() renumbers in BFS order; carry the origin flags along.
  auto order_dist = bfs_distances(full, id[root]);
  std::vector<VertexId> bfs_order;
  {
    std::vector<bool> seen(full.vertex_count(), false);
    bfs_order.push_back(id[root]);
    seen[id[root]] = true;
    for (std::size_t i = 0; i < bfs_order.size(); ++i) {
      auto x = bfs_order[i];
      if (order_dist[x] == r) continue;
      for (auto e : full.out_edges(x)) {
        auto w = full.edge(e).target;
        if (!seen[w]) {
          seen[w] = true;
          bfs_order.push_back(w);
        }
      }
    }
  }
  out.original.resize(bfs_order.size());
  for (std::size_t i = 0; i < bfs_order.size(); ++i) out.original[i] = original[bfs_order[i]];
  return out;
}

std::vector<mpz_class> tree_m_return_counts(const SerreGraph& g, std::size_t m, VertexId root,
                                            std::size_t nmax) {
  if (g.max_degree() > m) throw PreconditionError("Tree_m needs m >= max degree");
  const auto nv = g.vertex_count();
  const auto depth = nmax / 2 + 1;  // deeper states cannot return in time
  auto idx = [&](std::size_t v, std::size_t h) { return v * (depth + 1) + h; };
  std::vector<mpz_class> cur(nv * (depth + 1)), next(cur.size());
  cur[idx(root, 0)] = 1;
  std::vector<mpz_class> out{1};
  for (std::size_t n = 1; n <= nmax; ++n) {
    for (auto& x : next) x = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      const auto& base = cur[idx(v, 0)];
      if (base != 0) {
        for (auto e : g.out_edges(static_cast<VertexId>(v))) next[idx(g.edge(e).target, 0)] += base;
        if (depth >= 1) next[idx(v, 1)] += base * static_cast<unsigned long>(m - g.degree(v));
      }
      for (std::size_t h = 1; h <= depth; ++h) {
        const auto& x = cur[idx(v, h)];
        if (x == 0) continue;
        next[idx(v, h - 1)] += x;
        if (h < depth) next[idx(v, h + 1)] += x * static_cast<unsigned long>(m - 1);
      }
    }
    std::swap(cur, next);
    out.push_back(cur[idx(root, 0)]);
  }
  return out;
}

}  // namespace ramanujan
