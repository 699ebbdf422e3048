#include "ramanujan/patterns.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "ramanujan/errors.hpp"

namespace ramanujan {

Pattern ball(const SerreGraph& g, VertexId root, std::size_t r, bool with_canonical) {
  if (root >= g.vertex_count()) throw PreconditionError("root out of range");
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertex_count(), kInf);
  std::vector<VertexId> order{root};
  dist[root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto v = order[i];
    if (dist[v] == r) continue;
    for (auto e : g.out_edges(v)) {
      auto w = g.edge(e).target;
      if (dist[w] == kInf) {
        dist[w] = dist[v] + 1;
        order.push_back(w);
      }
    }
  }
  std::vector<VertexId> new_id(g.vertex_count(), std::numeric_limits<VertexId>::max());
  for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = static_cast<VertexId>(i);

  std::vector<EdgeId> new_edge(g.edge_count(), std::numeric_limits<EdgeId>::max());
  std::vector<EdgeId> old_of_new;
  for (auto v : order)
    for (auto e : g.out_edges(v))
      if (dist[g.edge(e).target] != kInf) {
        new_edge[e] = static_cast<EdgeId>(old_of_new.size());
        old_of_new.push_back(e);
      }
  std::vector<DirectedEdge> edges;
  edges.reserve(old_of_new.size());
  for (auto e : old_of_new) {
    const auto& de = g.edge(e);
    edges.push_back({new_id[de.source], new_id[de.target], new_edge[de.inverse]});
  }
  Pattern p;
  p.rooted.graph = SerreGraph(order.size(), std::move(edges), g.name());
  p.rooted.root = 0;
  p.radius = r;
  p.is_tree = is_loop_free_tree(p.rooted.graph);
  if (with_canonical) p.canonical = canonical_form(p.rooted.graph, 0);
  return p;
}

bool is_loop_free_tree(const SerreGraph& g) {
  if (g.vertex_count() == 0) return false;
  if (g.edge_count() != 2 * (g.vertex_count() - 1)) return false;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::set<VertexId> seen;
    for (auto e : g.out_edges(v)) {
      auto w = g.edge(e).target;
      if (w == v || !seen.insert(w).second) return false;
    }
  }
  return connected_components(g).count() == 1;
}

namespace {

using Colouring = std::vector<std::size_t>;

struct Core {
  std::size_t n = 0;
  std::vector<std::string> label;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;  // (neighbour, multiplicity)
};

std::size_t colour_count(const Colouring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

// Rank keys so that equal keys share a colour and colour order follows key order.
template <class Key>
Colouring rank(const std::vector<Key>& keys) {
  std::vector<Key> sorted(keys);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colouring out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    out[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) -
                                      sorted.begin());
  return out;
}

Colouring refine(const Core& core, Colouring c) {
  for (;;) {
    using Sig = std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>;
    std::vector<Sig> sig(core.n);
    for (std::size_t v = 0; v < core.n; ++v) {
      sig[v].first = c[v];
      for (auto [w, m] : core.adj[v]) sig[v].second.emplace_back(c[w], m);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto next = rank(sig);
    if (colour_count(next) == colour_count(c)) return next;
    c = std::move(next);
  }
}

std::string encode(const Core& core, const Colouring& c) {
  std::vector<std::size_t> at(core.n);
  for (std::size_t v = 0; v < core.n; ++v) at[c[v]] = v;
  std::string out;
  for (std::size_t i = 0; i < core.n; ++i) {
    out += core.label[at[i]];
    out += '|';
  }
  out += ';';
  std::vector<std::vector<std::size_t>> m(core.n, std::vector<std::size_t>(core.n, 0));
  for (std::size_t v = 0; v < core.n; ++v)
    for (auto [w, k] : core.adj[v]) m[c[v]][c[w]] = k;
  for (std::size_t i = 0; i < core.n; ++i)
    for (std::size_t j = i + 1; j < core.n; ++j) {
      out += std::to_string(m[i][j]);
      out += ',';
    }
  return out;
}

struct Search {
  const Core& core;
  std::size_t budget;
  std::size_t nodes = 0;
  std::string best;
  bool have_best = false;

  void run(const Colouring& start) {
    if (++nodes > budget)
      throw BudgetError("pattern canonicalization exceeded " + std::to_string(budget) +
                        " search nodes");
    auto c = refine(core, start);
    auto k = colour_count(c);
    if (k == core.n) {
      auto enc = encode(core, c);
      if (!have_best || enc < best) {
        best = std::move(enc);
        have_best = true;
      }
      return;
    }
    std::vector<std::size_t> size(k, 0);
    for (auto x : c) ++size[x];
    std::size_t target = 0;
    while (size[target] == 1) ++target;
    for (std::size_t v = 0; v < core.n; ++v) {
      if (c[v] != target) continue;
      std::vector<std::pair<std::size_t, int>> key(core.n);
      for (std::size_t u = 0; u < core.n; ++u) key[u] = {c[u], u == v ? 0 : 1};
      run(rank(key));
    }
  }
};

}  // namespace

std::string canonical_form(const SerreGraph& g, VertexId root, std::size_t node_budget) {
  const auto n = g.vertex_count();
  std::vector<std::size_t> half(n, 0), full(n, 0);
  std::vector<std::map<VertexId, std::size_t>> mult(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& de = g.edge(e);
    if (de.source == de.target) {
      if (g.is_half_loop(e))
        ++half[de.source];
      else
        ++full[de.source];  // each loop pair is seen twice
    } else {
      ++mult[de.source][de.target];
    }
  }
  std::vector<std::size_t> ndeg(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (auto& [w, m] : mult[v]) ndeg[v] += m;

  std::vector<std::vector<std::string>> children(n);
  std::vector<bool> removed(n, false);
  auto code_of = [&](std::size_t v) {
    auto& ch = children[v];
    std::sort(ch.begin(), ch.end());
    std::string s = "(";
    s.append(half[v], 'h');
    s.append(full[v] / 2, 'l');
    for (auto& x : ch) s += x;
    s += ')';
    return s;
  };
  std::queue<std::size_t> leaves;
  for (std::size_t v = 0; v < n; ++v)
    if (v != root && ndeg[v] == 1) leaves.push(v);
  while (!leaves.empty()) {
    auto v = leaves.front();
    leaves.pop();
    if (removed[v] || ndeg[v] != 1) continue;
    auto parent = mult[v].begin()->first;
    children[parent].push_back(code_of(v));
    removed[v] = true;
    mult[v].clear();
    ndeg[v] = 0;
    if (--mult[parent][static_cast<VertexId>(v)] == 0) mult[parent].erase(static_cast<VertexId>(v));
    --ndeg[parent];
    if (parent != root && ndeg[parent] == 1) leaves.push(parent);
  }

  Core core;
  std::vector<std::size_t> core_id(n, 0);
  std::vector<std::size_t> members;
  for (std::size_t v = 0; v < n; ++v)
    if (!removed[v]) {
      core_id[v] = members.size();
      members.push_back(v);
    }
  core.n = members.size();
  core.label.resize(core.n);
  core.adj.resize(core.n);
  for (std::size_t i = 0; i < core.n; ++i) {
    auto v = members[i];
    core.label[i] = (v == root ? "R" : "") + code_of(v);
    for (auto& [w, m] : mult[v]) core.adj[i].emplace_back(core_id[w], m);
  }
  if (core.n == 1) return core.label[0];
  Search search{core, node_budget, 0, {}, false};
  search.run(rank(core.label));
  return search.best;
}

}  // namespace ramanujan
