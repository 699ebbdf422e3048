#include "ramanujan/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "ramanujan/errors.hpp"

namespace ramanujan {

ValidationReport validate(std::size_t vertex_count,
                          std::span<const DirectedEdge> edges) {
  ValidationReport report;
  report.degrees.assign(vertex_count, 0);
  auto fail = [&](EdgeId e, std::string msg) {
    report.ok = false;
    report.offending_edge = e;
    report.message = std::move(msg);
    return report;
  };
  for (EdgeId e = 0; e < edges.size(); ++e) {
    const auto& de = edges[e];
    if (de.source >= vertex_count || de.target >= vertex_count)
      return fail(e, "edge " + std::to_string(e) + " references a vertex out of range");
    if (de.inverse >= edges.size())
      return fail(e, "edge " + std::to_string(e) + " has inverse id out of range");
    const auto& inv = edges[de.inverse];
    if (inv.inverse != e)
      return fail(e, "edge " + std::to_string(e) + ": inv(inv(e)) != e");
    if (inv.source != de.target || inv.target != de.source)
      return fail(e, "edge " + std::to_string(e) + ": inverse edge has wrong endpoints");
    if (de.inverse == e && de.source != de.target)
      return fail(e, "edge " + std::to_string(e) + ": self-inverse edge must be a loop");
    ++report.degrees[de.source];
  }
  report.ok = true;
  if (vertex_count > 0 &&
      std::all_of(report.degrees.begin(), report.degrees.end(),
                  [&](std::size_t x) { return x == report.degrees[0]; }))
    report.regular_degree = report.degrees[0];
  return report;
}

SerreGraph::SerreGraph(std::size_t vertex_count, std::vector<DirectedEdge> edges,
                       std::string name)
    : vertex_count_(vertex_count), edges_(std::move(edges)), name_(std::move(name)) {
  auto report = validate(vertex_count_, edges_);
  if (!report.ok) throw StructuralError(report.message, *report.offending_edge);
  regular_ = report.regular_degree;
  offsets_.assign(vertex_count_ + 1, 0);
  for (const auto& e : edges_) ++offsets_[e.source + 1];
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] += offsets_[v];
  out_ids_.resize(edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) out_ids_[fill[edges_[e].source]++] = e;
  for (auto d : report.degrees) max_degree_ = std::max(max_degree_, d);
}

EdgeId GraphBuilder::add_edge(VertexId u, VertexId v) {
  auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v, id + 1});
  edges_.push_back({v, u, id});
  return id;
}

EdgeId GraphBuilder::add_half_loop(VertexId v) {
  auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({v, v, id});
  return id;
}

SerreGraph GraphBuilder::build(std::string name) && {
  return SerreGraph(vertex_count_, std::move(edges_), std::move(name));
}

SerreGraph add_half_loops_to_regularize(const SerreGraph& g, std::size_t d) {
  if (g.max_degree() > d)
    throw PreconditionError("maximum degree " + std::to_string(g.max_degree()) +
                            " exceeds target degree " + std::to_string(d));
  auto edges = g.edges();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (auto k = g.degree(v); k < d; ++k) {
      auto id = static_cast<EdgeId>(edges.size());
      edges.push_back({v, v, id});
    }
  return SerreGraph(g.vertex_count(), std::move(edges), g.name());
}

SerreGraph split_loops_into_half_loops(const SerreGraph& g) {
  auto edges = g.edges();
  for (EdgeId e = 0; e < edges.size(); ++e)
    if (edges[e].source == edges[e].target) edges[e].inverse = e;
  return SerreGraph(g.vertex_count(), std::move(edges), g.name());
}

std::vector<std::size_t> bfs_distances(const SerreGraph& g, VertexId root) {
  constexpr auto kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertex_count(), kInf);
  std::queue<VertexId> queue;
  dist[root] = 0;
  queue.push(root);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop();
    for (auto e : g.out_edges(v)) {
      auto w = g.edge(e).target;
      if (dist[w] == kInf) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

Components connected_components(const SerreGraph& g) {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  Components c;
  c.component_of.assign(g.vertex_count(), kNone);
  c.side.assign(g.vertex_count(), 0);
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (c.component_of[s] != kNone) continue;
    auto id = c.bipartite.size();
    bool bip = true;
    std::vector<VertexId> stack{s};
    c.component_of[s] = id;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto e : g.out_edges(v)) {
        auto w = g.edge(e).target;
        if (c.component_of[w] == kNone) {
          c.component_of[w] = id;
          c.side[w] = 1 - c.side[v];
          stack.push_back(w);
        } else if (c.side[w] == c.side[v]) {
          bip = false;
        }
      }
    }
    c.bipartite.push_back(bip);
  }
  return c;
}

SerreGraph disjoint_union(const SerreGraph& a, const SerreGraph& b) {
  auto edges = a.edges();
  auto shift_v = static_cast<VertexId>(a.vertex_count());
  auto shift_e = static_cast<EdgeId>(a.edge_count());
  for (const auto& e : b.edges())
    edges.push_back({e.source + shift_v, e.target + shift_v, e.inverse + shift_e});
  return SerreGraph(a.vertex_count() + b.vertex_count(), std::move(edges),
                    a.name() + "+" + b.name());
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

SerreGraph read_sgf(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t nv = 0, ne = 0;
  std::vector<DirectedEdge> edges;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    std::string tag;
    if (!(ss >> tag)) continue;
    if (!have_header) {
      int version = 0;
      if (tag != "sgf" || !(ss >> version >> nv >> ne))
        throw ParseError("expected header 'sgf 1 <nvertices> <ndirected_edges>'", lineno);
      if (version != 1) throw ParseError("unsupported sgf version " + std::to_string(version), lineno);
      edges.resize(ne);
      seen.assign(ne, false);
      have_header = true;
    } else {
      std::size_t id = 0, src = 0, dst = 0, inv = 0;
      if (tag != "e" || !(ss >> id >> src >> dst >> inv))
        throw ParseError("expected 'e <id> <src> <dst> <inv_id>'", lineno);
      std::string extra;
      if (ss >> extra) throw ParseError("trailing tokens after edge record", lineno);
      if (id >= ne) throw ParseError("edge id " + std::to_string(id) + " out of range", lineno);
      if (seen[id]) throw ParseError("duplicate edge id " + std::to_string(id), lineno);
      seen[id] = true;
      edges[id] = {static_cast<VertexId>(src), static_cast<VertexId>(dst),
                   static_cast<EdgeId>(inv)};
    }
  }
  if (!have_header) throw ParseError("missing sgf header", lineno);
  for (std::size_t id = 0; id < ne; ++id)
    if (!seen[id]) throw ParseError("edge id " + std::to_string(id) + " missing", lineno);
  return SerreGraph(nv, std::move(edges));
}

SerreGraph read_sgf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  auto g = read_sgf(in);
  g.set_name(path);
  return g;
}

void write_sgf(std::ostream& out, const SerreGraph& g) {
  if (!g.name().empty()) out << "# " << g.name() << '\n';
  out << "sgf 1 " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& de = g.edge(e);
    out << "e " << e << ' ' << de.source << ' ' << de.target << ' ' << de.inverse << '\n';
  }
}

}  // namespace ramanujan
