#pragma once

// Serre-convention multigraphs.
//
// Every undirected edge is a pair of directed edge ids swapped by the
// involution inv(). A full loop at v is two distinct ids, both v -> v,
// inverse to each other; it adds 2 to deg(v). A half-loop is a single id
// with inv(e) == e; it adds 1 to deg(v).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ramanujan {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct DirectedEdge {
  VertexId source = 0;
  VertexId target = 0;
  EdgeId inverse = 0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

struct ValidationReport {
  bool ok = false;
  std::vector<std::size_t> degrees;
  std::optional<std::size_t> regular_degree;
  std::optional<EdgeId> offending_edge;
  std::string message;
};

/// Checks ids, endpoints and the involution; computes the degree sequence.
ValidationReport validate(std::size_t vertex_count,
                          std::span<const DirectedEdge> edges);

class SerreGraph {
 public:
  SerreGraph() = default;

  /// Throws StructuralError if validate() rejects the edge list.
  SerreGraph(std::size_t vertex_count, std::vector<DirectedEdge> edges,
             std::string name = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<DirectedEdge>& edges() const noexcept { return edges_; }
  const DirectedEdge& edge(EdgeId e) const { return edges_[e]; }
  EdgeId inverse(EdgeId e) const { return edges_[e].inverse; }

  /// Outgoing edge ids of v in increasing id order.
  std::span<const EdgeId> out_edges(VertexId v) const {
    return {out_ids_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::optional<std::size_t> regular_degree() const noexcept { return regular_; }

  bool is_half_loop(EdgeId e) const { return edges_[e].inverse == e; }
  bool is_loop(EdgeId e) const { return edges_[e].source == edges_[e].target; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  friend bool operator==(const SerreGraph& a, const SerreGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<DirectedEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<EdgeId> out_ids_;
  std::size_t max_degree_ = 0;
  std::optional<std::size_t> regular_;
  std::string name_;
};

/// Incremental construction; ids are assigned in insertion order.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t vertex_count = 0) : vertex_count_(vertex_count) {}

  VertexId add_vertex() { return static_cast<VertexId>(vertex_count_++); }
  std::size_t vertex_count() const noexcept { return vertex_count_; }

  /// Adds the pair u->v, v->u. For u == v this is a full loop.
  EdgeId add_edge(VertexId u, VertexId v);
  EdgeId add_half_loop(VertexId v);

  SerreGraph build(std::string name = {}) &&;

 private:
  std::size_t vertex_count_;
  std::vector<DirectedEdge> edges_;
};

struct RootedGraph {
  SerreGraph graph;
  VertexId root = 0;
};

/// Adds d - deg(v) half-loops at every vertex. Throws if max degree > d.
SerreGraph add_half_loops_to_regularize(const SerreGraph& g, std::size_t d);

/// Replaces each full loop pair by two half-loops (same random walk).
SerreGraph split_loops_into_half_loops(const SerreGraph& g);

/// Breadth-first distances from root; unreachable vertices get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const SerreGraph& g, VertexId root);

/// Component index per vertex, and whether each component is bipartite
/// (a component containing any loop is not bipartite).
struct Components {
  std::vector<std::size_t> component_of;
  std::vector<bool> bipartite;
  std::vector<int> side;  // 2-colouring, meaningful on bipartite components
  std::size_t count() const noexcept { return bipartite.size(); }
};
Components connected_components(const SerreGraph& g);

SerreGraph disjoint_union(const SerreGraph& a, const SerreGraph& b);

// SGF text format:
//   sgf 1 <nvertices> <ndirected_edges>
//   e <id> <src> <dst> <inv_id>
// '#' starts a comment that runs to the end of the line.
SerreGraph read_sgf(std::istream& in);
SerreGraph read_sgf_file(const std::string& path);
void write_sgf(std::ostream& out, const SerreGraph& g);

}  // namespace ramanujan
