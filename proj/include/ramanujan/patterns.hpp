#pragma once

// Rooted balls and their canonical encodings.

#include <cstddef>
#include <string>

#include "ramanujan/graph.hpp"

namespace ramanujan {

struct Pattern {
  RootedGraph rooted;  // vertices renumbered in BFS order, root = 0
  std::size_t radius = 0;
  bool is_tree = false;  // loop-free tree: no loops, half-loops or multi-edges
  std::string canonical;
};

/// Induced subgraph on all vertices within distance r of the root. The
/// canonical encoding is skipped (left empty) when with_canonical is false.
Pattern ball(const SerreGraph& g, VertexId root, std::size_t r, bool with_canonical = true);
inline Pattern ball(const RootedGraph& rg, std::size_t r, bool with_canonical = true) {
  return ball(rg.graph, rg.root, r, with_canonical);
}

/// Encoding that is equal for two connected rooted graphs iff they are
/// isomorphic by a root-preserving isomorphism. Pendant trees are folded
/// into vertex labels; the remaining core is searched by individualization
/// and refinement. Throws BudgetError past node_budget search nodes.
std::string canonical_form(const SerreGraph& g, VertexId root,
                           std::size_t node_budget = 2'000'000);

bool is_loop_free_tree(const SerreGraph& g);

}  // namespace ramanujan
