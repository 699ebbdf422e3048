#pragma once

// Standard graphs, random regular graphs and lazily generated balls of
// infinite graphs.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ramanujan/graph.hpp"
#include "ramanujan/groups.hpp"
#include "ramanujan/patterns.hpp"

namespace ramanujan {

SerreGraph complete_graph(std::size_t n);
SerreGraph petersen_graph();
SerreGraph cycle_graph(std::size_t n);
SerreGraph path_graph(std::size_t n);
/// One vertex carrying r loop pairs (2r-regular).
SerreGraph rose(std::size_t r);
/// One vertex carrying d half-loops.
SerreGraph half_loop_bouquet(std::size_t d);
/// Ball of radius r in T_d around its centre (root 0).
RootedGraph regular_tree_ball(std::size_t d, std::size_t r);

/// Uniform perfect matching of the d*n half-edges; self-matched half-edges
/// become loop pairs. Throws PreconditionError if d*n is odd.
SerreGraph configuration_model(std::size_t d, std::size_t n, std::uint64_t seed);

/// d-regular multigraph with `triangles` vertex-disjoint planted triangles;
/// the remaining half-edges are matched uniformly.
SerreGraph planted_triangles(std::size_t d, std::size_t n, std::size_t triangles,
                             std::uint64_t seed);

/// Random connected simple graph on n vertices with maximum degree at most
/// max_degree: a random spanning tree plus `extra_edges` attempted chords.
SerreGraph random_bounded_degree_graph(std::size_t n, std::size_t max_degree,
                                       std::size_t extra_edges, std::uint64_t seed);

/// Ball of radius r around the identity in the Cayley graph of a free
/// product of cyclic groups. Order 2 factors contribute one involution,
/// other orders (0 meaning Z) contribute a generator and its inverse.
RootedGraph free_product_ball(const std::vector<unsigned>& factor_orders, std::size_t r);

// Small Cayley fixtures.
FiniteGroup symmetric_group(std::size_t n);  // transpositions (i, i+1)
FiniteGroup symmetric_group_all_transpositions(std::size_t n);
FiniteGroup cyclic_group(std::size_t n);     // +1, -1
FiniteGroup klein_four_group();              // all three involutions
FiniteGroup dihedral_group(std::size_t n);   // two reflections
FiniteGroup alternating_group_5();           // (1 2)(3 4), (1 3 5) and inverse

}  // namespace ramanujan
