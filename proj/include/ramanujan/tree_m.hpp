#pragma once

// Tree_m(G): G with m-regular trees glued at every deficient vertex, so that
// every vertex ends up with degree m and no new cycles appear.

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "ramanujan/graph.hpp"
#include "ramanujan/patterns.hpp"

namespace ramanujan {

struct TreeMBall {
  Pattern pattern;
  std::vector<bool> original;  // per pattern vertex: true if it comes from G
};

/// Radius-r ball of Tree_m(G) around an original vertex.
/// Throws PreconditionError if m < max degree of G.
TreeMBall tree_m_ball(const SerreGraph& g, std::size_t m, VertexId root, std::size_t r);

/// Number of closed walks of length n at root in Tree_m(G), n = 0..nmax.
/// The glued trees are lumped by depth, which is exact for return counts.
std::vector<mpz_class> tree_m_return_counts(const SerreGraph& g, std::size_t m, VertexId root,
                                            std::size_t nmax);

}  // namespace ramanujan
