#pragma once

// Finite groups given by the right-multiplication permutations of their
// generators, Cayley graphs, and Schreier quotients by cyclic subgroups.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ramanujan/graph.hpp"

namespace ramanujan {

struct FiniteGroup {
  std::size_t order = 0;
  std::uint32_t identity = 0;
  // right_mult[s][x] = index of x * s
  std::vector<std::vector<std::uint32_t>> right_mult;
  std::vector<std::size_t> inverse_generator;  // s^-1 as a generator index
  std::string name;

  std::size_t generator_count() const noexcept { return right_mult.size(); }
};

/// Builds the group generated by permutations of {0..points-1}. The
/// generating set must be closed under inversion.
FiniteGroup group_from_permutations(const std::vector<std::vector<std::uint32_t>>& generators,
                                    std::string name = {});

/// Checks closure under inversion and that BFS from the identity reaches
/// every element; fills inverse_generator. Throws PreconditionError.
void check_generating_set(FiniteGroup& group);

/// Edge (x, s) has id x * |S| + s and goes x -> x s.
SerreGraph cayley_graph(const FiniteGroup& group);

struct SchreierQuotient {
  SerreGraph quotient;
  std::vector<VertexId> coset_of;  // group element -> coset vertex
  VertexId identity_coset = 0;
  std::size_t subgroup_order = 0;
  bool covering_verified = false;
  bool loop_at_identity = false;
};

/// Quotient of the Cayley graph by the left action of <s>, i.e. the graph
/// on right cosets <s>g with edges <s>g -> <s>gt for each generator t.
SchreierQuotient schreier_quotient(const FiniteGroup& group, std::size_t s);

/// Checks that `map` (vertex map) induces a covering Cayley -> quotient with
/// edge (x, t) sent to (map[x], t); both graphs use the x * |S| + t id layout.
bool verify_covering(const SerreGraph& cover, const SerreGraph& base,
                     const std::vector<VertexId>& map, std::size_t generators);

}  // namespace ramanujan
