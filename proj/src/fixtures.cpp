#include "ramanujan/fixtures.hpp"

#include <string>

#include "ramanujan/constructions.hpp"
#include "ramanujan/percolation.hpp"

namespace ramanujan {

std::vector<SerreGraph> standard_fixtures() {
  std::vector<SerreGraph> gs;
  auto named = [&](SerreGraph g, const std::string& name) {
    g.set_name(name);
    gs.push_back(std::move(g));
  };
  named(complete_graph(4), "k4");
  named(petersen_graph(), "petersen");
  named(cycle_graph(6), "c6");
  named(rose(2), "rose2");
  named(half_loop_bouquet(3), "bouquet3");
  named(disjoint_union(complete_graph(4), cycle_graph(6)), "k4_c6");
  named(regular_tree_ball(3, 4).graph, "t3_ball4");
  named(add_half_loops_to_regularize(regular_tree_ball(4, 3).graph, 4), "t4_ball3_regular");
  named(configuration_model(3, 64, 1), "cfg_d3_n64_s1");
  named(configuration_model(3, 1024, 7), "cfg_d3_n1024_s7");
  named(configuration_model(4, 256, 1), "cfg_d4_n256_s1");
  named(planted_triangles(3, 128, 13, 1), "planted_d3_n128_t13_s1");
  named(cayley_graph(symmetric_group(4)), "cayley_s4");
  named(cayley_graph(dihedral_group(6)), "cayley_d6");
  named(cayley_graph(alternating_group_5()), "cayley_a5");
  named(percolate(200, 200, 0.85, 7).cluster, "percolation_p085_200_s7");
  return gs;
}

}  // namespace ramanujan
