#pragma once

// The standard named graph fixtures.

#include <vector>

#include "ramanujan/graph.hpp"

namespace ramanujan {

/// Small named graphs, random regular graphs, Cayley graphs and one
/// percolation cluster. Deterministic.
std::vector<SerreGraph> standard_fixtures();

}  // namespace ramanujan
