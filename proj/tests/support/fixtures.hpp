#pragma once

#include <vector>

#include "udcim/graph.hpp"

namespace fixtures {

using udcim::Arc;
using udcim::Tendency;
using udcim::WeightedDigraph;

// Three neutral nodes; 0 -> 2 and 1 -> 2.
inline WeightedDigraph g3(double w02 = 0.6, double w12 = 0.5) {
    return WeightedDigraph::from_arcs(3, {{0, 2, w02}, {1, 2, w12}});
}

// G3 with node 2 leaning to A.
inline WeightedDigraph g4(double w02 = 0.6, double w12 = 0.5) {
    return WeightedDigraph::from_arcs(3, {{0, 2, w02}, {1, 2, w12}},
                                      {Tendency::Neutral, Tendency::Neutral, Tendency::A});
}

// Two communities {0,1,2,3} and {4,5}.
inline WeightedDigraph g5() {
    return WeightedDigraph::from_arcs(6, {{0, 1, 0.9}, {1, 2, 0.9}, {3, 1, 0.9}, {4, 5, 0.9}});
}

inline std::vector<std::uint32_t> g5_communities() {
    return {0, 0, 0, 0, 1, 1};
}

// Two disjoint directed 3-cycles.
inline WeightedDigraph two_triangles() {
    return WeightedDigraph::from_arcs(6, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}, {5, 3, 1.0}});
}

} // namespace fixtures
