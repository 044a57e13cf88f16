#pragma once

#include "segen/graph.hpp"

namespace segen::testing {

// star with center 0 and leaves 1..4
inline Graph star5() {
    return Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

// path 0-1-2-3
inline Graph path4() {
    return Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
}

inline Graph triangle() {
    return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
}

// two disjoint edges: 0-1, 2-3
inline Graph two_edges() {
    return Graph::from_edges(4, {{0, 1}, {2, 3}});
}

}  // namespace segen::testing
