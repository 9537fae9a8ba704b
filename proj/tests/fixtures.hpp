// Hand-coded worked examples shared across the test files.

#ifndef DISTMAGIC_TESTS_FIXTURES_HPP
#define DISTMAGIC_TESTS_FIXTURES_HPP

#include "distmagic/graph.hpp"

namespace fixtures {

// Three 4-cycles on 12 vertices, every neighborhood summing to 13:
// 1-2-12-11, 3-4-10-9, 5-6-8-7.
inline distmagic::Graph three_c4() {
    return distmagic::Graph::from_edges(12, {{1, 2},
                                             {2, 12},
                                             {12, 11},
                                             {11, 1},
                                             {3, 4},
                                             {4, 10},
                                             {10, 9},
                                             {9, 3},
                                             {5, 6},
                                             {6, 8},
                                             {8, 7},
                                             {7, 5}});
}

// Path 1-11-10 plus the 4-cycles 8-2-3-9 and 6-4-5-7; constant 11.
inline distmagic::Graph p3_2c4() {
    return distmagic::Graph::from_edges(
        11,
        {{1, 11}, {11, 10}, {8, 2}, {2, 3}, {3, 9}, {9, 8}, {6, 4}, {4, 5}, {5, 7}, {7, 6}});
}

// The successful branch at (7,7): N(7)=[6,1], N(6)=[7], N(5)=[4,3],
// N(4)=[5,2], N(3)=[5,2], N(2)=[4,3], N(1)=[7]. This is P3 union C4.
inline distmagic::Graph branch_7_7() {
    return distmagic::Graph::from_edges(7, {{1, 7}, {6, 7}, {4, 5}, {3, 5}, {2, 4}, {2, 3}});
}

// C4 whose identity weights are all 5.
inline distmagic::Graph magic_c4() {
    return distmagic::Graph::from_edges(4, {{1, 2}, {2, 4}, {4, 3}, {3, 1}});
}

}  // namespace fixtures

#endif  // DISTMAGIC_TESTS_FIXTURES_HPP
