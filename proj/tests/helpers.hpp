#ifndef QAOA_TESTS_HELPERS_HPP
#define QAOA_TESTS_HELPERS_HPP

#include "qaoa/graph.hpp"

inline qaoa::Graph make_k4() {
    return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
}

// Complete bipartite K_{3,3}: parts {0,1,2} and {3,4,5}.
inline qaoa::Graph make_k33() {
    return {6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}};
}

// 6-cycle, 2-regular.
inline qaoa::Graph make_c6() {
    return {6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}};
}

#endif
