#ifndef QAOA_CLASSICAL_HPP
#define QAOA_CLASSICAL_HPP

#include <cstdint>
#include <vector>

#include "qaoa/graph.hpp"

namespace qaoa {

Bits random_bits(int n, std::uint64_t seed);

// First-improvement single-flip hill climbing: scan vertices in ascending
// order, flip on any strict gain, and repeat full passes until one completes
// with no flip. The returned value is recomputed from scratch.
CutAssignment local_search(const Graph& g, Bits start);

// Uniform random assignment followed by local_search.
CutAssignment random_lo_cut(const Graph& g, std::uint64_t seed);

struct VectorSolution {
    std::vector<std::vector<double>> vectors; // one unit vector per vertex
    double objective = 0.0;                   // relaxed cut value
    int sweeps = 0;
};

// Low-rank coordinate descent for the Max-Cut semidefinite relaxation:
// v_i <- -normalize(sum_j w_ij v_j), swept until the largest per-vertex
// movement drops below tol. rank <= 0 selects max(3, ceil(sqrt(2n))).
VectorSolution bm_relax(const Graph& g, std::uint64_t seed, int rank = 0,
                        int max_sweeps = 500, double tol = 1e-7);

// Random-hyperplane rounding of a vector solution; keeps the best of
// `trials` draws. Ties on the separating plane (dot exactly zero) go to 0.
CutAssignment hyperplane_round(const Graph& g, const std::vector<std::vector<double>>& vectors,
                               int trials, std::uint64_t seed);

// Full pipeline: relax, round, then polish with local_search.
CutAssignment gw_local_search_cut(const Graph& g, std::uint64_t seed, int trials = 100);

} // namespace qaoa

#endif
