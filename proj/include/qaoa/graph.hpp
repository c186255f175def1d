#ifndef QAOA_GRAPH_HPP
#define QAOA_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qaoa/bits.hpp"

namespace qaoa {

struct Edge {
    int u = 0; // endpoints kept with u < v
    int v = 0;
    double w = 1.0;
};

// Immutable after construction; safe to share across threads.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;

    double total_weight() const;
    bool integral_weights() const;
    std::vector<std::vector<std::pair<int, double>>> adjacency() const;
};

// A vertex bipartition together with its cut weight on the owning graph.
struct CutAssignment {
    Bits bits;
    double value = 0.0;
};

CutAssignment make_cut_assignment(const Graph& g, Bits bits);

// Simple d-regular graph via the pairing model: random stub matching,
// rejected wholesale on any self-loop or repeated edge. Deterministic in
// seed. Throws std::invalid_argument when n*d is odd or n <= d, and
// GenerationError when max_attempts matchings all fail.
Graph generate_regular(int n, int d, std::uint64_t seed, int max_attempts = 10000);

// Total weight of edges crossing the bipartition.
double cut_value(const Graph& g, const Bits& bits);

struct MaxCutResult {
    double value = 0.0;
    std::vector<std::uint64_t> optima; // every maximizing assignment, complements included, ascending
};

inline constexpr int kBruteForceMaxVertices = 26;

// Exact maximum by scanning 2^(n-1) assignments (complements implied).
// Refuses instances above kBruteForceMaxVertices.
MaxCutResult max_cut_brute_force(const Graph& g);

// Dense table of cut values indexed by basis state, one edge pass per index.
// Shared by the simulator and the metrics so both score identical values.
struct CutTable {
    int n = 0;
    std::vector<double> values;
    bool integral = false; // all edge weights integral: comparisons are exact
    int max_int = 0;       // largest cut value when integral

    double max_value() const;
    std::vector<std::uint64_t> arg_max() const;
};

CutTable build_cut_table(const Graph& g);

// Text format: header "n m", then m lines "u v w" (w optional, default 1),
// 0-based endpoints with u < v, '#' starts a comment.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(const Graph& g, std::ostream& out);
void write_graph_file(const Graph& g, const std::string& path);

} // namespace qaoa

#endif
