#include "qaoa/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <unordered_set>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {

bool is_integral(double w) { return std::floor(w) == w && std::isfinite(w); }

std::uint64_t edge_key(int u, int v, int n) {
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(v);
}

void sort_edges(std::vector<Edge>& edges) {
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
}

double stream_cut(const Graph& g, std::uint64_t x) {
    double acc = 0.0;
    for (const auto& e : g.edges)
        if (((x >> e.u) ^ (x >> e.v)) & 1ull) acc += e.w;
    return acc;
}

} // namespace

double Graph::total_weight() const {
    double acc = 0.0;
    for (const auto& e : edges) acc += e.w;
    return acc;
}

bool Graph::integral_weights() const {
    for (const auto& e : edges)
        if (!is_integral(e.w)) return false;
    return true;
}

std::vector<std::vector<std::pair<int, double>>> Graph::adjacency() const {
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n));
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
        adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
    }
    return adj;
}

CutAssignment make_cut_assignment(const Graph& g, Bits bits) {
    double value = cut_value(g, bits);
    return CutAssignment{std::move(bits), value};
}

Graph generate_regular(int n, int d, std::uint64_t seed, int max_attempts) {
    if (d < 1) throw std::invalid_argument("degree must be at least 1");
    if (n <= d) throw std::invalid_argument("regular graph needs n > d");
    if ((static_cast<long long>(n) * d) % 2 != 0) throw std::invalid_argument("n*d must be even");

    std::mt19937_64 rng(seed);
    std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k) stubs[static_cast<std::size_t>(v) * d + k] = v;

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        // Fisher-Yates with a plain modulus draw; matching uniformity is not
        // needed, only simple + seeded-deterministic output.
        for (std::size_t i = stubs.size() - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
            std::swap(stubs[i], stubs[j]);
        }

        std::unordered_set<std::uint64_t> seen;
        std::vector<Edge> edges;
        edges.reserve(stubs.size() / 2);
        bool simple = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) {
                simple = false;
                break;
            }
            if (u > v) std::swap(u, v);
            if (!seen.insert(edge_key(u, v, n)).second) {
                simple = false;
                break;
            }
            edges.push_back(Edge{u, v, 1.0});
        }
        if (!simple) continue;

        sort_edges(edges);
        return Graph{n, std::move(edges)};
    }
    throw GenerationError("no simple " + std::to_string(d) + "-regular matching found in " +
                          std::to_string(max_attempts) + " attempts");
}

double cut_value(const Graph& g, const Bits& bits) {
    if (static_cast<int>(bits.size()) != g.n)
        throw std::invalid_argument("assignment length " + std::to_string(bits.size()) +
                                    " does not match vertex count " + std::to_string(g.n));
    double acc = 0.0;
    for (const auto& e : g.edges)
        if (bits[static_cast<std::size_t>(e.u)] != bits[static_cast<std::size_t>(e.v)]) acc += e.w;
    return acc;
}

MaxCutResult max_cut_brute_force(const Graph& g) {
    if (g.n > kBruteForceMaxVertices)
        throw SizeLimitError("brute force capped at n <= " + std::to_string(kBruteForceMaxVertices) +
                             ", got n = " + std::to_string(g.n));
    if (g.n < 1) throw std::invalid_argument("empty graph");

    const std::uint64_t half = 1ull << (g.n - 1);
    const std::uint64_t full_mask = (g.n == 64) ? ~0ull : (1ull << g.n) - 1;

    double best = 0.0;
    for (std::uint64_t x = 0; x < half; ++x) best = std::max(best, stream_cut(g, x));

    // Integral weights compare exactly; real weights within 1e-12 relative.
    const double tol = g.integral_weights() ? 0.0 : 1e-12 * std::max(1.0, std::abs(best));

    MaxCutResult result;
    result.value = best;
    for (std::uint64_t x = 0; x < half; ++x) {
        if (stream_cut(g, x) >= best - tol) {
            result.optima.push_back(x);
            result.optima.push_back(~x & full_mask);
        }
    }
    std::sort(result.optima.begin(), result.optima.end());
    return result;
}

double CutTable::max_value() const {
    double best = 0.0;
    for (double v : values) best = std::max(best, v);
    return best;
}

std::vector<std::uint64_t> CutTable::arg_max() const {
    const double best = max_value();
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < values.size(); ++x)
        if (values[x] == best) out.push_back(x);
    return out;
}

CutTable build_cut_table(const Graph& g) {
    if (g.n > kBruteForceMaxVertices)
        throw SizeLimitError("cut table capped at n <= " + std::to_string(kBruteForceMaxVertices) +
                             ", got n = " + std::to_string(g.n));
    CutTable table;
    table.n = g.n;
    table.values.resize(1ull << g.n);
    for (std::uint64_t x = 0; x < table.values.size(); ++x) table.values[x] = stream_cut(g, x);
    table.integral = g.integral_weights();
    if (table.integral) table.max_int = static_cast<int>(std::llround(table.max_value()));
    return table;
}

Graph read_graph(std::istream& in) {
    Graph g;
    std::string line;
    int line_no = 0;
    long long m = -1;
    long long edges_read = 0;
    std::unordered_set<std::uint64_t> seen;

    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);

        if (m < 0) {
            long long n = 0;
            if (!(ls >> n >> m)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    m = -1;
                    continue; // blank or comment-only line before the header
                }
                throw ParseError("expected header \"n m\"", line_no);
            }
            std::string rest;
            if (ls >> rest) throw ParseError("trailing content after header", line_no);
            if (n < 2) throw ParseError("vertex count must be at least 2", line_no);
            if (m < 0) throw ParseError("negative edge count", line_no);
            g.n = static_cast<int>(n);
            continue;
        }

        long long u = 0, v = 0;
        double w = 1.0;
        if (!(ls >> u >> v)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("expected edge \"u v [w]\"", line_no);
        }
        if (!(ls >> w)) w = 1.0;
        ls.clear();
        std::string rest;
        if (ls >> rest) throw ParseError("trailing content after edge", line_no);
        if (edges_read >= m) throw ParseError("more edge lines than the header's edge count", line_no);
        if (u == v) throw ParseError("self-loop " + std::to_string(u), line_no);
        if (u > v) throw ParseError("endpoints must satisfy u < v", line_no);
        if (u < 0 || v >= g.n) throw ParseError("vertex index out of range", line_no);
        if (!std::isfinite(w)) throw ParseError("non-finite weight", line_no);
        if (!seen.insert(edge_key(static_cast<int>(u), static_cast<int>(v), g.n)).second)
            throw ParseError("duplicate edge", line_no);
        g.edges.push_back(Edge{static_cast<int>(u), static_cast<int>(v), w});
        ++edges_read;
    }

    if (m < 0) throw ParseError("missing header \"n m\"", line_no);
    if (edges_read != m)
        throw ParseError("header promises " + std::to_string(m) + " edges, found " +
                             std::to_string(edges_read),
                         line_no);
    return g;
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path);
    try {
        return read_graph(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

void write_graph(const Graph& g, std::ostream& out) {
    out << g.n << ' ' << g.edges.size() << '\n';
    out << std::setprecision(17);
    for (const auto& e : g.edges) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    write_graph(g, out);
    if (!out) throw Error("write failed: " + path);
}

} // namespace qaoa
