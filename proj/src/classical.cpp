#include "qaoa/classical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qaoa/seeding.hpp"

namespace qaoa {

namespace {

// Box-Muller on top of mt19937_64 so draws don't depend on the standard
// library's distribution internals.
struct GaussianSource {
    std::mt19937_64 rng;
    double spare = 0.0;
    bool has_spare = false;

    explicit GaussianSource(std::uint64_t seed) : rng(seed) {}

    double uniform01() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

    double next() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        double u1 = 1.0 - uniform01(); // (0, 1]
        double u2 = uniform01();
        double mag = std::sqrt(-2.0 * std::log(u1));
        double ang = 2.0 * kPiClassical * u2;
        spare = mag * std::sin(ang);
        has_spare = true;
        return mag * std::cos(ang);
    }

    static constexpr double kPiClassical = 3.14159265358979323846;
};

void normalize_in_place(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
}

} // namespace

Bits random_bits(int n, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("bitstring length must be positive");
    std::mt19937_64 rng(seed);
    Bits b(n);
    for (int i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

CutAssignment local_search(const Graph& g, Bits start) {
    if (static_cast<int>(start.size()) != g.n)
        throw std::invalid_argument("start assignment length mismatch");
    const auto adj = g.adjacency();
    bool improved = true;
    while (improved) {
        improved = false;
        for (int i = 0; i < g.n; ++i) {
            // Flipping i trades its cut edges for its uncut ones.
            double gain = 0.0;
            for (const auto& [j, w] : adj[i]) {
                gain += (start[i] == start[j]) ? w : -w;
            }
            if (gain > 0.0) {
                start[i] ^= 1u;
                improved = true;
            }
        }
    }
    return make_cut_assignment(g, std::move(start));
}

CutAssignment random_lo_cut(const Graph& g, std::uint64_t seed) {
    return local_search(g, random_bits(g.n, seed));
}

VectorSolution bm_relax(const Graph& g, std::uint64_t seed, int rank, int max_sweeps, double tol) {
    if (g.n <= 0) throw std::invalid_argument("graph has no vertices");
    if (rank <= 0) rank = std::max(3, static_cast<int>(std::ceil(std::sqrt(2.0 * g.n))));
    if (rank < 2) throw std::invalid_argument("relaxation rank must be at least 2");
    if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be positive");

    GaussianSource gauss(seed);
    VectorSolution sol;
    sol.vectors.assign(g.n, std::vector<double>(rank));
    for (auto& v : sol.vectors) {
        for (double& x : v) x = gauss.next();
        normalize_in_place(v);
    }

    auto relaxed_value = [&] {
        double obj = 0.0;
        for (const auto& e : g.edges) {
            double dot = 0.0;
            for (int k = 0; k < rank; ++k) dot += sol.vectors[e.u][k] * sol.vectors[e.v][k];
            obj += e.w * 0.5 * (1.0 - dot);
        }
        return obj;
    };

    const auto adj = g.adjacency();
    std::vector<double> field(rank);
    double previous = relaxed_value();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int i = 0; i < g.n; ++i) {
            std::fill(field.begin(), field.end(), 0.0);
            for (const auto& [j, wij] : adj[i]) {
                for (int k = 0; k < rank; ++k) field[k] += wij * sol.vectors[j][k];
            }
            double fnorm = 0.0;
            for (double x : field) fnorm += x * x;
            fnorm = std::sqrt(fnorm);
            if (fnorm == 0.0) continue; // isolated vertex or cancelled field
            for (int k = 0; k < rank; ++k) sol.vectors[i][k] = -field[k] / fnorm;
        }
        sol.sweeps = sweep + 1;
        // Each update is locally optimal, so the value never drops; stop once
        // a full pass gains less than tol.
        const double current = relaxed_value();
        if (current - previous < tol) {
            previous = current;
            break;
        }
        previous = current;
    }

    sol.objective = previous;
    return sol;
}

CutAssignment hyperplane_round(const Graph& g, const std::vector<std::vector<double>>& vectors,
                               int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    if (static_cast<int>(vectors.size()) != g.n)
        throw std::invalid_argument("vector count does not match graph order");
    const int rank = vectors.empty() ? 0 : static_cast<int>(vectors[0].size());

    GaussianSource gauss(seed);
    std::vector<double> plane(rank);
    Bits bits(g.n), best_bits;
    double best = -1.0;
    for (int t = 0; t < trials; ++t) {
        for (double& x : plane) x = gauss.next();
        for (int i = 0; i < g.n; ++i) {
            double dot = 0.0;
            for (int k = 0; k < rank; ++k) dot += vectors[i][k] * plane[k];
            bits[i] = dot > 0.0 ? 1u : 0u;
        }
        double v = cut_value(g, bits);
        if (v > best) {
            best = v;
            best_bits = bits;
        }
    }
    return make_cut_assignment(g, std::move(best_bits));
}

CutAssignment gw_local_search_cut(const Graph& g, std::uint64_t seed, int trials) {
    auto sol = bm_relax(g, child_seed(seed, seed_stream::bm_init));
    auto rounded = hyperplane_round(g, sol.vectors, trials, child_seed(seed, seed_stream::rounding));
    return local_search(g, std::move(rounded.bits));
}

} // namespace qaoa
