#ifndef QAOA_OPTIMIZE_HPP
#define QAOA_OPTIMIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qaoa/graph.hpp"
#include "qaoa/metrics.hpp"
#include "qaoa/sim.hpp"

namespace qaoa {

enum class ObjectiveKind { expectation, bsp };

std::string to_string(ObjectiveKind kind);
ObjectiveKind parse_objective(const std::string& text);

// Maximization target for one (graph, warm start) pair. Parameters are
// wrapped into their periods before every simulation, so re-evaluating a
// reported point reproduces its value bit-for-bit.
struct Objective {
    const CutTable* table = nullptr; // borrowed; must outlive the objective
    WarmStart warm;
    MixerKind mixer = MixerKind::aligned;
    int depth = 1;
    ObjectiveKind kind = ObjectiveKind::expectation;
    double reference_cut = 0.0; // bsp threshold
    long long evals = 0;

    CircuitParams unpack(const std::vector<double>& flat) const;
    double evaluate(const std::vector<double>& flat);
    double evaluate(const CircuitParams& params);

    // the warm start never changes across evaluations; build it once and
    // reuse one scratch state so the optimizer loop stays allocation-free
    Statevector warm_cache;
    Statevector scratch;
};

enum class Strategy { basin_hop, grid, grid_then_refine, region_seeds_then_refine };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& text);

// Well-separated (gamma, beta) starts that cover the recurring optima
// basins of the depth-1 landscape.
std::vector<std::vector<double>> region_seeds();

struct TracePoint {
    std::vector<double> params; // wrapped, [gammas..., betas...]
    double value = 0.0;
    long long eval = 0; // objective evaluations consumed when this best was found
};

struct OptResult {
    std::vector<double> params; // wrapped, [gammas..., betas...]
    double value = 0.0;
    long long evals = 0;
    std::vector<TracePoint> trace; // best-so-far milestones
};

struct OptimizerConfig {
    Strategy strategy = Strategy::basin_hop;
    int iterations = 50;        // basin hop rounds
    int grid_gamma = 40;
    int grid_beta = 40;
    double refine_tolerance = 1e-8;
    int refine_max_evals = 2000;
    std::uint64_t seed = 0;
};

struct GridResult {
    OptResult best;
    int n_gamma = 0;
    int n_beta = 0;
    std::vector<double> values; // row-major, gamma index outer
};

// Depth-1 only: evaluate every cell center of [0,2pi) x [0,pi); ties keep
// the lowest (gamma, beta) index.
GridResult grid_search(Objective& obj, int n_gamma, int n_beta);

// Nelder-Mead ascent from `start`, tracking the best point ever evaluated
// (the start included), so refinement never loses to its seed.
OptResult local_refine(Objective& obj, const std::vector<double>& start, double tolerance,
                       int max_evals);

OptResult basin_hop(Objective& obj, const OptimizerConfig& cfg);

OptResult optimize(Objective& obj, const OptimizerConfig& cfg);

} // namespace qaoa

#endif
