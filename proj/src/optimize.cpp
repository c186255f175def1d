#include "qaoa/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qaoa {

std::string to_string(ObjectiveKind kind) {
    return kind == ObjectiveKind::expectation ? "expectation" : "bsp";
}

ObjectiveKind parse_objective(const std::string& text) {
    if (text == "expectation") return ObjectiveKind::expectation;
    if (text == "bsp") return ObjectiveKind::bsp;
    throw std::invalid_argument("unknown objective: " + text);
}

CircuitParams Objective::unpack(const std::vector<double>& flat) const {
    if (static_cast<int>(flat.size()) != 2 * depth)
        throw std::invalid_argument("parameter vector length must be 2*depth");
    CircuitParams p;
    p.gammas.assign(flat.begin(), flat.begin() + depth);
    p.betas.assign(flat.begin() + depth, flat.end());
    return p;
}

double Objective::evaluate(const std::vector<double>& flat) { return evaluate(unpack(flat)); }

double Objective::evaluate(const CircuitParams& params) {
    if (!table) throw std::invalid_argument("objective has no cut table");
    if (params.depth() != depth) throw std::invalid_argument("parameter depth mismatch");
    ++evals;
    if (warm_cache.n == 0) {
        if (static_cast<int>(warm.bits.size()) != table->n)
            throw std::invalid_argument("warm start width does not match graph");
        warm_cache = warm_start_state(warm);
    }
    const CircuitParams wrapped = wrap_params(params);
    validate_params(wrapped);
    scratch.n = warm_cache.n;
    scratch.amps = warm_cache.amps;
    for (int layer = 0; layer < depth; ++layer) {
        apply_cost(scratch, *table, wrapped.gammas[static_cast<std::size_t>(layer)]);
        if (mixer == MixerKind::aligned)
            apply_aligned_mixer(scratch, warm, wrapped.betas[static_cast<std::size_t>(layer)]);
        else
            apply_x_mixer(scratch, wrapped.betas[static_cast<std::size_t>(layer)]);
    }
    if (kind == ObjectiveKind::expectation) return expectation(scratch, *table);
    return bsp(scratch, *table, reference_cut);
}

std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::basin_hop: return "basin_hop";
    case Strategy::grid: return "grid";
    case Strategy::grid_then_refine: return "grid_then_refine";
    case Strategy::region_seeds_then_refine: return "region_seeds_then_refine";
    }
    throw std::invalid_argument("bad strategy value");
}

Strategy parse_strategy(const std::string& text) {
    if (text == "basin_hop") return Strategy::basin_hop;
    if (text == "grid") return Strategy::grid;
    if (text == "grid_then_refine") return Strategy::grid_then_refine;
    if (text == "region_seeds_then_refine") return Strategy::region_seeds_then_refine;
    throw std::invalid_argument("unknown strategy: " + text);
}

std::vector<std::vector<double>> region_seeds() {
    return {{0.5634, 0.486}, {3.142, 1.5705}, {2.5144, 0.3996}};
}

namespace {

std::vector<double> wrap_flat(const Objective& obj, std::vector<double> flat) {
    for (int k = 0; k < obj.depth; ++k) flat[k] = wrap_angle(flat[k], kGammaPeriod);
    for (int k = obj.depth; k < 2 * obj.depth; ++k) flat[k] = wrap_angle(flat[k], kBetaPeriod);
    return flat;
}

// Shared best-ever bookkeeping: every evaluation funnels through note().
struct BestTracker {
    Objective& obj;
    OptResult result;

    explicit BestTracker(Objective& o) : obj(o) { result.value = -1e300; }

    double note(const std::vector<double>& flat) {
        double v = obj.evaluate(flat);
        if (v > result.value) {
            result.value = v;
            result.params = wrap_flat(obj, flat);
            result.trace.push_back({result.params, v, obj.evals});
        }
        return v;
    }
};

void nelder_mead(BestTracker& best, const std::vector<double>& start, double tolerance,
                 long long eval_budget) {
    const std::size_t dim = start.size();
    const long long start_evals = best.obj.evals;

    std::vector<std::vector<double>> simplex;
    std::vector<double> fvals;
    simplex.push_back(start);
    fvals.push_back(best.note(start));
    for (std::size_t k = 0; k < dim; ++k) {
        auto v = start;
        // Offsets scale with each coordinate's period (gammas first half).
        v[k] += (k < dim / 2) ? 0.3 : 0.15;
        simplex.push_back(v);
        fvals.push_back(best.note(v));
    }

    auto spent = [&] { return best.obj.evals - start_evals; };
    std::vector<std::size_t> order(simplex.size());

    while (spent() < eval_budget) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Descending by value: order[0] is the best vertex.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fvals[a] > fvals[b]; });
        if (fvals[order.front()] - fvals[order.back()] < tolerance) break;

        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t idx : order) {
            if (idx == worst) continue;
            for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[idx][k];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t k = 0; k < dim; ++k)
                p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            return p;
        };

        auto reflected = blend(-1.0);
        double fr = best.note(reflected);
        if (fr > fvals[order.front()]) {
            auto expanded = blend(-2.0);
            double fe = best.note(expanded);
            if (fe > fr) {
                simplex[worst] = std::move(expanded);
                fvals[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                fvals[worst] = fr;
            }
        } else if (fr > fvals[second_worst]) {
            simplex[worst] = std::move(reflected);
            fvals[worst] = fr;
        } else {
            double t = fr > fvals[worst] ? -0.5 : 0.5; // outside vs inside contraction
            auto contracted = blend(t);
            double fc = best.note(contracted);
            if (fc > std::max(fr, fvals[worst])) {
                simplex[worst] = std::move(contracted);
                fvals[worst] = fc;
            } else {
                // Shrink everything toward the best vertex.
                const auto anchor = simplex[order.front()];
                for (std::size_t idx = 0; idx < simplex.size(); ++idx) {
                    if (idx == order.front()) continue;
                    for (std::size_t k = 0; k < dim; ++k)
                        simplex[idx][k] = anchor[k] + 0.5 * (simplex[idx][k] - anchor[k]);
                    fvals[idx] = best.note(simplex[idx]);
                }
            }
        }
    }
}

} // namespace

GridResult grid_search(Objective& obj, int n_gamma, int n_beta) {
    if (obj.depth != 1) throw std::invalid_argument("grid search is defined for depth 1 only");
    if (n_gamma < 2 || n_beta < 2)
        throw std::invalid_argument("grid needs at least 2 cells per axis");

    GridResult grid;
    grid.n_gamma = n_gamma;
    grid.n_beta = n_beta;
    grid.values.reserve(static_cast<std::size_t>(n_gamma) * n_beta);

    const long long start_evals = obj.evals;
    double best = -1e300;
    std::vector<double> best_point;
    for (int i = 0; i < n_gamma; ++i) {
        double gamma = (i + 0.5) * kGammaPeriod / n_gamma;
        for (int j = 0; j < n_beta; ++j) {
            double beta = (j + 0.5) * kBetaPeriod / n_beta;
            double v = obj.evaluate({gamma, beta});
            grid.values.push_back(v);
            if (v > best) { // strict: ties keep the earliest cell
                best = v;
                best_point = {gamma, beta};
            }
        }
    }
    grid.best.params = wrap_flat(obj, best_point);
    grid.best.value = best;
    grid.best.evals = obj.evals - start_evals;
    return grid;
}

OptResult local_refine(Objective& obj, const std::vector<double>& start, double tolerance,
                       int max_evals) {
    if (static_cast<int>(start.size()) != 2 * obj.depth)
        throw std::invalid_argument("start point length must be 2*depth");
    BestTracker best(obj);
    const long long before = obj.evals;
    nelder_mead(best, start, tolerance, max_evals);
    best.result.evals = obj.evals - before;
    return best.result;
}

OptResult basin_hop(Objective& obj, const OptimizerConfig& cfg) {
    if (cfg.iterations < 1) throw std::invalid_argument("basin hop needs at least one round");
    std::mt19937_64 rng(cfg.seed);
    auto uniform = [&](double period) {
        return period * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    auto gaussian = [&] {
        double u1 = 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };

    BestTracker best(obj);
    const long long before = obj.evals;

    std::vector<double> current(2 * obj.depth);
    for (int k = 0; k < obj.depth; ++k) current[k] = uniform(kGammaPeriod);
    for (int k = obj.depth; k < 2 * obj.depth; ++k) current[k] = uniform(kBetaPeriod);

    nelder_mead(best, current, cfg.refine_tolerance, cfg.refine_max_evals);
    current = best.result.params;
    double current_value = best.result.value;

    constexpr double kSigmaGamma = 0.8;
    constexpr double kSigmaBeta = 0.4;
    constexpr double kTemperature = 1.0;

    for (int round = 1; round < cfg.iterations; ++round) {
        auto proposal = current;
        for (int k = 0; k < obj.depth; ++k) proposal[k] += kSigmaGamma * gaussian();
        for (int k = obj.depth; k < 2 * obj.depth; ++k) proposal[k] += kSigmaBeta * gaussian();

        BestTracker hop(obj);
        nelder_mead(hop, proposal, cfg.refine_tolerance, cfg.refine_max_evals);
        if (hop.result.value > best.result.value) {
            best.result.value = hop.result.value;
            best.result.params = hop.result.params;
            best.result.trace.push_back({hop.result.params, hop.result.value, obj.evals});
        }

        double accept = std::exp((hop.result.value - current_value) / kTemperature);
        double roll = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (hop.result.value >= current_value || roll < accept) {
            current = hop.result.params;
            current_value = hop.result.value;
        }
    }

    best.result.evals = obj.evals - before;
    return best.result;
}

OptResult optimize(Objective& obj, const OptimizerConfig& cfg) {
    switch (cfg.strategy) {
    case Strategy::basin_hop:
        return basin_hop(obj, cfg);
    case Strategy::grid:
        return grid_search(obj, cfg.grid_gamma, cfg.grid_beta).best;
    case Strategy::grid_then_refine: {
        auto grid = grid_search(obj, cfg.grid_gamma, cfg.grid_beta);
        // local_refine folds its start into the best-ever result, so the
        // refined value can never fall below the grid winner.
        auto refined = local_refine(obj, grid.best.params, cfg.refine_tolerance,
                                    cfg.refine_max_evals);
        refined.evals += grid.best.evals;
        return refined;
    }
    case Strategy::region_seeds_then_refine: {
        if (obj.depth != 1)
            throw std::invalid_argument("region seeds are depth-1 starting points");
        const long long before = obj.evals;
        OptResult overall;
        overall.value = -1e300;
        for (const auto& seed : region_seeds()) {
            auto r = local_refine(obj, seed, cfg.refine_tolerance, cfg.refine_max_evals);
            if (r.value > overall.value) {
                overall.value = r.value;
                overall.params = r.params;
                overall.trace.push_back({r.params, r.value, obj.evals});
            }
        }
        overall.evals = obj.evals - before;
        return overall;
    }
    }
    throw std::invalid_argument("bad strategy value");
}

} // namespace qaoa
