#include "qaoa/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qaoa {

namespace {

double checked_norm(const Statevector& sv) {
    double n = sv.norm_sq();
    if (!(n > 0.0)) throw std::invalid_argument("statevector has zero norm");
    return n;
}

} // namespace

double expectation(const Statevector& sv, const CutTable& table) {
    if (sv.n != table.n) throw std::invalid_argument("statevector/cut table size mismatch");
    const double n = checked_norm(sv);
    double acc = 0.0;
    for (std::size_t x = 0; x < sv.amps.size(); ++x) {
        acc += (std::norm(sv.amps[x]) / n) * table.values[x];
    }
    return acc;
}

double expectation(const Statevector& sv, const Graph& g) {
    return expectation(sv, build_cut_table(g));
}

double approximation_ratio(double value, double max_cut) {
    if (!(max_cut > 0.0)) throw std::invalid_argument("max cut must be positive");
    return value / max_cut;
}

double gsp(const Statevector& sv, const std::vector<std::uint64_t>& optima) {
    if (optima.empty()) throw std::invalid_argument("empty optimum set");
    const double n = checked_norm(sv);
    const std::uint64_t dim = std::uint64_t{1} << sv.n;
    double acc = 0.0;
    for (std::uint64_t x : optima) {
        if (x >= dim) throw std::invalid_argument("optimum index out of range");
        acc += std::norm(sv.amps[x]) / n;
    }
    return acc;
}

double gsp(const Statevector& sv, const std::vector<Bits>& optima) {
    std::vector<std::uint64_t> idx;
    idx.reserve(optima.size());
    for (const auto& b : optima) {
        if (static_cast<int>(b.size()) != sv.n)
            throw std::invalid_argument("optimum bitstring length mismatch");
        idx.push_back(bits_to_index(b));
    }
    return gsp(sv, idx);
}

double bsp(const Statevector& sv, const CutTable& table, double reference_cut) {
    if (sv.n != table.n) throw std::invalid_argument("statevector/cut table size mismatch");
    const double n = checked_norm(sv);
    double acc = 0.0;
    if (table.integral) {
        const long long ref = std::llround(reference_cut);
        for (std::size_t x = 0; x < sv.amps.size(); ++x) {
            if (std::llround(table.values[x]) > ref) acc += std::norm(sv.amps[x]) / n;
        }
    } else {
        const double ref = reference_cut + 1e-9;
        for (std::size_t x = 0; x < sv.amps.size(); ++x) {
            if (table.values[x] > ref) acc += std::norm(sv.amps[x]) / n;
        }
    }
    return acc;
}

double bsp(const Statevector& sv, const Graph& g, const CutAssignment& reference) {
    return bsp(sv, build_cut_table(g), reference.value);
}

MetricReport score_state(const Statevector& sv, const CutTable& table, double reference_cut,
                         std::optional<double> max_cut,
                         const std::vector<std::uint64_t>* optima) {
    MetricReport r;
    r.expectation = expectation(sv, table);
    r.bsp = bsp(sv, table, reference_cut);
    r.reference_cut = reference_cut;
    if (max_cut) {
        r.max_cut = *max_cut;
        r.approximation_ratio = approximation_ratio(r.expectation, *max_cut);
    }
    if (optima && !optima->empty()) r.gsp = gsp(sv, *optima);
    return r;
}

} // namespace qaoa
