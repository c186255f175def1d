#ifndef QAOA_METRICS_HPP
#define QAOA_METRICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qaoa/graph.hpp"
#include "qaoa/sim.hpp"

namespace qaoa {

// All metrics score the measured distribution p_x = |c_x|^2 / ||c||^2; the
// state norm is 1 up to floating-point drift, and dividing it out keeps the
// pole identities (expectation = cut(b), bsp = 0 at theta = 0) exact.

// <H_c> = sum_x p_x cut(x).
double expectation(const Statevector& sv, const CutTable& table);
double expectation(const Statevector& sv, const Graph& g);

// value / max_cut; rejects nonpositive max_cut.
double approximation_ratio(double value, double max_cut);

// Probability mass on the given optimal assignments (complements included
// by the brute-force oracle). Rejects an empty set.
double gsp(const Statevector& sv, const std::vector<std::uint64_t>& optima);
double gsp(const Statevector& sv, const std::vector<Bits>& optima);

// Better-solution probability: mass on assignments with cut strictly above
// the reference cut. Strictness uses integer comparison on integral-weight
// graphs and a 1e-9 margin otherwise.
double bsp(const Statevector& sv, const CutTable& table, double reference_cut);
double bsp(const Statevector& sv, const Graph& g, const CutAssignment& reference);

struct MetricReport {
    double expectation = 0.0;
    std::optional<double> approximation_ratio;
    std::optional<double> gsp;
    double bsp = 0.0;
    double reference_cut = 0.0;
    std::optional<double> max_cut;
};

MetricReport score_state(const Statevector& sv, const CutTable& table, double reference_cut,
                         std::optional<double> max_cut,
                         const std::vector<std::uint64_t>* optima);

} // namespace qaoa

#endif
