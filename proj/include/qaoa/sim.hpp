#ifndef QAOA_SIM_HPP
#define QAOA_SIM_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qaoa/bits.hpp"
#include "qaoa/graph.hpp"

namespace qaoa {

enum class MixerKind { aligned, pauli_x };

const char* to_string(MixerKind kind);
MixerKind parse_mixer(const std::string& name);

// Product start state |b_theta>: qubit j sits at tilt theta from the pole
// selected by bit j, in the xz-plane. theta is kept in degrees (the sweep
// grid unit) and converted to radians at use.
struct WarmStart {
    Bits bits;
    double theta_deg = 0.0;
};

// Bloch axis of qubit j in |b_theta>; the aligned mixer rotates about it.
std::array<double, 3> warm_start_axis(const WarmStart& ws, int qubit);

struct Statevector {
    int n = 0;
    std::vector<std::complex<double>> amps; // 2^n entries; index bit j (LSB = qubit 0) is qubit j

    double norm_sq() const;
};

struct CircuitParams {
    std::vector<double> gammas; // cost parameters, one period [0, 2*pi)
    std::vector<double> betas;  // mixer parameters, one period [0, pi)

    int depth() const { return static_cast<int>(gammas.size()); }
};

void validate_params(const CircuitParams& params);

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kGammaPeriod = 2.0 * kPi;
inline constexpr double kBetaPeriod = kPi;

// Reduce into [0, period); optimizer seeds and proposals outside the domain
// are folded here before evaluation.
double wrap_angle(double x, double period);
CircuitParams wrap_params(CircuitParams params);

Statevector warm_start_state(const WarmStart& ws);

// Diagonal phase e^{-i*gamma*cut(x)} per basis state.
void apply_cost(Statevector& sv, const CutTable& table, double gamma);

// Per-qubit rotation exp(-i*beta*n.sigma) about each qubit's warm-start axis.
void apply_aligned_mixer(Statevector& sv, const WarmStart& ws, double beta);

// Per-qubit exp(-i*beta*sigma_x).
void apply_x_mixer(Statevector& sv, double beta);

// Cost-first layers: U_m(beta_p) U_c(gamma_p) ... U_m(beta_1) U_c(gamma_1) |b_theta>.
// The pauli_x variant keeps the same start state and swaps only the mixer.
Statevector qaoa_state(const CutTable& table, const WarmStart& ws, const CircuitParams& params,
                       MixerKind mixer);
Statevector qaoa_state(const Graph& g, const WarmStart& ws, const CircuitParams& params,
                       MixerKind mixer);

// Diagnostic dump, one "index,re,im" row per amplitude.
void dump_statevector_csv(const Statevector& sv, std::ostream& out);

} // namespace qaoa

#endif
