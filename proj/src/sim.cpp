#include "qaoa/sim.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {

using cplx = std::complex<double>;

constexpr double kDegToRad = kPi / 180.0;

void check_theta(double theta_deg) {
    if (!(theta_deg >= 0.0 && theta_deg <= 180.0))
        throw std::invalid_argument("tilt angle must lie in [0, 180] degrees");
}

void check_dims(const Statevector& sv, int n, const char* what) {
    if (sv.n != n)
        throw std::invalid_argument(std::string(what) + ": state has " + std::to_string(sv.n) +
                                    " qubits, expected " + std::to_string(n));
}

// In-place 2x2 on qubit j for u = [[cb - ix, -iy], [-iy, cb + ix]], the
// exponential of a Hamiltonian in the xz-plane. Spelled out in real
// arithmetic (same products, same addition order as the complex form) so
// the hot loop does not round-trip through libm complex multiplies.
void apply_axis_rotation(Statevector& sv, int j, double cb, double x, double y) {
    const std::size_t stride = std::size_t{1} << j;
    const std::size_t dim = sv.amps.size();
    // complex<double> guarantees array-of-two-doubles layout
    double* a = reinterpret_cast<double*>(sv.amps.data());
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            double* p = a + 2 * k;
            double* q = a + 2 * (k + stride);
            const double p_re = p[0], p_im = p[1];
            const double q_re = q[0], q_im = q[1];
            p[0] = cb * p_re + x * p_im + y * q_im;
            p[1] = cb * p_im - x * p_re - y * q_re;
            q[0] = cb * q_re - x * q_im + y * p_im;
            q[1] = cb * q_im + x * q_re - y * p_re;
        }
    }
}

} // namespace

const char* to_string(MixerKind kind) { return kind == MixerKind::aligned ? "aligned" : "pauli_x"; }

MixerKind parse_mixer(const std::string& name) {
    if (name == "aligned") return MixerKind::aligned;
    if (name == "pauli_x") return MixerKind::pauli_x;
    throw std::invalid_argument("unknown mixer: " + name);
}

std::array<double, 3> warm_start_axis(const WarmStart& ws, int qubit) {
    check_theta(ws.theta_deg);
    if (qubit < 0 || qubit >= static_cast<int>(ws.bits.size()))
        throw std::invalid_argument("qubit index out of range");
    const double theta = ws.theta_deg * kDegToRad;
    const double nx = std::sin(theta);
    const double nz = ws.bits[static_cast<std::size_t>(qubit)] ? -std::cos(theta) : std::cos(theta);
    return {nx, 0.0, nz};
}

double Statevector::norm_sq() const {
    double acc = 0.0;
    for (const auto& c : amps) acc += std::norm(c);
    return acc;
}

void validate_params(const CircuitParams& params) {
    if (params.gammas.empty()) throw std::invalid_argument("circuit depth must be at least 1");
    if (params.gammas.size() != params.betas.size())
        throw std::invalid_argument("gamma and beta arrays must have equal length");
}

double wrap_angle(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r;
}

CircuitParams wrap_params(CircuitParams params) {
    for (auto& g : params.gammas) g = wrap_angle(g, kGammaPeriod);
    for (auto& b : params.betas) b = wrap_angle(b, kBetaPeriod);
    return params;
}

Statevector warm_start_state(const WarmStart& ws) {
    check_theta(ws.theta_deg);
    const int n = static_cast<int>(ws.bits.size());
    if (n < 1) throw std::invalid_argument("warm start needs at least one qubit");
    if (n > kBruteForceMaxVertices)
        throw SizeLimitError("statevector capped at n <= " + std::to_string(kBruteForceMaxVertices));

    const double half = 0.5 * ws.theta_deg * kDegToRad;
    const double c = std::cos(half);
    const double s = std::sin(half);

    Statevector sv;
    sv.n = n;
    sv.amps.assign(std::size_t{1} << n, cplx{0.0, 0.0});
    sv.amps[0] = 1.0;
    std::size_t dim = 1;
    for (int j = 0; j < n; ++j) {
        // bit 0 tilts from the north pole, bit 1 from the south pole
        const double a0 = ws.bits[static_cast<std::size_t>(j)] ? s : c;
        const double a1 = ws.bits[static_cast<std::size_t>(j)] ? c : s;
        for (std::size_t k = 0; k < dim; ++k) {
            sv.amps[k + dim] = sv.amps[k] * a1;
            sv.amps[k] *= a0;
        }
        dim <<= 1;
    }
    return sv;
}

void apply_cost(Statevector& sv, const CutTable& table, double gamma) {
    check_dims(sv, table.n, "apply_cost");
    const std::size_t dim = sv.amps.size();
    if (table.integral) {
        std::vector<cplx> phase(static_cast<std::size_t>(table.max_int) + 1);
        for (std::size_t k = 0; k < phase.size(); ++k)
            phase[k] = std::polar(1.0, -gamma * static_cast<double>(k));
        double* a = reinterpret_cast<double*>(sv.amps.data());
        const double* lut = reinterpret_cast<const double*>(phase.data());
        for (std::size_t x = 0; x < dim; ++x) {
            const std::size_t k = 2 * static_cast<std::size_t>(std::llround(table.values[x]));
            const double pr = lut[k], pi = lut[k + 1];
            const double re = a[2 * x], im = a[2 * x + 1];
            a[2 * x] = re * pr - im * pi;
            a[2 * x + 1] = re * pi + im * pr;
        }
    } else {
        for (std::size_t x = 0; x < dim; ++x) {
            const cplx p = std::polar(1.0, -gamma * table.values[x]);
            const double re = sv.amps[x].real(), im = sv.amps[x].imag();
            sv.amps[x] = {re * p.real() - im * p.imag(), re * p.imag() + im * p.real()};
        }
    }
}

void apply_aligned_mixer(Statevector& sv, const WarmStart& ws, double beta) {
    check_theta(ws.theta_deg);
    check_dims(sv, static_cast<int>(ws.bits.size()), "apply_aligned_mixer");

    const double theta = ws.theta_deg * kDegToRad;
    const double nx = std::sin(theta);
    const double nz = std::cos(theta);
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);

    // exp(-i beta n.sigma) = cos(beta) I - i sin(beta) (nx X + nz Z), nz sign per bit
    const double x_north = sb * nz; // u00 = cb - ix, u11 = cb + ix
    const double y = sb * nx;       // off-diagonal -iy

    for (int j = 0; j < sv.n; ++j) {
        const double x = ws.bits[static_cast<std::size_t>(j)] ? -x_north : x_north;
        apply_axis_rotation(sv, j, cb, x, y);
    }
}

void apply_x_mixer(Statevector& sv, double beta) {
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    for (int j = 0; j < sv.n; ++j) apply_axis_rotation(sv, j, cb, 0.0, sb);
}

Statevector qaoa_state(const CutTable& table, const WarmStart& ws, const CircuitParams& params,
                       MixerKind mixer) {
    validate_params(params);
    if (static_cast<int>(ws.bits.size()) != table.n)
        throw std::invalid_argument("warm start width does not match graph");

    Statevector sv = warm_start_state(ws);
    for (int layer = 0; layer < params.depth(); ++layer) {
        apply_cost(sv, table, params.gammas[static_cast<std::size_t>(layer)]);
        if (mixer == MixerKind::aligned)
            apply_aligned_mixer(sv, ws, params.betas[static_cast<std::size_t>(layer)]);
        else
            apply_x_mixer(sv, params.betas[static_cast<std::size_t>(layer)]);
    }
    return sv;
}

Statevector qaoa_state(const Graph& g, const WarmStart& ws, const CircuitParams& params,
                       MixerKind mixer) {
    return qaoa_state(build_cut_table(g), ws, params, mixer);
}

void dump_statevector_csv(const Statevector& sv, std::ostream& out) {
    out.precision(17);
    out << "index,re,im\n";
    for (std::size_t x = 0; x < sv.amps.size(); ++x)
        out << x << ',' << sv.amps[x].real() << ',' << sv.amps[x].imag() << '\n';
}

} // namespace qaoa
