#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "qaoa/classical.hpp"
#include "qaoa/errors.hpp"
#include "qaoa/sim.hpp"

using namespace qaoa;

namespace {

double max_amp_difference(const Statevector& a, const Statevector& b) {
    REQUIRE(a.amps.size() == b.amps.size());
    double worst = 0.0;
    for (std::size_t x = 0; x < a.amps.size(); ++x) {
        worst = std::max(worst, std::abs(a.amps[x] - b.amps[x]));
    }
    return worst;
}

double uniform(std::mt19937_64& rng, double period) {
    return period * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

} // namespace

TEST_CASE("warm start at the poles is the exact basis state") {
    const WarmStart ws{parse_bits("0110"), 0.0};
    const Statevector sv = warm_start_state(ws);
    const std::uint64_t idx = bits_to_index(ws.bits);
    for (std::size_t x = 0; x < sv.amps.size(); ++x) {
        if (x == idx) {
            CHECK(sv.amps[x] == std::complex<double>{1.0, 0.0});
        } else {
            CHECK(sv.amps[x] == std::complex<double>{0.0, 0.0});
        }
    }
}

TEST_CASE("warm start at 90 degrees is the uniform superposition") {
    const WarmStart ws{parse_bits("0110"), 90.0};
    const Statevector sv = warm_start_state(ws);
    const double expected = std::pow(2.0, -2.0); // 2^(-n/2), n = 4
    for (const auto& amp : sv.amps) {
        CHECK(amp.real() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(amp.imag() == 0.0);
    }
}

TEST_CASE("tilted product amplitudes multiply per qubit") {
    const WarmStart ws{parse_bits("01"), 60.0};
    const Statevector sv = warm_start_state(ws);
    // |01> has qubit 0 at the north branch and qubit 1 at the south branch,
    // so index 2 holds cos(30 deg) * cos(30 deg) = 3/4.
    CHECK(sv.amps[2].real() == doctest::Approx(0.75).epsilon(1e-12));
    for (const auto& amp : sv.amps) {
        CHECK(amp.imag() == 0.0);
        CHECK(amp.real() >= 0.0);
    }
    CHECK(sv.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("warm start rejects out-of-range tilt and oversized registers") {
    CHECK_THROWS_AS(warm_start_state({parse_bits("01"), -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(warm_start_state({parse_bits("01"), 180.5}), std::invalid_argument);
    CHECK_THROWS_AS(warm_start_state({Bits(27, 0), 45.0}), SizeLimitError);
}

TEST_CASE("warm start axes follow the bit poles") {
    const WarmStart ws{parse_bits("01"), 60.0};
    const auto north = warm_start_axis(ws, 0);
    const auto south = warm_start_axis(ws, 1);
    const double s = std::sin(60.0 * kPi / 180.0);
    const double c = std::cos(60.0 * kPi / 180.0);
    CHECK(north[0] == doctest::Approx(s));
    CHECK(north[1] == 0.0);
    CHECK(north[2] == doctest::Approx(c));
    CHECK(south[0] == doctest::Approx(s));
    CHECK(south[1] == 0.0);
    CHECK(south[2] == doctest::Approx(-c));
}

TEST_CASE("cost at gamma 0 is the identity") {
    const WarmStart ws{parse_bits("0101"), 37.0};
    Statevector sv = warm_start_state(ws);
    const Statevector before = sv;
    apply_cost(sv, build_cut_table(make_k4()), 0.0);
    CHECK(max_amp_difference(sv, before) == 0.0);
}

TEST_CASE("cost on a basis state only rotates the global phase") {
    const WarmStart ws{parse_bits("0011"), 0.0};
    Statevector sv = warm_start_state(ws);
    apply_cost(sv, build_cut_table(make_k4()), 1.234);
    for (std::size_t x = 0; x < sv.amps.size(); ++x) {
        const double p = std::norm(sv.amps[x]);
        if (x == 12) {
            CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(p == 0.0);
        }
    }
}

TEST_CASE("cost at gamma = pi negates the odd-cut amplitudes of an edge") {
    const Graph edge{2, {{0, 1}}};
    Statevector sv = warm_start_state({parse_bits("00"), 90.0});
    apply_cost(sv, build_cut_table(edge), kPi);
    // cut values (0,1,1,0) -> phases (1,-1,-1,1) on amplitudes of 1/2.
    CHECK(sv.amps[0].real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sv.amps[1].real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(sv.amps[2].real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(sv.amps[3].real() == doctest::Approx(0.5).epsilon(1e-12));
    for (const auto& amp : sv.amps) CHECK(std::abs(amp.imag()) < 1e-12);
}

TEST_CASE("aligned mixer at 90 degrees equals the Pauli-X mixer") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Bits b = random_bits(6, rng());
        const double beta = uniform(rng, kBetaPeriod);
        Statevector a = warm_start_state({b, 90.0});
        Statevector x = a;
        apply_aligned_mixer(a, {b, 90.0}, beta);
        apply_x_mixer(x, beta);
        CHECK(max_amp_difference(a, x) < 1e-12);
    }
}

TEST_CASE("the warm start is an eigenstate of its own mixer") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Bits b = random_bits(5, rng());
        const double theta = uniform(rng, 180.0);
        const double beta = uniform(rng, kBetaPeriod);
        const WarmStart ws{b, theta};
        Statevector sv = warm_start_state(ws);
        const Statevector before = sv;
        apply_aligned_mixer(sv, ws, beta);
        double worst = 0.0;
        for (std::size_t i = 0; i < sv.amps.size(); ++i) {
            worst = std::max(worst, std::abs(std::norm(sv.amps[i]) - std::norm(before.amps[i])));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("x mixer basics: identity, quarter turn, half turn") {
    Statevector sv = warm_start_state({parse_bits("0"), 0.0});
    apply_x_mixer(sv, 0.0);
    CHECK(sv.amps[0] == std::complex<double>{1.0, 0.0});

    apply_x_mixer(sv, kPi / 2.0); // exp(-i(pi/2)X) = -iX
    CHECK(std::abs(sv.amps[0]) < 1e-12);
    CHECK(sv.amps[1].real() == doctest::Approx(0.0));
    CHECK(sv.amps[1].imag() == doctest::Approx(-1.0).epsilon(1e-12));

    Statevector two = warm_start_state({parse_bits("01"), 33.0});
    const Statevector before = two;
    apply_x_mixer(two, kPi); // global phase (-1)^n = +1 for n = 2
    CHECK(max_amp_difference(two, before) < 1e-12);
}

TEST_CASE("all-zero parameters leave the warm start untouched") {
    const WarmStart ws{parse_bits("011010"), 47.0};
    const CircuitParams params{{0.0}, {0.0}};
    for (MixerKind mixer : {MixerKind::aligned, MixerKind::pauli_x}) {
        const Statevector out = qaoa_state(make_k33(), ws, params, mixer);
        CHECK(max_amp_difference(out, warm_start_state(ws)) < 1e-15);
    }
}

TEST_CASE("theta 0 circuits keep all mass on the warm-start bitstring") {
    const Graph g = generate_regular(8, 3, 21);
    const Bits b = random_bits(8, 5);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const CircuitParams params{{uniform(rng, kGammaPeriod)}, {uniform(rng, kBetaPeriod)}};
        const Statevector out = qaoa_state(g, {b, 0.0}, params, MixerKind::aligned);
        CHECK(std::norm(out.amps[bits_to_index(b)]) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("at 90 degrees both mixers give the same circuit output") {
    const Graph g = generate_regular(10, 3, 2);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Bits b = random_bits(10, rng());
        const CircuitParams params{{uniform(rng, kGammaPeriod), uniform(rng, kGammaPeriod)},
                                   {uniform(rng, kBetaPeriod), uniform(rng, kBetaPeriod)}};
        const WarmStart ws{b, 90.0};
        const Statevector a = qaoa_state(g, ws, params, MixerKind::aligned);
        const Statevector x = qaoa_state(g, ws, params, MixerKind::pauli_x);
        CHECK(max_amp_difference(a, x) < 1e-12);
    }
}

TEST_CASE("norm is preserved across deep circuits") {
    std::mt19937_64 rng(23);
    for (int n : {10, 16}) {
        const Graph g = generate_regular(n, 3, 4);
        for (int trial = 0; trial < 50; ++trial) {
            const int p = 1 + static_cast<int>(rng() % 4);
            CircuitParams params;
            for (int k = 0; k < p; ++k) {
                params.gammas.push_back(uniform(rng, kGammaPeriod));
                params.betas.push_back(uniform(rng, kBetaPeriod));
            }
            const Bits b = random_bits(n, rng());
            const double theta = uniform(rng, 180.0);
            const MixerKind mixer = (rng() & 1u) ? MixerKind::aligned : MixerKind::pauli_x;
            const Statevector out = qaoa_state(g, {b, theta}, params, mixer);
            CHECK(out.norm_sq() == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("angle wrapping is idempotent and stays inside one period") {
    CHECK(wrap_angle(0.3, kGammaPeriod) == 0.3);
    CHECK(wrap_angle(kGammaPeriod + 0.3, kGammaPeriod) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(wrap_angle(-0.1, kBetaPeriod) == doctest::Approx(kBetaPeriod - 0.1).epsilon(1e-12));
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 50.0;
        const double once = wrap_angle(x, kBetaPeriod);
        CHECK(once >= 0.0);
        CHECK(once < kBetaPeriod);
        CHECK(wrap_angle(once, kBetaPeriod) == once);
    }
}

TEST_CASE("parameter validation rejects ragged arrays") {
    CHECK_THROWS_AS(validate_params({{0.1, 0.2}, {0.3}}), std::invalid_argument);
    CHECK_THROWS_AS(validate_params({{}, {}}), std::invalid_argument);
    CHECK_NOTHROW(validate_params({{0.1}, {0.2}}));
}

TEST_CASE("mixer names round-trip") {
    CHECK(parse_mixer("aligned") == MixerKind::aligned);
    CHECK(parse_mixer("pauli_x") == MixerKind::pauli_x);
    CHECK(std::string(to_string(MixerKind::aligned)) == "aligned");
    CHECK(std::string(to_string(MixerKind::pauli_x)) == "pauli_x");
    CHECK_THROWS_AS(parse_mixer("hadamard"), std::invalid_argument);
}

TEST_CASE("statevector dump emits one row per amplitude") {
    const Statevector sv = warm_start_state({parse_bits("01"), 0.0});
    std::ostringstream out;
    dump_statevector_csv(sv, out);
    CHECK(out.str() == "index,re,im\n0,0,0\n1,0,0\n2,1,0\n3,0,0\n");
}
