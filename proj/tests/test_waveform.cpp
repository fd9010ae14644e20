#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spcfmcw/waveform.hpp"

using namespace spcfmcw;

namespace {
constexpr double kPi = std::numbers::pi;
const ChirpParams kDesk{3.315e9, 0.25e-3, 50e6, 200e6};
}  // namespace

TEST_CASE("chirp parameters derive slope and length") {
    CHECK(kDesk.k() == doctest::Approx(2e11));
    CHECK(kDesk.n_samples() == 50000);
    ChirpParams bad = kDesk;
    bad.tx_rate = 80e6;  // < 2B
    CHECK_THROWS(bad.validate());
}

TEST_CASE("fmcw chirp follows the quadratic phase law") {
    ChirpParams p{1e9, 1e-3, 1e5, 1e6};
    const auto x = fmcw_chirp(p);
    REQUIRE(x.size() == 1000);
    CHECK(x.sample_rate == p.tx_rate);
    const double k = p.k();
    for (std::size_t i : {0u, 1u, 137u, 999u}) {
        const double t = static_cast<double>(i) / p.tx_rate;
        const cplx want = std::polar(1.0, -kPi * k * t * t);
        CHECK(std::abs(x.samples[i] - want) < 1e-9);
    }
}

TEST_CASE("all-zero bpsk coding degenerates to the plain chirp") {
    const auto code = make_phase_code(std::vector<int>(8, 0), PhaseType::BPSK, kDesk.T);
    const auto env = coded_envelope(code, kDesk.tx_rate);
    const auto coded = pc_fmcw(kDesk, env);
    const auto plain = fmcw_chirp(kDesk);
    REQUIRE(coded.size() == plain.size());
    for (std::size_t i = 0; i < coded.size(); i += 997) {
        CHECK(std::abs(coded.samples[i] - plain.samples[i]) < 1e-12);
    }
}

TEST_CASE("pc_fmcw rejects mismatched envelopes") {
    const auto code = make_phase_code({0, 1}, PhaseType::BPSK, kDesk.T);
    auto env = coded_envelope(code, kDesk.tx_rate);
    env.signal.samples.pop_back();
    CHECK_THROWS(pc_fmcw(kDesk, env));
}

TEST_CASE("frame stamps pulse start times") {
    const auto code = make_phase_code({0, 1, 1, 0}, PhaseType::BPSK, kDesk.T);
    const auto env = coded_envelope(code, kDesk.tx_rate);
    const auto pulses = frame(kDesk, FrameParams{3, 0.0}, {env});
    REQUIRE(pulses.size() == 3);
    for (std::size_t m = 0; m < 3; ++m) {
        CHECK(pulses[m].t0 == doctest::Approx(static_cast<double>(m) * kDesk.T));
        CHECK(pulses[m].size() == kDesk.n_samples());
    }
}
