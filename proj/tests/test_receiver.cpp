#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spcfmcw/metrics.hpp"
#include "spcfmcw/receiver.hpp"

using namespace spcfmcw;

namespace {

constexpr double kPi = std::numbers::pi;
const ChirpParams kDesk{3.315e9, 0.25e-3, 50e6, 200e6};
const ReceiverConfig kRx{10e6, 0.0, 0.0, 100.0};

ComplexBaseband tone(double f0, double fs, std::size_t n) {
    ComplexBaseband sig;
    sig.sample_rate = fs;
    sig.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sig.samples[i] = std::polar(1.0, 2.0 * kPi * f0 * static_cast<double>(i) / fs);
    }
    return sig;
}

}  // namespace

TEST_CASE("receiver defaults fill sampling rate and max beat") {
    const ReceiverConfig c = kRx.with_defaults();
    CHECK(c.f_s == 10e6);
    CHECK(c.f_b_max == 5e6);
    CHECK(c.tau_max(kDesk.k()) == doctest::Approx(2.5e-5));
    CHECK(c.r_max(kDesk.k()) == doctest::Approx(kSpeedOfLight * 5e6 / (2.0 * kDesk.k())));
    ReceiverConfig bad = kRx;
    bad.f_s = 30e6;  // 200 MHz / 30 MHz is not an integer
    CHECK_THROWS(bad.validate(kDesk.tx_rate));
}

TEST_CASE("brick-wall lpf keeps the boundary bin and kills the band edge") {
    const double fs = 1000.0;
    const std::size_t n = 1000;
    ReceiverConfig cfg{100.0, fs, 0.0, 100.0};  // passband |f| <= 50 Hz, no decimation
    const auto pass = lowpass_and_sample(tone(50.0, fs, n), cfg);
    double e_pass = 0.0;
    for (const auto& v : pass.samples) e_pass += std::norm(v);
    CHECK(e_pass == doctest::Approx(static_cast<double>(n)).epsilon(1e-9));
    const auto stop = lowpass_and_sample(tone(51.0, fs, n), cfg);
    double e_stop = 0.0;
    for (const auto& v : stop.samples) e_stop += std::norm(v);
    CHECK(e_stop < 1e-18);
}

TEST_CASE("lowpass decimates to the adc rate") {
    const auto beat = tone(1e6, kDesk.tx_rate, kDesk.n_samples());
    const auto out = lowpass_and_sample(beat, kRx);
    CHECK(out.sample_rate == 10e6);
    CHECK(out.size() == 2500);
}

TEST_CASE("min_cutoff formula") {
    CHECK(min_cutoff(1e-3, 200e6, 2998.0, 1024, 1) ==
          doctest::Approx((2.0 * 200e6 * 2998.0 / kSpeedOfLight + 1024.0) / 1e-3));
}

TEST_CASE("group-delay filter inverts the phase-lag compensation") {
    const auto code = make_phase_code(random_code(16, 2), PhaseType::GMSK, kDesk.T);
    const auto env = coded_envelope(code, kDesk.tx_rate);
    const auto comp = compensate_phase_lag(env, kDesk.k());
    const auto back = group_delay_filter(comp.signal, kDesk.k());
    for (std::size_t i = 0; i < env.signal.size(); i += 991) {
        CHECK(std::abs(back.samples[i] - env.signal.samples[i]) < 1e-10);
    }
}

TEST_CASE("uncoded chain resolves an on-grid target at the window floor") {
    const auto tx = fmcw_chirp(kDesk);
    const double f_b = 1e6;  // ADC bin 250 of 2500
    Target tgt;
    tgt.range = f_b / kDesk.k() * kSpeedOfLight / 2.0;
    const auto rx = propagate(tx, {tgt}, kDesk);
    const auto beat = receive_chain(rx, kDesk, kRx, std::nullopt);
    const auto prof = range_profile(beat, kRx, kDesk.k());
    CHECK(prof.mainlobe_bin == 250);
    CHECK(prof.range_axis[prof.mainlobe_bin] == doctest::Approx(tgt.range).epsilon(1e-9));
    const auto win = chebyshev_window(beat.size(), kRx.window_sidelobe_db);
    const std::size_t hw = window_mainlobe_halfwidth(win, prof.magnitude_db.size());
    CHECK(psl(prof, hw) < -90.0);
}

TEST_CASE("coded chain recovers the same target as the uncoded chain") {
    const auto code = make_phase_code(random_code(64, 4), PhaseType::GMSK, kDesk.T);
    auto env = coded_envelope(code, kDesk.tx_rate);
    env = compensate_phase_lag(env, kDesk.k());
    const auto tx = pc_fmcw(kDesk, env);
    Target tgt;
    tgt.range = 1e6 / kDesk.k() * kSpeedOfLight / 2.0;
    const auto rx = propagate(tx, {tgt}, kDesk);
    const auto decoded = receive_chain(rx, kDesk, kRx, code);
    const auto prof = range_profile(decoded, kRx, kDesk.k());
    CHECK(prof.mainlobe_bin == 250);
}

TEST_CASE("matched filter peaks at the target range for the plain chirp") {
    const auto tx = fmcw_chirp(kDesk);
    Target tgt;
    tgt.range = 600.0 * kSpeedOfLight / (2.0 * kDesk.tx_rate);  // lag 600 samples
    const auto rx = propagate(tx, {tgt}, kDesk);
    const auto prof = matched_filter_profile(rx, tx, kDesk);
    CHECK(prof.mainlobe_bin == 600);
    CHECK(prof.range_axis[600] == doctest::Approx(tgt.range));
}

TEST_CASE("range-doppler map centers a stationary target at zero velocity") {
    const auto code = make_phase_code(random_code(16, 6), PhaseType::GMSK, kDesk.T);
    auto env = coded_envelope(code, kDesk.tx_rate);
    env = compensate_phase_lag(env, kDesk.k());
    const ComplexBaseband tx0 = pc_fmcw(kDesk, env);
    Target tgt;
    tgt.range = 1e6 / kDesk.k() * kSpeedOfLight / 2.0;
    std::vector<ComplexBaseband> pulses;
    for (std::size_t m = 0; m < 8; ++m) {
        ComplexBaseband tx = tx0;
        tx.t0 = static_cast<double>(m) * kDesk.T;
        const auto rx = propagate(tx, {tgt}, kDesk);
        pulses.push_back(receive_chain(rx, kDesk, kRx, code));
    }
    const auto map = range_doppler(pulses, kRx, kDesk);
    REQUIRE(map.magnitude_db.size() == 8);
    std::size_t best_m = 0, best_i = 0;
    double best = -1e300;
    for (std::size_t m = 0; m < 8; ++m) {
        for (std::size_t i = 0; i < map.magnitude_db[m].size(); ++i) {
            if (map.magnitude_db[m][i] > best) {
                best = map.magnitude_db[m][i];
                best_m = m;
                best_i = i;
            }
        }
    }
    CHECK(best_i == 250);
    CHECK(map.velocity_axis[best_m] == doctest::Approx(0.0));
}
