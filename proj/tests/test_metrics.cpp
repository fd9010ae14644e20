#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spcfmcw/metrics.hpp"

using namespace spcfmcw;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("papr hand oracle") {
    ComplexBaseband sig;
    sig.sample_rate = 4.0;
    sig.samples = {{2.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};
    // powers 4,1,1,1 -> mean 7/4 -> papr 16/7
    CHECK(papr(sig) == doctest::Approx(16.0 / 7.0));
}

TEST_CASE("psl ignores the mainlobe and wraps circularly") {
    RangeProfile prof;
    prof.magnitude_db = {0.0, -3.0, -40.0, -25.0, -60.0, -50.0, -45.0, -2.0};
    prof.mainlobe_bin = 0;
    // halfwidth 1 excludes bins 7,0,1 (circular); max of the rest is -25
    CHECK(psl(prof, 1) == doctest::Approx(-25.0));
    CHECK_THROWS(psl(prof, 4));  // exclusion covers everything
}

TEST_CASE("spreading factor") {
    CHECK(spreading_factor(1024) == doctest::Approx(30.1029995663981195));
    CHECK_THROWS(spreading_factor(0));
}

TEST_CASE("cross isolation separates victim and residual") {
    const std::size_t n = 64;
    RangeProfile prof;
    prof.magnitude_db.assign(n, -60.0);
    prof.magnitude_db[10] = 0.0;   // victim
    prof.magnitude_db[40] = -25.0; // interferer residual peak
    prof.mainlobe_bin = 10;
    const auto res = cross_isolation(prof, 10, 40, 5, 2);
    CHECK(res.isolation_db == doctest::Approx(25.0));
    CHECK(res.residual_peak_bin == 40);
    // occupied band holds one -25 dB bin and ten -60 dB bins
    const double mean_pow = (std::pow(10.0, -2.5) + 10.0 * std::pow(10.0, -6.0)) / 11.0;
    CHECK(res.band_suppression_db == doctest::Approx(-10.0 * std::log10(mean_pow)));
    CHECK_THROWS(cross_isolation(prof, 20, 40, 5, 2));  // peak not at the claimed victim
}

TEST_CASE("first_null finds a prominent sinc null") {
    // |sinc| spectrum of a width-W rect, sampled at bin_hz = 1: nulls at k*W
    const std::size_t n = 512;
    const double w = 25.0;
    std::vector<double> db(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = static_cast<double>(i);
        const double x = f / w;
        const double s = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
        db[i] = 20.0 * std::log10(std::max(std::abs(s), 1e-12));
    }
    CHECK(first_null(db, 1.0, 0.0) == doctest::Approx(25.0).epsilon(0.05));
    // a flat spectrum has no qualifying minimum
    std::vector<double> flat(n, -10.0);
    CHECK_THROWS(first_null(flat, 1.0, 0.0));
}

TEST_CASE("residual phase of a clean on-grid tone is negligible") {
    const std::size_t n = 1000;
    const double fs = 1000.0, f_b = 50.0;
    ComplexBaseband sig;
    sig.sample_rate = fs;
    sig.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sig.samples[i] = std::polar(2.5, 2.0 * kPi * f_b * static_cast<double>(i) / fs + 0.7);
    }
    CHECK(max_abs(residual_phase_error(sig, f_b)) < 1e-10);
}

TEST_CASE("residual phase sees an off-tone quadratic ramp") {
    const std::size_t n = 1000;
    const double fs = 1000.0;
    ComplexBaseband sig;
    sig.sample_rate = fs;
    sig.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        sig.samples[i] = std::polar(1.0, 2.0 * kPi * 50.0 * t + 3.0 * t * t);
    }
    const auto eps = residual_phase_error(sig, 50.0);
    CHECK(max_abs(eps) > 1.0);
}
