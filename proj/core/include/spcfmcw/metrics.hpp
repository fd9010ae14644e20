#pragma once

#include <vector>

#include "spcfmcw/receiver.hpp"
#include "spcfmcw/signal.hpp"

namespace spcfmcw {

// Peak sidelobe level: maximum of the profile outside +-mainlobe_halfwidth
// bins around the peak, relative to the peak (negative dB).
double psl(const RangeProfile& profile, std::size_t mainlobe_halfwidth_bins);

// max|x|^2 / mean|x|^2.
double papr(const ComplexBaseband& sig);

// 10 log10(n_chips): fast-time interference suppression bound.
double spreading_factor(std::size_t n_chips);

struct CrossIsolationResult {
    double isolation_db = 0.0;        // victim peak minus max interferer residual
    double band_suppression_db = 0.0; // interferer-alone peak reference minus mean
                                      // residual power over the occupied band
    std::size_t residual_peak_bin = 0;
};

// profile: fast-time profile of the victim chain run with the interferer
// present. victim_bin: expected victim mainlobe bin (error if the actual peak
// is farther than 1 bin away). interferer_bin: nominal f_b2 bin.
// occupied_halfwidth_bins: half-width of the interferer's spread region for
// the mean-power measure; exclude_halfwidth: bins dropped around the victim.
CrossIsolationResult cross_isolation(const RangeProfile& profile, std::size_t victim_bin,
                                     std::size_t interferer_bin,
                                     std::size_t occupied_halfwidth_bins,
                                     std::size_t exclude_halfwidth_bins);

// First local minimum of the 3-bin-smoothed dB spectrum above f_b, subject to
// a prominence threshold (min must sit prominence_db below the median level of
// its surroundings) so ragged random-code minima are skipped. Returns Hz.
double first_null(const std::vector<double>& spectrum_db, double bin_hz, double f_b,
                  double prominence_db = 6.0);

// Unwrapped, mean-removed phase of decoded * e^{-j 2 pi f_b t}.
std::vector<double> residual_phase_error(const ComplexBaseband& decoded, double f_b);

double max_abs(const std::vector<double>& v);

}  // namespace spcfmcw
