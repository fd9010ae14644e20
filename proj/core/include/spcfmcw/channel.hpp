#pragma once

#include <cstdint>
#include <vector>

#include "spcfmcw/coding.hpp"
#include "spcfmcw/waveform.hpp"

namespace spcfmcw {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct Target {
    double range = 0.0;     // meters
    double velocity = 0.0;  // m/s, positive recedes
    cplx amplitude{1.0, 0.0};

    double delay() const { return 2.0 * range / kSpeedOfLight; }
    double doppler(double f_c) const { return 2.0 * velocity * f_c / kSpeedOfLight; }
};

struct Interferer {
    CodedEnvelope envelope;
    double delay = 0.0;        // seconds, tau_2
    cplx amplitude{1.0, 0.0};  // alpha_2
    double sync_offset = 0.0;  // seconds; 0 = synchronized worst case
};

// Point-target propagation. The code envelope is delayed circularly on the
// record grid while the chirp's quadratic phase is delayed analytically
// (e^{-j pi k (t-tau)^2}), so no end-of-record chirp content wraps into the
// beat band; the constant carrier phase is absorbed into the amplitude.
ComplexBaseband propagate(const ComplexBaseband& tx, const std::vector<Target>& targets,
                          const ChirpParams& p);

ComplexBaseband add_interferer(const ComplexBaseband& rx, const Interferer& intf,
                               const ChirpParams& p);

// Circular complex AWGN at the requested SNR vs mean signal power. An infinite
// snr_db is the no-noise sentinel. Box-Muller over mt19937_64 keeps the result
// portable bit-for-bit.
ComplexBaseband add_awgn(const ComplexBaseband& rx, double snr_db, std::uint64_t seed);

}  // namespace spcfmcw
