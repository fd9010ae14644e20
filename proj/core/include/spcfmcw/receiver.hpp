#pragma once

#include <optional>
#include <vector>

#include "spcfmcw/channel.hpp"
#include "spcfmcw/coding.hpp"
#include "spcfmcw/waveform.hpp"

namespace spcfmcw {

struct ReceiverConfig {
    double f_cut = 0.0;             // Hz, brick-wall LPF two-sided cut-off
    double f_s = 0.0;               // Hz, ADC rate (defaults to f_cut)
    double f_b_max = 0.0;           // Hz, maximum beat frequency (defaults to f_s/2)
    double window_sidelobe_db = 100.0;

    double tau_max(double k) const { return f_b_max / k; }
    double r_max(double k) const { return kSpeedOfLight * f_b_max / (2.0 * k); }
    void validate(double tx_rate) const;
    ReceiverConfig with_defaults() const;  // fills f_s and f_b_max
};

struct RangeProfile {
    std::vector<double> magnitude_db;  // peak-normalized to 0 dB
    std::vector<double> range_axis;    // meters
    std::size_t mainlobe_bin = 0;
};

struct RangeDopplerMap {
    std::vector<std::vector<double>> magnitude_db;  // [doppler][range], peak 0 dB
    std::vector<double> range_axis;                 // meters
    std::vector<double> velocity_axis;              // m/s
};

// Mixer: rx times the conjugate uncoded chirp.
ComplexBaseband dechirp(const ComplexBaseband& rx, const ChirpParams& p);

// Brick-wall LPF (bins with |f| <= f_cut/2 pass, boundary inclusive) followed
// by integer decimation to f_s.
ComplexBaseband lowpass_and_sample(const ComplexBaseband& beat, const ReceiverConfig& cfg);

// Minimum LPF cut-off to pass k_null code nulls at maximum range:
// (1/T) (2 B R_max / c + n_chips * k_null).
double min_cutoff(double T, double B, double r_max, std::size_t n_chips, std::size_t k_null);

// All-pass H_g(f) = e^{+j pi f^2 / k}.
ComplexBaseband group_delay_filter(const ComplexBaseband& beat, double k);

// e^{-j 2 pi f tau_max}: parks every code envelope at the maximum delay.
ComplexBaseband shift_to_max_delay(const ComplexBaseband& beat, const ReceiverConfig& cfg, double k);

// Conjugate-reference decode; the reference is the *uncompensated* envelope
// delayed to tau_max and passed through the same LPF/ADC as the signal path.
ComplexBaseband decode(const ComplexBaseband& beat, const PhaseCode& code,
                       const ReceiverConfig& cfg, const ChirpParams& p);

RangeProfile range_profile(const ComplexBaseband& beat, const ReceiverConfig& cfg, double k);

RangeDopplerMap range_doppler(const std::vector<ComplexBaseband>& decoded_pulses,
                              const ReceiverConfig& cfg, const ChirpParams& p);

// Full receive chain on one chirp record. code == nullopt runs the plain FMCW
// chain (no decode stage). with_group_delay stages run for coded chains only.
ComplexBaseband receive_chain(const ComplexBaseband& rx, const ChirpParams& p,
                              const ReceiverConfig& cfg, const std::optional<PhaseCode>& code);

// Range profiles of the full chain for a Doppler grid (one profile per shift).
std::vector<RangeProfile> doppler_tolerance_sweep(const ChirpParams& p, const ReceiverConfig& cfg,
                                                  const PhaseCode& code, bool compensated,
                                                  const Target& target,
                                                  const std::vector<double>& doppler_grid);

// Transmit without phase-lag compensation, receive with the full chain.
RangeProfile legacy_chain(const ComplexBaseband& rx, const ChirpParams& p,
                          const ReceiverConfig& cfg, const PhaseCode& code);

// Correlation of rx against the transmitted waveform at the transmit rate.
RangeProfile matched_filter_profile(const ComplexBaseband& rx, const ComplexBaseband& tx,
                                    const ChirpParams& p);

}  // namespace spcfmcw
