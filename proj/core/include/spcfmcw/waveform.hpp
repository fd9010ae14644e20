#pragma once

#include <vector>

#include "spcfmcw/coding.hpp"
#include "spcfmcw/signal.hpp"

namespace spcfmcw {

// Chirp parameters. Complex-baseband convention: the carrier factor is never
// sampled; f_c only enters Doppler arithmetic f_d = 2 v f_c / c.
struct ChirpParams {
    double f_c = 0.0;      // Hz, carrier (bookkeeping)
    double T = 0.0;        // seconds, sweep duration
    double B = 0.0;        // Hz, sweep bandwidth
    double tx_rate = 0.0;  // Hz, transmit-side simulation rate

    double k() const { return B / T; }  // Hz/s, sweep slope
    std::size_t n_samples() const;
    void validate() const;
};

struct FrameParams {
    std::size_t n_pulses = 1;
    double pulse_repetition_interval = 0.0;  // seconds; 0 means back-to-back (= T)
};

// Baseband chirp x(t) = e^{-j pi k t^2}, t in [0, T).
ComplexBaseband fmcw_chirp(const ChirpParams& p);

// Samplewise product of the code envelope with the chirp.
ComplexBaseband pc_fmcw(const ChirpParams& p, const CodedEnvelope& env);

// One chirp per pulse; pulse m starts at t0 = m * PRI. A single envelope
// broadcasts to every pulse.
std::vector<ComplexBaseband> frame(const ChirpParams& p, const FrameParams& fp,
                                   const std::vector<CodedEnvelope>& env_per_pulse);

}  // namespace spcfmcw
