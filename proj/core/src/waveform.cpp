#include "spcfmcw/waveform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spcfmcw {

std::size_t ChirpParams::n_samples() const {
    return static_cast<std::size_t>(std::llround(T * tx_rate));
}

void ChirpParams::validate() const {
    if (!(T > 0.0) || !(B > 0.0)) throw std::invalid_argument("ChirpParams: T and B must be > 0");
    if (!(tx_rate >= 2.0 * B)) throw std::invalid_argument("ChirpParams: tx_rate must be >= 2B");
}

ComplexBaseband fmcw_chirp(const ChirpParams& p) {
    p.validate();
    const std::size_t n = p.n_samples();
    const double slope = p.k();
    ComplexBaseband out;
    out.samples.resize(n);
    out.sample_rate = p.tx_rate;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / p.tx_rate;
        out.samples[i] = std::polar(1.0, -std::numbers::pi * slope * t * t);
    }
    return out;
}

ComplexBaseband pc_fmcw(const ChirpParams& p, const CodedEnvelope& env) {
    ComplexBaseband chirp = fmcw_chirp(p);
    if (env.signal.size() != chirp.size() || env.signal.sample_rate != chirp.sample_rate) {
        throw std::invalid_argument("pc_fmcw: envelope length/rate does not match the chirp grid");
    }
    for (std::size_t i = 0; i < chirp.size(); ++i) chirp.samples[i] *= env.signal.samples[i];
    return chirp;
}

std::vector<ComplexBaseband> frame(const ChirpParams& p, const FrameParams& fp,
                                   const std::vector<CodedEnvelope>& env_per_pulse) {
    if (fp.n_pulses == 0) throw std::invalid_argument("frame: n_pulses must be >= 1");
    if (env_per_pulse.size() != 1 && env_per_pulse.size() != fp.n_pulses) {
        throw std::invalid_argument("frame: envelope list must have 1 or n_pulses entries");
    }
    const double pri = fp.pulse_repetition_interval > 0.0 ? fp.pulse_repetition_interval : p.T;
    std::vector<ComplexBaseband> pulses;
    pulses.reserve(fp.n_pulses);
    for (std::size_t m = 0; m < fp.n_pulses; ++m) {
        const CodedEnvelope& env = env_per_pulse.size() == 1 ? env_per_pulse[0] : env_per_pulse[m];
        ComplexBaseband pulse = pc_fmcw(p, env);
        pulse.t0 = static_cast<double>(m) * pri;
        pulses.push_back(std::move(pulse));
    }
    return pulses;
}

}  // namespace spcfmcw
