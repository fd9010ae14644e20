#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spcfmcw/signal.hpp"

namespace spcfmcw {

enum class PhaseType { BPSK, GAUSSIAN, GMSK };

// Binary phase code plus smoother parameters. Construct via make_phase_code so
// the derived fields stay consistent.
struct PhaseCode {
    std::vector<int> bits;        // {0,1}, length n_chips
    PhaseType phase_type = PhaseType::BPSK;
    double T_c = 0.0;             // chip duration, seconds (= T / n_chips)
    double B_c = 0.0;             // chip bandwidth, Hz (= 1/T_c)
    double B_s = 0.0;             // smoother 3-dB bandwidth, Hz
    double eta = 0.0;             // Gaussian sharpness, sqrt(2 pi^2 B_s^2 / ln 2)
    double modulation_scale = 0.0;  // integrator normalization, default 1/T_c

    std::size_t n_chips() const { return bits.size(); }
};

// bs_factor: B_s = bs_factor * B_c (default 2). modulation_scale <= 0 selects
// the default 1/T_c.
PhaseCode make_phase_code(std::vector<int> bits, PhaseType type, double sweep_time,
                          double bs_factor = 2.0, double modulation_scale = 0.0);

struct CodedEnvelope {
    ComplexBaseband signal;
    bool compensated = false;
};

std::vector<int> random_code(std::size_t n_chips, std::uint64_t seed);

std::vector<double> bpsk_phase(const PhaseCode& code, double rate);
std::vector<double> gaussian_phase(const PhaseCode& code, double rate);
std::vector<double> gmsk_phase(const PhaseCode& code, double rate);

// s(t) = exp(j phi_type(t)); constant modulus for all three types.
CodedEnvelope coded_envelope(const PhaseCode& code, double rate);

// Spectral-analysis helper only: complex envelope exp(j phi_bpsk) convolved
// with the Gaussian kernel (non-constant modulus; never transmitted).
ComplexBaseband gaussian_envelope_convolution(const PhaseCode& code, double rate);

// Spectrum multiplied by e^{-j pi f^2 / k} (unit magnitude; energy preserved).
CodedEnvelope compensate_phase_lag(const CodedEnvelope& env, double k);

// Closed-form instantaneous frequency (Hz). BPSK is a Dirac train and is
// reported as (location, weight) pairs instead of sampled values.
std::vector<std::pair<double, double>> bpsk_transition_impulses(const PhaseCode& code);
std::vector<double> analytic_instantaneous_frequency(const PhaseCode& code,
                                                     const std::vector<double>& t);

// Closed-form lag-compensated BPSK envelope: sum of erfi steps. Shape only;
// the absolute amplitude convention is not meaningful (see acceptance use).
std::vector<cplx> analytic_compensated_bpsk(const PhaseCode& code, double k,
                                            const std::vector<double>& t);

}  // namespace spcfmcw
