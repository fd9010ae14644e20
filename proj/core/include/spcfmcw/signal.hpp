#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace spcfmcw {

using cplx = std::complex<double>;

// Uniformly sampled complex baseband signal. Immutable by convention: chain
// stages return new signals instead of mutating their input.
struct ComplexBaseband {
    std::vector<cplx> samples;
    double sample_rate = 0.0;  // Hz
    double t0 = 0.0;           // seconds, time of first sample

    std::size_t size() const { return samples.size(); }
    double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
    void validate() const;  // throws std::invalid_argument on broken invariants
};

// Frequency-domain gain, evaluated on FFT bin frequencies.
struct TransferFunction {
    std::function<cplx(double)> eval;
    std::string description;
};

struct Spectrum {
    std::vector<cplx> bins;
    std::vector<double> freqs;  // Hz, bin m -> m*fs/N for m < N/2, (m-N)*fs/N otherwise
};

// Raw FFT primitives (FFTW-backed; planning serialized, execution thread-safe).
std::vector<cplx> fft(const std::vector<cplx>& x);
std::vector<cplx> ifft(const std::vector<cplx>& x);  // normalized by 1/N

// Bin frequencies for an N-point record at rate fs.
std::vector<double> fft_freqs(std::size_t n, double fs);

Spectrum spectrum(const ComplexBaseband& sig);
ComplexBaseband inverse_spectrum(const Spectrum& spec, double sample_rate, double t0 = 0.0);

// Bin-wise multiplication of the signal spectrum by h(f); circular semantics.
ComplexBaseband apply_transfer(const ComplexBaseband& sig, const TransferFunction& h);

// Frequency-domain delay e^{-j2pi f tau}; circular, exact for on-grid tau.
ComplexBaseband fractional_delay(const ComplexBaseband& sig, double tau);

// Keep every factor-th sample. Caller guarantees prior band limiting.
ComplexBaseband decimate(const ComplexBaseband& sig, std::size_t factor);

// Dolph-Chebyshev taper, peak-normalized to 1, equiripple sidelobes at -sidelobe_db.
std::vector<double> chebyshev_window(std::size_t n, double sidelobe_db);

// Half-width (in bins of an n_out-point spectrum) of the window mainlobe,
// measured where the window's own spectrum first drops below -sidelobe_db.
std::size_t window_mainlobe_halfwidth(const std::vector<double>& window, std::size_t n_out);

struct SpectrogramResult {
    std::vector<std::vector<double>> magnitude_db;  // [frame][bin], peak-normalized to 0 dB
    std::vector<double> time_axis;                  // seconds
    std::vector<double> freq_axis;                  // Hz
};

SpectrogramResult spectrogram(const ComplexBaseband& sig, std::size_t window_len, std::size_t hop);

}  // namespace spcfmcw
