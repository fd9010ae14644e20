#include "spcfmcw/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spcfmcw {

void ComplexBaseband::validate() const {
    if (samples.empty()) throw std::invalid_argument("ComplexBaseband: empty samples");
    if (!(sample_rate > 0.0)) throw std::invalid_argument("ComplexBaseband: sample_rate must be > 0");
}

std::vector<double> fft_freqs(std::size_t n, double fs) {
    std::vector<double> f(n);
    const double df = fs / static_cast<double>(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t m = 0; m < n; ++m) {
        f[m] = (m < half ? static_cast<double>(m)
                         : static_cast<double>(m) - static_cast<double>(n)) * df;
    }
    return f;
}

Spectrum spectrum(const ComplexBaseband& sig) {
    sig.validate();
    return Spectrum{fft(sig.samples), fft_freqs(sig.size(), sig.sample_rate)};
}

ComplexBaseband inverse_spectrum(const Spectrum& spec, double sample_rate, double t0) {
    ComplexBaseband out{ifft(spec.bins), sample_rate, t0};
    out.validate();
    return out;
}

ComplexBaseband apply_transfer(const ComplexBaseband& sig, const TransferFunction& h) {
    sig.validate();
    std::vector<cplx> bins = fft(sig.samples);
    const std::vector<double> freqs = fft_freqs(sig.size(), sig.sample_rate);
    for (std::size_t m = 0; m < bins.size(); ++m) {
        const cplx g = h.eval(freqs[m]);
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
            throw std::runtime_error("apply_transfer: non-finite gain from '" + h.description +
                                     "' at f=" + std::to_string(freqs[m]) + " Hz");
        }
        bins[m] *= g;
    }
    return ComplexBaseband{ifft(bins), sig.sample_rate, sig.t0};
}

ComplexBaseband fractional_delay(const ComplexBaseband& sig, double tau) {
    sig.validate();
    // A delay of exactly one record is a circular identity and is allowed
    // (tau_max equals the sweep time when f_b_max = f_s/2).
    if (std::abs(tau) > sig.duration()) {
        throw std::invalid_argument("fractional_delay: |tau| > record duration (would wrap fully)");
    }
    const double two_pi = 2.0 * std::numbers::pi;
    return apply_transfer(sig, TransferFunction{
        [tau, two_pi](double f) { return std::polar(1.0, -two_pi * f * tau); },
        "delay"});
}

ComplexBaseband decimate(const ComplexBaseband& sig, std::size_t factor) {
    sig.validate();
    if (factor == 0) throw std::invalid_argument("decimate: factor must be positive");
    if (sig.size() % factor != 0) {
        throw std::invalid_argument("decimate: length not divisible by factor");
    }
    ComplexBaseband out;
    out.samples.reserve(sig.size() / factor);
    for (std::size_t i = 0; i < sig.size(); i += factor) out.samples.push_back(sig.samples[i]);
    out.sample_rate = sig.sample_rate / static_cast<double>(factor);
    out.t0 = sig.t0;
    return out;
}

namespace {
// Chebyshev polynomial T_{order}(x) extended beyond |x|<=1 via cosh.
double cheb_poly(std::size_t order, double x) {
    const double n = static_cast<double>(order);
    if (std::abs(x) <= 1.0) return std::cos(n * std::acos(x));
    double v = std::cosh(n * std::acosh(std::abs(x)));
    if (x < -1.0 && order % 2 == 1) v = -v;
    return v;
}
}  // namespace

std::vector<double> chebyshev_window(std::size_t n, double sidelobe_db) {
    if (n < 2) throw std::invalid_argument("chebyshev_window: n must be >= 2");
    if (!(sidelobe_db > 0.0)) throw std::invalid_argument("chebyshev_window: sidelobe_db must be > 0");
    const double tg = std::pow(10.0, sidelobe_db / 20.0);
    const double x0 = std::cosh(std::acosh(tg) / static_cast<double>(n - 1));
    const double pi = std::numbers::pi;
    // Sample the Chebyshev spectrum on the DFT grid and synthesize the taps
    // with one inverse transform (O(n log n)); even lengths need the
    // half-sample linear-phase factor.
    std::vector<cplx> p(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double v = cheb_poly(n - 1, x0 * std::cos(pi * static_cast<double>(m) /
                                                        static_cast<double>(n)));
        if (n % 2 == 1) {
            p[m] = v;
        } else {
            p[m] = v * std::polar(1.0, pi * static_cast<double>(m) / static_cast<double>(n));
        }
    }
    const std::vector<cplx> spec = fft(p);
    std::vector<double> w(n);
    if (n % 2 == 1) {
        const std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + 1 < half; ++i) w[i] = spec[half - 1 - i].real();
        for (std::size_t i = half - 1; i < n; ++i) w[i] = spec[i - half + 1].real();
    } else {
        const std::size_t half = n / 2 + 1;
        for (std::size_t i = 0; i + 1 < half; ++i) w[i] = spec[half - 1 - i].real();
        for (std::size_t i = half - 1; i < n; ++i) w[i] = spec[i - half + 2].real();
    }
    const double peak = *std::max_element(w.begin(), w.end());
    for (auto& v : w) v /= peak;
    return w;
}

std::size_t window_mainlobe_halfwidth(const std::vector<double>& window, std::size_t n_out) {
    if (n_out < window.size()) throw std::invalid_argument("window_mainlobe_halfwidth: n_out too small");
    std::vector<cplx> padded(n_out, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < window.size(); ++i) padded[i] = window[i];
    const std::vector<cplx> spec = fft(padded);
    // The mainlobe edge is the end of the monotone descent from the peak bin.
    for (std::size_t m = 1; m + 1 < n_out / 2; ++m) {
        const double cur = std::abs(spec[m]);
        const double next = std::abs(spec[m + 1]);
        if (next > cur) return m + 2;  // first rise past the monotone mainlobe descent
    }
    return n_out / 4;
}

SpectrogramResult spectrogram(const ComplexBaseband& sig, std::size_t window_len, std::size_t hop) {
    sig.validate();
    if (window_len > sig.size()) throw std::invalid_argument("spectrogram: window longer than signal");
    if (hop == 0) throw std::invalid_argument("spectrogram: hop must be positive");
    std::vector<double> win(window_len);
    const double pi = std::numbers::pi;
    for (std::size_t i = 0; i < window_len; ++i) {
        win[i] = 0.5 - 0.5 * std::cos(2.0 * pi * static_cast<double>(i) /
                                      static_cast<double>(window_len - 1));
    }
    SpectrogramResult out;
    out.freq_axis = fft_freqs(window_len, sig.sample_rate);
    double peak = 0.0;
    for (std::size_t start = 0; start + window_len <= sig.size(); start += hop) {
        std::vector<cplx> frame(window_len);
        for (std::size_t i = 0; i < window_len; ++i) frame[i] = sig.samples[start + i] * win[i];
        const std::vector<cplx> spec = fft(frame);
        std::vector<double> mags(window_len);
        for (std::size_t m = 0; m < window_len; ++m) {
            mags[m] = std::abs(spec[m]);
            peak = std::max(peak, mags[m]);
        }
        out.magnitude_db.push_back(std::move(mags));
        out.time_axis.push_back(sig.t0 + static_cast<double>(start + window_len / 2) / sig.sample_rate);
    }
    const double ref = peak > 0.0 ? peak : 1.0;
    for (auto& row : out.magnitude_db) {
        for (auto& v : row) v = 20.0 * std::log10(std::max(v / ref, 1e-300));
    }
    return out;
}

}  // namespace spcfmcw
