#include "spcfmcw/coding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "spcfmcw/erfi.hpp"

namespace spcfmcw {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t record_length(const PhaseCode& code, double rate) {
    return static_cast<std::size_t>(
        std::llround(code.T_c * static_cast<double>(code.n_chips()) * rate));
}

// Truncated unit-sum Gaussian smoother kernel (truncation at +-5/eta).
std::vector<double> gaussian_kernel(double eta, double rate) {
    const long half = static_cast<long>(std::ceil(5.0 / eta * rate));
    std::vector<double> h(2 * half + 1);
    double sum = 0.0;
    for (long i = -half; i <= half; ++i) {
        const double t = static_cast<double>(i) / rate;
        h[static_cast<std::size_t>(i + half)] = std::exp(-eta * eta * t * t);
        sum += h[static_cast<std::size_t>(i + half)];
    }
    for (auto& v : h) v /= sum;
    return h;
}

// Same-length convolution with edge replication of the boundary value.
// Direct for short kernels, FFT otherwise.
template <typename T>
std::vector<T> smooth_with_kernel(const std::vector<T>& x, const std::vector<double>& h) {
    if (h.size() > x.size()) throw std::invalid_argument("gaussian smoother: kernel longer than signal");
    const std::size_t half = (h.size() - 1) / 2;
    const std::size_t n = x.size();
    std::vector<T> padded;
    padded.reserve(n + 2 * half);
    padded.insert(padded.end(), half, x.front());
    padded.insert(padded.end(), x.begin(), x.end());
    padded.insert(padded.end(), half, x.back());
    std::vector<T> out(n);
    if (h.size() <= 129) {
        for (std::size_t i = 0; i < n; ++i) {
            T acc{};
            for (std::size_t j = 0; j < h.size(); ++j) acc += padded[i + j] * h[j];
            out[i] = acc;
        }
        return out;
    }
    const std::size_t m = padded.size() + h.size() - 1;
    std::vector<cplx> a(m, cplx{}), b(m, cplx{});
    for (std::size_t i = 0; i < padded.size(); ++i) a[i] = cplx(padded[i]);
    for (std::size_t j = 0; j < h.size(); ++j) b[j] = cplx(h[j]);
    std::vector<cplx> fa = fft(a), fb = fft(b);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    const std::vector<cplx> conv = ifft(fa);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx v = conv[i + 2 * half];  // 'valid' region start
        if constexpr (std::is_same_v<T, double>) out[i] = v.real();
        else out[i] = v;
    }
    return out;
}

}  // namespace

PhaseCode make_phase_code(std::vector<int> bits, PhaseType type, double sweep_time,
                          double bs_factor, double modulation_scale) {
    if (bits.empty()) throw std::invalid_argument("make_phase_code: need at least one chip");
    if (!(sweep_time > 0.0)) throw std::invalid_argument("make_phase_code: sweep_time must be > 0");
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("make_phase_code: bits must be 0 or 1");
    }
    PhaseCode code;
    code.bits = std::move(bits);
    code.phase_type = type;
    code.T_c = sweep_time / static_cast<double>(code.bits.size());
    code.B_c = 1.0 / code.T_c;
    code.B_s = bs_factor * code.B_c;
    if (type != PhaseType::BPSK && !(code.B_s > 0.0)) {
        throw std::invalid_argument("make_phase_code: B_s must be > 0 for smoothed types");
    }
    code.eta = std::sqrt(2.0 * kPi * kPi * code.B_s * code.B_s / std::numbers::ln2);
    code.modulation_scale = modulation_scale > 0.0 ? modulation_scale : 1.0 / code.T_c;
    return code;
}

std::vector<int> random_code(std::size_t n_chips, std::uint64_t seed) {
    if (n_chips == 0) throw std::invalid_argument("random_code: n_chips must be >= 1");
    // mt19937_64 raw output is specified by the standard, so this is portable
    // bit-for-bit (uniform_int_distribution would not be).
    std::mt19937_64 gen(seed);
    std::vector<int> bits(n_chips);
    for (auto& b : bits) b = static_cast<int>(gen() & 1ull);
    return bits;
}

std::vector<double> bpsk_phase(const PhaseCode& code, double rate) {
    if (rate * code.T_c < 2.0) throw std::invalid_argument("bpsk_phase: need >= 2 samples per chip");
    const std::size_t n = record_length(code, rate);
    const std::size_t nc = code.n_chips();
    std::vector<double> phi(n);
    // Sample at t = i/rate belongs to chip floor(i*nc/n); the boundary sample
    // takes the incoming chip's value.
    for (std::size_t i = 0; i < n; ++i) {
        phi[i] = kPi * static_cast<double>(code.bits[i * nc / n]);
    }
    return phi;
}

std::vector<double> gaussian_phase(const PhaseCode& code, double rate) {
    if (!(code.B_s > 0.0)) throw std::invalid_argument("gaussian_phase: B_s must be > 0");
    return smooth_with_kernel(bpsk_phase(code, rate), gaussian_kernel(code.eta, rate));
}

std::vector<double> gmsk_phase(const PhaseCode& code, double rate) {
    const std::vector<double> pg = gaussian_phase(code, rate);
    std::vector<double> phi(pg.size());
    const double dt = 1.0 / rate;
    double acc = 0.0;
    phi[0] = 0.0;
    for (std::size_t i = 1; i < pg.size(); ++i) {
        acc += 0.5 * (pg[i] + pg[i - 1]) * dt;
        phi[i] = acc * code.modulation_scale;
    }
    return phi;
}

CodedEnvelope coded_envelope(const PhaseCode& code, double rate) {
    std::vector<double> phi;
    switch (code.phase_type) {
        case PhaseType::BPSK: phi = bpsk_phase(code, rate); break;
        case PhaseType::GAUSSIAN: phi = gaussian_phase(code, rate); break;
        case PhaseType::GMSK: phi = gmsk_phase(code, rate); break;
    }
    CodedEnvelope env;
    env.signal.samples.resize(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) env.signal.samples[i] = std::polar(1.0, phi[i]);
    env.signal.sample_rate = rate;
    env.compensated = false;
    return env;
}

ComplexBaseband gaussian_envelope_convolution(const PhaseCode& code, double rate) {
    const std::vector<double> pb = bpsk_phase(code, rate);
    std::vector<cplx> c(pb.size());
    for (std::size_t i = 0; i < pb.size(); ++i) c[i] = std::polar(1.0, pb[i]);
    ComplexBaseband out;
    out.samples = smooth_with_kernel(c, gaussian_kernel(code.eta, rate));
    out.sample_rate = rate;
    return out;
}

CodedEnvelope compensate_phase_lag(const CodedEnvelope& env, double k) {
    if (env.compensated) throw std::invalid_argument("compensate_phase_lag: already compensated");
    CodedEnvelope out;
    out.signal = apply_transfer(env.signal, TransferFunction{
        [k](double f) { return std::polar(1.0, -kPi * f * f / k); },
        "phase-lag compensation"});
    out.compensated = true;
    return out;
}

std::vector<std::pair<double, double>> bpsk_transition_impulses(const PhaseCode& code) {
    std::vector<std::pair<double, double>> impulses;
    for (std::size_t n = 1; n < code.n_chips(); ++n) {
        const double dphi = kPi * static_cast<double>(code.bits[n] - code.bits[n - 1]);
        if (dphi != 0.0) {
            impulses.emplace_back(static_cast<double>(n) * code.T_c, dphi / (2.0 * kPi));
        }
    }
    return impulses;
}

std::vector<double> analytic_instantaneous_frequency(const PhaseCode& code,
                                                     const std::vector<double>& t) {
    if (code.phase_type == PhaseType::BPSK) {
        throw std::invalid_argument(
            "analytic_instantaneous_frequency: BPSK is a Dirac train; use bpsk_transition_impulses");
    }
    const std::size_t nc = code.n_chips();
    std::vector<double> out(t.size(), 0.0);
    if (code.phase_type == PhaseType::GAUSSIAN) {
        const double amp = code.eta / (2.0 * kPi * std::sqrt(kPi));
        for (std::size_t i = 0; i < t.size(); ++i) {
            double s = 0.0;
            for (std::size_t n = 1; n < nc; ++n) {
                const double dphi = kPi * static_cast<double>(code.bits[n] - code.bits[n - 1]);
                if (dphi == 0.0) continue;
                const double u = code.eta * (t[i] - static_cast<double>(n) * code.T_c);
                s += dphi * std::exp(-u * u);
            }
            out[i] = amp * s;
        }
        return out;
    }
    // GMSK: derivative of the integrated Gaussian phase is the Gaussian phase
    // itself; the erf sum needs its baseline constant restored.
    const double phi1 = kPi * static_cast<double>(code.bits[0]);
    for (std::size_t i = 0; i < t.size(); ++i) {
        double s = phi1;
        for (std::size_t n = 1; n < nc; ++n) {
            const double dphi = kPi * static_cast<double>(code.bits[n] - code.bits[n - 1]);
            if (dphi == 0.0) continue;
            const double u = code.eta * (t[i] - static_cast<double>(n) * code.T_c);
            s += 0.5 * dphi * (1.0 + std::erf(u));
        }
        out[i] = code.modulation_scale / (2.0 * kPi) * s;
    }
    return out;
}

std::vector<cplx> analytic_compensated_bpsk(const PhaseCode& code, double k,
                                            const std::vector<double>& t) {
    if (code.phase_type != PhaseType::BPSK) {
        throw std::invalid_argument("analytic_compensated_bpsk: BPSK codes only");
    }
    const std::size_t nc = code.n_chips();
    const cplx beta = std::sqrt(kPi * k) * std::polar(1.0, kPi / 4.0);
    // Envelope steps at every chip boundary, including switch-on at t=0 and
    // switch-off at t=T; step amplitude is the envelope difference.
    std::vector<cplx> amps(nc + 1);
    std::vector<double> locs(nc + 1);
    for (std::size_t n = 0; n <= nc; ++n) {
        const cplx before = n == 0 ? cplx{0.0, 0.0} : std::polar(1.0, kPi * code.bits[n - 1]);
        const cplx after = n == nc ? cplx{0.0, 0.0} : std::polar(1.0, kPi * code.bits[n]);
        amps[n] = after - before;
        locs[n] = static_cast<double>(n) * code.T_c;
    }
    std::vector<cplx> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        cplx s{0.0, 0.0};
        for (std::size_t n = 0; n <= nc; ++n) {
            if (amps[n] == cplx{0.0, 0.0}) continue;
            s += amps[n] * erfi(beta * (t[i] - locs[n]));
        }
        out[i] = cplx(0.0, -0.5) * s;
    }
    return out;
}

}  // namespace spcfmcw
