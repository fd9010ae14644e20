#include "spcfmcw/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace spcfmcw {

namespace {

constexpr double kPi = std::numbers::pi;

// One delayed-and-Doppler-shifted copy of a coded chirp, given its envelope on
// the transmit grid. Envelope delayed circularly; chirp phase analytically.
void accumulate_echo(std::vector<cplx>& acc, const ComplexBaseband& envelope,
                     const ChirpParams& p, double tau, double doppler, cplx amplitude,
                     double frame_t0) {
    const ComplexBaseband delayed_env = tau != 0.0 ? fractional_delay(envelope, tau) : envelope;
    const double slope = p.k();
    for (std::size_t i = 0; i < acc.size(); ++i) {
        const double t = static_cast<double>(i) / p.tx_rate;
        const double chirp_phase = -kPi * slope * (t - tau) * (t - tau);
        const double dopp_phase = 2.0 * kPi * doppler * (frame_t0 + t);
        acc[i] += amplitude * delayed_env.samples[i] * std::polar(1.0, chirp_phase + dopp_phase);
    }
}

}  // namespace

ComplexBaseband propagate(const ComplexBaseband& tx, const std::vector<Target>& targets,
                          const ChirpParams& p) {
    tx.validate();
    if (tx.sample_rate != p.tx_rate || tx.size() != p.n_samples()) {
        throw std::invalid_argument("propagate: tx is not one chirp record on the transmit grid");
    }
    // Separate the code envelope from the unit-modulus chirp.
    const ComplexBaseband chirp = fmcw_chirp(p);
    ComplexBaseband envelope = tx;
    for (std::size_t i = 0; i < envelope.size(); ++i) {
        envelope.samples[i] *= std::conj(chirp.samples[i]);
    }
    ComplexBaseband rx;
    rx.samples.assign(tx.size(), cplx{0.0, 0.0});
    rx.sample_rate = tx.sample_rate;
    rx.t0 = tx.t0;
    for (const Target& tgt : targets) {
        if (tgt.range < 0.0) throw std::invalid_argument("propagate: negative target range");
        const double tau = tgt.delay();
        if (tau >= tx.duration()) throw std::invalid_argument("propagate: target delay exceeds record");
        accumulate_echo(rx.samples, envelope, p, tau, tgt.doppler(p.f_c), tgt.amplitude, tx.t0);
    }
    return rx;
}

ComplexBaseband add_interferer(const ComplexBaseband& rx, const Interferer& intf,
                               const ChirpParams& p) {
    rx.validate();
    if (intf.envelope.signal.sample_rate != p.tx_rate || intf.envelope.signal.size() != rx.size()) {
        throw std::invalid_argument("add_interferer: envelope is not on the victim's transmit grid");
    }
    const double tau = intf.delay + intf.sync_offset;
    if (tau < 0.0 || tau >= rx.duration()) {
        throw std::invalid_argument("add_interferer: delay outside the record");
    }
    ComplexBaseband out = rx;
    accumulate_echo(out.samples, intf.envelope.signal, p, tau, 0.0, intf.amplitude, rx.t0);
    return out;
}

ComplexBaseband add_awgn(const ComplexBaseband& rx, double snr_db, std::uint64_t seed) {
    rx.validate();
    if (std::isinf(snr_db) && snr_db > 0.0) return rx;
    if (!std::isfinite(snr_db)) throw std::invalid_argument("add_awgn: snr_db must be finite or +inf");
    double power = 0.0;
    for (const auto& v : rx.samples) power += std::norm(v);
    power /= static_cast<double>(rx.size());
    const double noise_power = power / std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(noise_power / 2.0);
    std::mt19937_64 gen(seed);
    const double inv = 1.0 / 18446744073709551616.0;  // 2^-64
    auto uniform = [&gen, inv]() {
        return (static_cast<double>(gen()) + 0.5) * inv;  // (0,1)
    };
    ComplexBaseband out = rx;
    for (auto& v : out.samples) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        v += sigma * cplx(r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2));
    }
    return out;
}

}  // namespace spcfmcw
