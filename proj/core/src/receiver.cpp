#include "spcfmcw/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spcfmcw {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> to_db_normalized(const std::vector<cplx>& spec) {
    double peak = 0.0;
    for (const auto& v : spec) peak = std::max(peak, std::abs(v));
    const double ref = peak > 0.0 ? peak : 1.0;
    std::vector<double> db(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        db[i] = 20.0 * std::log10(std::max(std::abs(spec[i]) / ref, 1e-300));
    }
    return db;
}
}  // namespace

void ReceiverConfig::validate(double tx_rate) const {
    if (!(f_cut > 0.0)) throw std::invalid_argument("ReceiverConfig: f_cut must be > 0");
    const ReceiverConfig c = with_defaults();
    if (c.f_s > tx_rate) throw std::invalid_argument("ReceiverConfig: f_s exceeds transmit rate");
    const double ratio = tx_rate / c.f_s;
    if (std::abs(ratio - std::round(ratio)) > 1e-9) {
        throw std::invalid_argument("ReceiverConfig: tx_rate must be an integer multiple of f_s");
    }
    if (c.f_b_max > c.f_s / 2.0 + 1e-9) {
        throw std::invalid_argument("ReceiverConfig: f_b_max exceeds f_s/2");
    }
}

ReceiverConfig ReceiverConfig::with_defaults() const {
    ReceiverConfig c = *this;
    if (c.f_s <= 0.0) c.f_s = c.f_cut;
    if (c.f_b_max <= 0.0) c.f_b_max = c.f_s / 2.0;
    return c;
}

ComplexBaseband dechirp(const ComplexBaseband& rx, const ChirpParams& p) {
    rx.validate();
    if (rx.sample_rate != p.tx_rate || rx.size() != p.n_samples()) {
        throw std::invalid_argument("dechirp: rx is not one chirp record at the transmit rate");
    }
    const ComplexBaseband chirp = fmcw_chirp(p);
    ComplexBaseband out = rx;
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] *= std::conj(chirp.samples[i]);
    return out;
}

ComplexBaseband lowpass_and_sample(const ComplexBaseband& beat, const ReceiverConfig& cfg_in) {
    const ReceiverConfig cfg = cfg_in.with_defaults();
    cfg.validate(beat.sample_rate);
    if (cfg.f_cut > beat.sample_rate) {
        throw std::invalid_argument("lowpass_and_sample: f_cut above the record's Nyquist span");
    }
    const double half = cfg.f_cut / 2.0;
    ComplexBaseband filtered = apply_transfer(beat, TransferFunction{
        [half](double f) { return std::abs(f) <= half * (1.0 + 1e-12) ? cplx{1.0, 0.0} : cplx{0.0, 0.0}; },
        "brick-wall LPF"});
    const auto factor = static_cast<std::size_t>(std::llround(beat.sample_rate / cfg.f_s));
    return factor > 1 ? decimate(filtered, factor) : filtered;
}

double min_cutoff(double T, double B, double r_max, std::size_t n_chips, std::size_t k_null) {
    return (2.0 * B * r_max / kSpeedOfLight +
            static_cast<double>(n_chips) * static_cast<double>(k_null)) / T;
}

ComplexBaseband group_delay_filter(const ComplexBaseband& beat, double k) {
    return apply_transfer(beat, TransferFunction{
        [k](double f) { return std::polar(1.0, kPi * f * f / k); },
        "group-delay filter"});
}

ComplexBaseband shift_to_max_delay(const ComplexBaseband& beat, const ReceiverConfig& cfg_in,
                                   double k) {
    const ReceiverConfig cfg = cfg_in.with_defaults();
    const double tau = cfg.tau_max(k);
    if (tau == 0.0) return beat;
    return apply_transfer(beat, TransferFunction{
        [tau](double f) { return std::polar(1.0, -2.0 * kPi * f * tau); },
        "shift to max delay"});
}

ComplexBaseband decode(const ComplexBaseband& beat, const PhaseCode& code,
                       const ReceiverConfig& cfg_in, const ChirpParams& p) {
    const ReceiverConfig cfg = cfg_in.with_defaults();
    // Reference: uncompensated envelope at tx rate, delayed to tau_max, then
    // through the same LPF/ADC to prevent a signal mismatch.
    const CodedEnvelope env = coded_envelope(code, p.tx_rate);
    const ComplexBaseband delayed = fractional_delay(env.signal, cfg.tau_max(p.k()));
    const ComplexBaseband ref = lowpass_and_sample(delayed, cfg);
    if (ref.size() != beat.size()) throw std::invalid_argument("decode: reference/beat length mismatch");
    ComplexBaseband out = beat;
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] *= std::conj(ref.samples[i]);
    return out;
}

RangeProfile range_profile(const ComplexBaseband& beat, const ReceiverConfig& cfg_in, double k) {
    beat.validate();
    const ReceiverConfig cfg = cfg_in.with_defaults();
    const std::vector<double> win = chebyshev_window(beat.size(), cfg.window_sidelobe_db);
    std::vector<cplx> windowed(beat.size());
    for (std::size_t i = 0; i < beat.size(); ++i) windowed[i] = beat.samples[i] * win[i];
    const std::vector<cplx> spec = fft(windowed);
    RangeProfile prof;
    prof.magnitude_db = to_db_normalized(spec);
    prof.range_axis.resize(beat.size());
    const std::vector<double> freqs = fft_freqs(beat.size(), beat.sample_rate);
    for (std::size_t i = 0; i < beat.size(); ++i) {
        prof.range_axis[i] = kSpeedOfLight * freqs[i] / (2.0 * k);
    }
    prof.mainlobe_bin = static_cast<std::size_t>(
        std::distance(prof.magnitude_db.begin(),
                      std::max_element(prof.magnitude_db.begin(), prof.magnitude_db.end())));
    return prof;
}

RangeDopplerMap range_doppler(const std::vector<ComplexBaseband>& decoded_pulses,
                              const ReceiverConfig& cfg_in, const ChirpParams& p) {
    if (decoded_pulses.empty()) throw std::invalid_argument("range_doppler: no pulses");
    const ReceiverConfig cfg = cfg_in.with_defaults();
    const std::size_t n_fast = decoded_pulses[0].size();
    const std::size_t n_slow = decoded_pulses.size();
    for (const auto& pulse : decoded_pulses) {
        if (pulse.size() != n_fast) throw std::invalid_argument("range_doppler: ragged pulse lengths");
    }
    const std::vector<double> fast_win = chebyshev_window(n_fast, cfg.window_sidelobe_db);
    const std::vector<double> slow_win =
        n_slow >= 2 ? chebyshev_window(n_slow, cfg.window_sidelobe_db) : std::vector<double>{1.0};
    // Fast-time FFT per pulse.
    std::vector<std::vector<cplx>> fast(n_slow);
    for (std::size_t m = 0; m < n_slow; ++m) {
        std::vector<cplx> row(n_fast);
        for (std::size_t i = 0; i < n_fast; ++i) row[i] = decoded_pulses[m].samples[i] * fast_win[i];
        fast[m] = fft(row);
    }
    // Slow-time FFT per range bin, fftshifted so velocity 0 sits centered.
    std::vector<std::vector<cplx>> map(n_slow, std::vector<cplx>(n_fast));
    std::vector<cplx> col(n_slow);
    for (std::size_t i = 0; i < n_fast; ++i) {
        for (std::size_t m = 0; m < n_slow; ++m) col[m] = fast[m][i] * slow_win[m];
        const std::vector<cplx> dop = fft(col);
        for (std::size_t m = 0; m < n_slow; ++m) {
            map[(m + n_slow / 2) % n_slow][i] = dop[m];
        }
    }
    RangeDopplerMap out;
    double peak = 0.0;
    for (const auto& row : map) {
        for (const auto& v : row) peak = std::max(peak, std::abs(v));
    }
    const double ref = peak > 0.0 ? peak : 1.0;
    out.magnitude_db.resize(n_slow);
    for (std::size_t m = 0; m < n_slow; ++m) {
        out.magnitude_db[m].resize(n_fast);
        for (std::size_t i = 0; i < n_fast; ++i) {
            out.magnitude_db[m][i] = 20.0 * std::log10(std::max(std::abs(map[m][i]) / ref, 1e-300));
        }
    }
    const double fs_fast = decoded_pulses[0].sample_rate;
    const std::vector<double> freqs = fft_freqs(n_fast, fs_fast);
    out.range_axis.resize(n_fast);
    for (std::size_t i = 0; i < n_fast; ++i) {
        out.range_axis[i] = kSpeedOfLight * freqs[i] / (2.0 * p.k());
    }
    out.velocity_axis.resize(n_slow);
    const double prf = 1.0 / p.T;
    const std::vector<double> dop_freqs = fft_freqs(n_slow, prf);
    for (std::size_t m = 0; m < n_slow; ++m) {
        const double fd = dop_freqs[(m + n_slow - n_slow / 2) % n_slow];
        out.velocity_axis[m] = fd * kSpeedOfLight / (2.0 * p.f_c);
    }
    return out;
}

ComplexBaseband receive_chain(const ComplexBaseband& rx, const ChirpParams& p,
                              const ReceiverConfig& cfg_in, const std::optional<PhaseCode>& code) {
    const ReceiverConfig cfg = cfg_in.with_defaults();
    ComplexBaseband beat = lowpass_and_sample(dechirp(rx, p), cfg);
    if (!code) return beat;
    beat = group_delay_filter(beat, p.k());
    beat = shift_to_max_delay(beat, cfg, p.k());
    return decode(beat, *code, cfg, p);
}

std::vector<RangeProfile> doppler_tolerance_sweep(const ChirpParams& p, const ReceiverConfig& cfg,
                                                  const PhaseCode& code, bool compensated,
                                                  const Target& target,
                                                  const std::vector<double>& doppler_grid) {
    CodedEnvelope env = coded_envelope(code, p.tx_rate);
    if (compensated) env = compensate_phase_lag(env, p.k());
    const ComplexBaseband tx = pc_fmcw(p, env);
    std::vector<RangeProfile> rows;
    rows.reserve(doppler_grid.size());
    for (double fd : doppler_grid) {
        Target tgt = target;
        tgt.velocity = fd * kSpeedOfLight / (2.0 * p.f_c);
        const ComplexBaseband rx = propagate(tx, {tgt}, p);
        const ComplexBaseband decoded = receive_chain(rx, p, cfg, code);
        rows.push_back(range_profile(decoded, cfg, p.k()));
    }
    return rows;
}

RangeProfile legacy_chain(const ComplexBaseband& rx, const ChirpParams& p,
                          const ReceiverConfig& cfg, const PhaseCode& code) {
    const ComplexBaseband decoded = receive_chain(rx, p, cfg, code);
    return range_profile(decoded, cfg, p.k());
}

RangeProfile matched_filter_profile(const ComplexBaseband& rx, const ComplexBaseband& tx,
                                    const ChirpParams& p) {
    rx.validate();
    tx.validate();
    if (rx.size() != tx.size()) throw std::invalid_argument("matched_filter_profile: length mismatch");
    std::vector<cplx> fr = fft(rx.samples);
    const std::vector<cplx> ft = fft(tx.samples);
    for (std::size_t i = 0; i < fr.size(); ++i) fr[i] *= std::conj(ft[i]);
    const std::vector<cplx> corr = ifft(fr);
    // Non-negative lags only: lag l corresponds to round-trip delay l/tx_rate.
    const std::size_t n = corr.size() / 2;
    std::vector<cplx> half(corr.begin(), corr.begin() + static_cast<long>(n));
    RangeProfile prof;
    prof.magnitude_db = to_db_normalized(half);
    prof.range_axis.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        prof.range_axis[l] = kSpeedOfLight * static_cast<double>(l) / (2.0 * p.tx_rate);
    }
    prof.mainlobe_bin = static_cast<std::size_t>(
        std::distance(prof.magnitude_db.begin(),
                      std::max_element(prof.magnitude_db.begin(), prof.magnitude_db.end())));
    return prof;
}

}  // namespace spcfmcw
