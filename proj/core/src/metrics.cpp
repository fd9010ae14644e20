#include "spcfmcw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spcfmcw {

namespace {
double median_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of empty range");
    std::nth_element(v.begin(), v.begin() + static_cast<long>(v.size() / 2), v.end());
    return v[v.size() / 2];
}
}  // namespace

double psl(const RangeProfile& profile, std::size_t mainlobe_halfwidth_bins) {
    const std::size_t n = profile.magnitude_db.size();
    const std::size_t peak = profile.mainlobe_bin;
    double best = -1e300;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        // circular distance to the peak (profiles are FFT-periodic)
        const std::size_t d = i > peak ? i - peak : peak - i;
        const std::size_t dist = std::min(d, n - d);
        if (dist <= mainlobe_halfwidth_bins) continue;
        best = std::max(best, profile.magnitude_db[i]);
        any = true;
    }
    if (!any) throw std::invalid_argument("psl: mainlobe exclusion covers the whole profile");
    return best;
}

double papr(const ComplexBaseband& sig) {
    sig.validate();
    double peak = 0.0, mean = 0.0;
    for (const auto& v : sig.samples) {
        const double p = std::norm(v);
        peak = std::max(peak, p);
        mean += p;
    }
    mean /= static_cast<double>(sig.size());
    if (mean <= 0.0) throw std::invalid_argument("papr: zero signal");
    return peak / mean;
}

double spreading_factor(std::size_t n_chips) {
    if (n_chips == 0) throw std::invalid_argument("spreading_factor: n_chips must be >= 1");
    return 10.0 * std::log10(static_cast<double>(n_chips));
}

CrossIsolationResult cross_isolation(const RangeProfile& profile, std::size_t victim_bin,
                                     std::size_t interferer_bin,
                                     std::size_t occupied_halfwidth_bins,
                                     std::size_t exclude_halfwidth_bins) {
    const std::size_t n = profile.magnitude_db.size();
    if (victim_bin >= n || interferer_bin >= n) {
        throw std::invalid_argument("cross_isolation: bin out of range");
    }
    const std::size_t peak = profile.mainlobe_bin;
    const std::size_t dist = peak > victim_bin ? peak - victim_bin : victim_bin - peak;
    if (std::min(dist, n - dist) > 1) {
        throw std::invalid_argument("cross_isolation: victim peak not within 1 bin of expectation");
    }
    const double victim_level = profile.magnitude_db[peak];
    CrossIsolationResult res;
    // Max residual outside the victim exclusion zone.
    double max_resid = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t d = i > peak ? i - peak : peak - i;
        if (std::min(d, n - d) <= exclude_halfwidth_bins) continue;
        if (profile.magnitude_db[i] > max_resid) {
            max_resid = profile.magnitude_db[i];
            res.residual_peak_bin = i;
        }
    }
    res.isolation_db = victim_level - max_resid;
    // Mean residual power over the interferer's occupied band (excluding the
    // victim zone); this is what the spreading-factor bound speaks about.
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t di = i > interferer_bin ? i - interferer_bin : interferer_bin - i;
        if (std::min(di, n - di) > occupied_halfwidth_bins) continue;
        const std::size_t dv = i > peak ? i - peak : peak - i;
        if (std::min(dv, n - dv) <= exclude_halfwidth_bins) continue;
        acc += std::pow(10.0, profile.magnitude_db[i] / 10.0);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("cross_isolation: empty occupied band");
    res.band_suppression_db = victim_level - 10.0 * std::log10(acc / static_cast<double>(count));
    return res;
}

double first_null(const std::vector<double>& spectrum_db, double bin_hz, double f_b,
                  double prominence_db) {
    const std::size_t n = spectrum_db.size();
    if (n < 16) throw std::invalid_argument("first_null: spectrum too short");
    if (!(bin_hz > 0.0)) throw std::invalid_argument("first_null: bin_hz must be > 0");
    // 3-bin moving-average smoothing in dB.
    std::vector<double> sm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i > 0 ? i - 1 : 0;
        const std::size_t hi = i + 1 < n ? i + 1 : n - 1;
        sm[i] = (spectrum_db[lo] + spectrum_db[i] + spectrum_db[hi]) / 3.0;
    }
    const auto b0 = static_cast<std::size_t>(std::llround(f_b / bin_hz));
    const std::size_t nyquist = n / 2;
    if (b0 + 4 >= nyquist) throw std::invalid_argument("first_null: f_b too close to Nyquist");
    constexpr std::size_t kSurround = 15;
    for (std::size_t i = b0 + 2; i + 1 < nyquist; ++i) {
        if (!(sm[i] <= sm[i - 1] && sm[i] <= sm[i + 1])) continue;
        // prominence vs the median of the surrounding bins (gap of 4 excluded)
        std::vector<double> surround;
        for (std::size_t j = (i > kSurround ? i - kSurround : 0); j + 4 < i; ++j) {
            surround.push_back(spectrum_db[j]);
        }
        for (std::size_t j = i + 5; j <= std::min(i + kSurround, n - 1); ++j) {
            surround.push_back(spectrum_db[j]);
        }
        if (surround.empty()) continue;
        if (sm[i] < median_of(surround) - prominence_db) {
            return static_cast<double>(i) * bin_hz;
        }
    }
    throw std::runtime_error("first_null: no qualifying spectral minimum before Nyquist");
}

std::vector<double> residual_phase_error(const ComplexBaseband& decoded, double f_b) {
    decoded.validate();
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> eps(decoded.size());
    double prev = 0.0, offset = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < decoded.size(); ++i) {
        const double t = static_cast<double>(i) / decoded.sample_rate;
        const cplx v = decoded.samples[i] * std::polar(1.0, -two_pi * f_b * t);
        double ph = std::arg(v) + offset;
        // unwrap against the previous sample
        while (ph - prev > std::numbers::pi) { ph -= two_pi; offset -= two_pi; }
        while (ph - prev < -std::numbers::pi) { ph += two_pi; offset += two_pi; }
        eps[i] = ph;
        prev = ph;
        mean += ph;
    }
    mean /= static_cast<double>(eps.size());
    for (auto& v : eps) v -= mean;
    return eps;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace spcfmcw
