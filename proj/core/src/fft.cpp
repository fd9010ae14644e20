#include "spcfmcw/signal.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace spcfmcw {

namespace {
// FFTW planning is not thread-safe; execution of independent plans is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::vector<cplx> transform(const std::vector<cplx>& x, int sign) {
    if (x.empty()) throw std::invalid_argument("fft: empty input");
    std::vector<cplx> out(x.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(x.size()),
                                reinterpret_cast<fftw_complex*>(const_cast<cplx*>(x.data())),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    if (!plan) throw std::runtime_error("fft: planner failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}
}  // namespace

std::vector<cplx> fft(const std::vector<cplx>& x) { return transform(x, FFTW_FORWARD); }

std::vector<cplx> ifft(const std::vector<cplx>& x) {
    std::vector<cplx> out = transform(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace spcfmcw
