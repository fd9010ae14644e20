#pragma once

#include <complex>

namespace spcfmcw {

// Error function of a complex argument, relative accuracy ~1e-12 wherever the
// result is representable in double precision. Three regimes: Maclaurin series
// for |z| <= 3.5, a trigonometric series near the imaginary axis, and
// 1 - e^{-z^2} w(iz) with w via Laplace continued fraction elsewhere.
std::complex<double> erf_complex(std::complex<double> z);

// Imaginary error function, erfi(z) = -i erf(iz).
std::complex<double> erfi(std::complex<double> z);

}  // namespace spcfmcw
