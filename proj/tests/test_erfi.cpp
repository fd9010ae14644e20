#include <doctest.h>

#include <cmath>
#include <complex>

#include "spcfmcw/erfi.hpp"

using spcfmcw::erf_complex;
using spcfmcw::erfi;
using cplx = std::complex<double>;

namespace {
void check_close(cplx got, cplx want, double rel = 1e-11) {
    const double scale = std::max(std::abs(want), 1.0);
    CHECK(std::abs(got - want) <= rel * scale);
}
}  // namespace

TEST_CASE("complex erf matches high-precision references") {
    // Frozen values computed with 30-digit arbitrary-precision arithmetic.
    check_close(erf_complex({0.5, 0.25}), {0.54868936055376218, 0.22199095428837335});
    check_close(erf_complex({3.0, 1.0}), {0.99994238613201376, 7.7179563813780136e-7});
    check_close(erf_complex({1.5, -0.5}), {1.0076054862213703, -0.041697093665554598});
    check_close(erf_complex({-2.0, 0.5}), {-1.0035022433130363, 0.0047409030312943361});
    // near the imaginary axis beyond the series radius
    check_close(erf_complex({0.1, 3.0}), {857.73642788747451, 1365.1380099649577});
    // near the real axis, continued-fraction regime
    check_close(erf_complex({4.0, 0.2}), {1.0000000012242361, 1.5982608837881123e-8});
}

TEST_CASE("erfi matches references on the 45-degree ray") {
    // arguments of the form r e^{j pi/4}, the ray used by the analytic
    // compensated envelope
    check_close(erfi({1.4142135623730951, 1.4142135623730949}),
                {-0.27392575946354008, 1.0103117120254895});
    check_close(erfi({7.0710678118654755, 7.0710678118654746}),
                {0.013926504428655511, 0.94533050371617625});
    check_close(erfi({3.0, 1.0}), {443.3888818393928, -330.81538696857208});
    check_close(erfi({0.5, 0.25}), {0.57128662239433419, 0.35118665938138045});
}

TEST_CASE("erf is odd and conjugate-symmetric") {
    const cplx zs[] = {{0.3, 0.7}, {2.5, 1.5}, {0.2, 3.1}, {4.2, 0.1}};
    for (const cplx z : zs) {
        const cplx e = erf_complex(z);
        check_close(erf_complex(-z), -e, 1e-12);
        check_close(erf_complex(std::conj(z)), std::conj(e), 1e-12);
    }
}

TEST_CASE("erf reduces to the real error function on the real axis") {
    for (double x : {-3.0, -1.0, -0.25, 0.0, 0.5, 1.7, 4.0}) {
        const cplx e = erf_complex({x, 0.0});
        CHECK(e.imag() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(e.real() == doctest::Approx(std::erf(x)).epsilon(1e-12));
    }
}

TEST_CASE("erfi is real on the real axis and odd") {
    const cplx v = erfi({1.0, 0.0});
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(v.real() == doctest::Approx(1.6504257587975429).epsilon(1e-12));
    check_close(erfi({-1.0, 0.0}), -v, 1e-12);
}
