#include "wavekin/errors.hpp"
#include "wavekin/specfun/digamma.hpp"
#include "wavekin/specfun/symbol.hpp"

#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace wavekin;

namespace {

constexpr double pi = std::numbers::pi;

// Psi(1+z) = -gamma + sum_{n>=1} (1/n - 1/(n+z)). The tail beyond N is
// closed with Euler-Maclaurin on f(x) = 1/x - 1/(x+z).
ComplexValue digamma_series_1pz(ComplexValue z)
{
    constexpr int N = 2000;
    ComplexValue s = 0.0;
    for (int n = N - 1; n >= 1; --n)
        s += z / (static_cast<double>(n) * (static_cast<double>(n) + z));
    const double x = N;
    auto deriv = [&](int m) {
        double fact = 1.0;
        for (int i = 2; i <= m; ++i)
            fact *= i;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        return sign * fact * (std::pow(x, -m - 1) - std::pow(x + z, -m - 1));
    };
    ComplexValue tail = std::log((x + z) / x) + 0.5 * (1.0 / x - 1.0 / (x + z));
    tail -= (1.0 / 6.0) / 2.0 * deriv(1);
    tail -= (-1.0 / 30.0) / 24.0 * deriv(3);
    tail -= (1.0 / 42.0) / 720.0 * deriv(5);
    return -euler_gamma + s + tail;
}

double rel(ComplexValue a, ComplexValue b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace

TEST_CASE("digamma special values")
{
    CHECK(std::abs(digamma(1.0) + euler_gamma) < 1e-15);
    CHECK(std::abs(digamma(0.5) - (-euler_gamma - 2.0 * std::log(2.0))) < 1e-14);
    CHECK(std::abs(digamma(2.0) - (1.0 - euler_gamma)) < 1e-15);
}

TEST_CASE("digamma at 1+i against the series")
{
    const ComplexValue oracle = digamma_series_1pz({0.0, 1.0});
    const ComplexValue v = digamma(ComplexValue(1.0, 1.0));
    CHECK(rel(v, oracle) < 1e-13);
    // Im Psi(1+iy) = -1/(2y) + (pi/2) coth(pi y)
    CHECK(std::abs(v.imag() - (-0.5 + 0.5 * pi / std::tanh(pi))) < 1e-14);
}

TEST_CASE("digamma series oracle over a box")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> re(-0.4, 6.0), im(-8.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        const ComplexValue z(re(gen), im(gen));
        CHECK(rel(digamma(1.0 + z), digamma_series_1pz(z)) < 1e-13);
    }
}

TEST_CASE("digamma closed-form imaginary parts on vertical lines")
{
    for (double y : {0.01, 0.3, 1.0, 2.5, 7.0, 25.0, 120.0}) {
        const double im1 = -0.5 / y + 0.5 * pi / std::tanh(pi * y);
        const double im_half = 0.5 * pi * std::tanh(pi * y);
        // the oracle itself cancels two terms of size 1/(2y)
        CHECK(std::abs(digamma(ComplexValue(1.0, y)).imag() - im1) < 1e-13 * (std::abs(im1) + 0.5 / y));
        CHECK(std::abs(digamma(ComplexValue(0.5, y)).imag() - im_half) < 1e-13 * im_half);
    }
}

TEST_CASE("digamma recurrence and reflection")
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> re(-12.0, 12.0), im(-12.0, 12.0);
    for (int i = 0; i < 500; ++i) {
        const ComplexValue z(re(gen), im(gen));
        if (std::abs(z.imag()) < 1e-3)
            continue;
        const ComplexValue lhs = digamma(z + 1.0);
        const ComplexValue rhs = digamma(z) + 1.0 / z;
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(lhs)));
        const ComplexValue refl = digamma(1.0 - z) - digamma(z);
        const ComplexValue cot = std::cos(pi * z) / std::sin(pi * z);
        if (std::abs(z.imag()) < 5.0)
            CHECK(std::abs(refl - pi * cot) <= 1e-12 * std::max(1.0, std::abs(refl)));
        CHECK(digamma(std::conj(z)) == std::conj(digamma(z)));
    }
}

TEST_CASE("digamma poles are reported")
{
    CHECK_THROWS_AS(digamma(0.0), PoleError);
    try {
        digamma(ComplexValue(-3.0, 0.0));
        FAIL("no throw");
    } catch (const PoleError& e) {
        CHECK(e.pole() == -3);
    }
    CHECK_NOTHROW(digamma(ComplexValue(-3.0, 1e-9)));
    CHECK(std::isfinite(digamma(-2.5)));
}

TEST_CASE("rho0 examples")
{
    CHECK(rho0(0.0) == ComplexValue(0.0, 0.0));
    CHECK(std::abs(rho0(-5.0) - std::conj(rho0(5.0))) <= 1e-13);
    // reference values from 30-digit evaluation of the defining integral
    CHECK(std::abs(rho0(1.0) - ComplexValue(0.671865985524, -0.363985472509)) < 1e-11);
    CHECK(std::abs(rho0(2.0) - ComplexValue(1.291807180276, -0.244133235174)) < 1e-11);
    CHECK(std::abs(rho0(2.0) - rho0_via_integral(2.0, 1e-9)) < 1e-8);
}

TEST_CASE("rho0 integral route")
{
    CHECK(rho0_via_integral(0.0, 1e-9) == ComplexValue(0.0, 0.0));
    CHECK(std::abs(rho0_via_integral(1.0, 1e-9) - rho0(1.0)) < 1e-9);
    const ComplexValue v50 = rho0_via_integral(50.0, 1e-9);
    CHECK(std::abs(v50.real() - (euler_gamma + std::log(50.0))) < 0.05);
    CHECK_THROWS_AS(rho0_via_integral(1.0, 1e-3), ValidationError);
    CHECK(std::abs(rho0_via_integral(-3.0, 1e-9) - std::conj(rho0_via_integral(3.0, 1e-9))) < 1e-12);
}

TEST_CASE("kernel closed forms")
{
    for (double s : {0.01, 0.5, 1.0, 3.0, 10.0}) {
        CHECK(std::abs(collision_kernel_log(s) - 2.0 / std::expm1(2.0 * s)) < 1e-13 * (1.0 + 1.0 / s));
        const double d = collision_kernel_log(-s) - collision_kernel_log(s);
        CHECK(std::abs(d - 2.0 / (std::exp(s) + 1.0)) < 1e-12 * (1.0 + 1.0 / s));
    }
}

TEST_CASE("symbol table invariants")
{
    std::vector<double> ks;
    for (int m = -64; m < 64; ++m)
        ks.push_back(0.37 * m);
    const SymbolTable t(ks);
    REQUIRE(t.size() == ks.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double k = t.wavenumbers()[i];
        if (k == 0.0) {
            CHECK(t[i] == ComplexValue(0.0, 0.0));
            continue;
        }
        CHECK(t[i].real() > 0.0);
        const std::size_t mirror = 128 - i;
        if (mirror < t.size())
            CHECK(std::abs(t[mirror] - std::conj(t[i])) <= 1e-13);
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double k0 = t.wavenumbers()[i - 1], k1 = t.wavenumbers()[i];
        if (k0 >= 1.0)
            CHECK(t[i].real() >= t[i - 1].real());
        if (k1 <= -1.0)
            CHECK(t[i].real() <= t[i - 1].real());
    }
}

TEST_CASE("bounds report")
{
    const BoundsReport a = rho0_bounds_report(100.0, 500);
    const BoundsReport b = rho0_bounds_report(100.0, 1000);
    CHECK(a.min_ratio > 0.0);
    CHECK(std::isfinite(a.max_ratio));
    CHECK(std::abs(a.max_ratio_off_transition / b.max_ratio_off_transition - 1.0) < 0.01);
    CHECK(std::abs(a.min_ratio / b.min_ratio - 1.0) < 0.01);
    CHECK_THROWS_AS(rho0_bounds_report(1.0, 500), ValidationError);
}

TEST_CASE("asymptotic regimes")
{
    const SmallKReport s = rho0_small_k_report();
    CHECK(s.re_fluctuation <= 1e-3);
    CHECK(s.im_fluctuation <= 1e-3);
    CHECK(std::abs(s.re_over_k2 / boost::math::zeta(3.0) - 1.0) < 1e-5);
    CHECK(std::abs(s.im_over_k / (-pi * pi / 12.0) - 1.0) < 1e-5);
    const LargeKReport l = rho0_large_k_report();
    CHECK(l.max_re_error_times_k <= 1.0);
    CHECK(std::abs(l.im_coefficient - 1.0) < 1e-3);
    CHECK(std::abs(l.fitted_c_upper / l.fitted_c_lower - 1.0) < 0.2);
}
