#include "wavekin/specfun/symbol.hpp"

#include "wavekin/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wavekin {
namespace {

constexpr double kLog4 = 1.38629436111989061883;
constexpr double kTailCut = 40.0;

}  // namespace

ComplexValue rho0(double k)
{
    if (!std::isfinite(k))
        throw ValidationError("rho0: non-finite wavenumber");
    if (k == 0.0)
        return 0.0;
    const ComplexValue a = digamma(ComplexValue(0.5, -0.5 * k));
    const ComplexValue b = digamma(ComplexValue(1.0, 0.5 * k));
    return 0.5 * (kLog4 + a + b + 2.0 * euler_gamma);
}

double collision_kernel_log(double h)
{
    const double e = std::exp(-h);
    return (1.0 / std::abs(std::expm1(-h)) - 1.0 / (1.0 + e)) * e;
}

ComplexValue rho0_via_integral(double k, double tol)
{
    if (!(tol > 1e-12 && tol < 1e-4))
        throw ValidationError("rho0_via_integral: tol must lie in (1e-12, 1e-4)");
    if (k == 0.0)
        return 0.0;

    // On h > 0 the pair h, -h gives
    //   Re: (G(h) + G(-h)) (1 - cos kh) / 2
    //   Im: -(G(-h) - G(h)) sin(kh) / 2
    // 1 - cos kh is written as 2 sin^2(kh/2) so the h -> 0 limit is clean.
    auto re_part = [k](double h) {
        if (h == 0.0)
            return 0.0;
        const double s = std::sin(0.5 * k * h);
        return (collision_kernel_log(h) + collision_kernel_log(-h)) * s * s;
    };
    auto im_part = [k](double h) {
        if (h == 0.0)
            return 0.0;
        return -0.5 * (collision_kernel_log(-h) - collision_kernel_log(h)) * std::sin(k * h);
    };

    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double width = std::min(1.0, std::numbers::pi / std::abs(k));
    const auto panels = static_cast<std::size_t>(std::ceil(kTailCut / width));
    const double step = kTailCut / static_cast<double>(panels);

    double re = 0.0, im = 0.0, err = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double a = step * static_cast<double>(p);
        const double b = a + step;
        double e1 = 0.0, e2 = 0.0;
        re += GK::integrate(re_part, a, b, 6, 1e-11, &e1);
        im += GK::integrate(im_part, a, b, 6, 1e-11, &e2);
        err += e1 + e2;
    }
    // tail beyond the cut: G(h) + G(-h) < 5 e^{-h}
    err += 5.0 * std::exp(-kTailCut);
    if (err > tol)
        throw QuadratureError("rho0_via_integral: error estimate above tolerance", err);
    return {re, im};
}

SymbolTable::SymbolTable(std::vector<double> wavenumbers) : k_(std::move(wavenumbers))
{
    v_.reserve(k_.size());
    for (double k : k_)
        v_.push_back(rho0(k));
}

BoundsReport rho0_bounds_report(double k_max, std::size_t n)
{
    if (!(k_max > 1.0) || n < 100)
        throw ValidationError("rho0_bounds_report: need k_max > 1 and n >= 100");
    constexpr double k_min = 1e-3;
    BoundsReport r;
    r.min_ratio = INFINITY;
    r.max_ratio = 0.0;
    const double ratio = std::log(k_max / k_min);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = k_min * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
        if (k == 1.0)
            continue;
        const double denom = k < 1.0 ? k * k : std::log(k);
        const double q = rho0(k).real() / denom;
        ++r.points;
        if (q < r.min_ratio) {
            r.min_ratio = q;
            r.k_at_min = k;
        }
        if (q > r.max_ratio) {
            r.max_ratio = q;
            r.k_at_max = k;
        }
        if (k < 0.5 || k > 2.0)
            r.max_ratio_off_transition = std::max(r.max_ratio_off_transition, q);
    }
    return r;
}

SmallKReport rho0_small_k_report(double k_lo, double k_hi, std::size_t n)
{
    SmallKReport r;
    r.claimed_re = boost::math::zeta(3.0);
    r.claimed_im = -std::numbers::pi * std::numbers::pi / 12.0;
    std::vector<double> re, im;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = k_lo * std::pow(k_hi / k_lo, static_cast<double>(i) / static_cast<double>(n - 1));
        const ComplexValue v = rho0(k);
        re.push_back(v.real() / (k * k));
        im.push_back(v.imag() / k);
    }
    r.re_over_k2 = re.front();
    r.im_over_k = im.front();
    for (std::size_t i = 0; i < n; ++i) {
        r.re_fluctuation = std::max(r.re_fluctuation, std::abs(re[i] / re.front() - 1.0));
        r.im_fluctuation = std::max(r.im_fluctuation, std::abs(im[i] / im.front() - 1.0));
    }
    return r;
}

LargeKReport rho0_large_k_report(double k_lo, double k_hi, std::size_t n)
{
    LargeKReport r;
    const double k_mid = std::sqrt(k_lo * k_hi);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = k_lo * std::pow(k_hi / k_lo, static_cast<double>(i) / static_cast<double>(n - 1));
        const ComplexValue v = rho0(k);
        const double re_err = v.real() - euler_gamma - std::log(k);
        r.max_re_error_times_k = std::max(r.max_re_error_times_k, k * std::abs(re_err));
        const ComplexValue rem = v - ComplexValue(euler_gamma + std::log(k), -0.5 / k);
        const double c = k * k * std::abs(rem);
        if (k <= k_mid)
            r.fitted_c_lower = std::max(r.fitted_c_lower, c);
        else
            r.fitted_c_upper = std::max(r.fitted_c_upper, c);
    }
    r.im_coefficient = -2.0 * k_hi * rho0(k_hi).imag();
    return r;
}

}  // namespace wavekin
