#include "wavekin/specfun/digamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace wavekin {
namespace {

// B_{2n} / (2n) for n = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,           -1.0 / 120.0,       1.0 / 252.0,  -1.0 / 240.0,
    5.0 / 660.0,          -691.0 / 32760.0,   7.0 / 84.0,   -3617.0 / 8160.0,
};

constexpr double kShiftRadius = 10.0;

ComplexValue asymptotic(ComplexValue z)
{
    const ComplexValue inv2 = 1.0 / (z * z);
    ComplexValue series = 0.0;
    for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it)
        series = (series + *it) * inv2;
    return std::log(z) - 0.5 / z - series;
}

// cot(pi z) for Im z >= 0 without overflow at large imaginary part.
ComplexValue cot_pi(ComplexValue z)
{
    constexpr double pi = std::numbers::pi;
    if (z.imag() == 0.0) {
        // reduce to (-1/2, 1/2] so tan stays accurate near integers
        const double r = z.real() - std::round(z.real());
        return 1.0 / std::tan(pi * r);
    }
    const ComplexValue q = std::exp(ComplexValue(0.0, 2.0 * pi) * z);
    return ComplexValue(0.0, 1.0) * (q + 1.0) / (q - 1.0);
}

ComplexValue digamma_upper(ComplexValue z)
{
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5)
        return std::conj(digamma_upper(std::conj(1.0 - z))) - pi * cot_pi(z);

    ComplexValue shift = 0.0;
    while (std::abs(z) < kShiftRadius) {
        shift += 1.0 / z;
        z += 1.0;
    }
    return asymptotic(z) - shift;
}

}  // namespace

ComplexValue digamma(ComplexValue z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("digamma: non-finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        const long pole = static_cast<long>(z.real());
        throw PoleError("digamma: pole at z = " + std::to_string(pole), pole);
    }
    // Psi(conj z) = conj Psi(z); evaluating only the upper half plane
    // makes the Hermitian symmetry of derived symbols exact.
    if (z.imag() < 0.0)
        return std::conj(digamma_upper(std::conj(z)));
    return digamma_upper(z);
}

double digamma(double x)
{
    return digamma(ComplexValue(x, 0.0)).real();
}

}  // namespace wavekin
