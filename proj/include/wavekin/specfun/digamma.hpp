#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wavekin {

using ComplexValue = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286061;

/// Thrown for arguments at a pole of the digamma function.
class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, long pole) : std::domain_error(what), pole_(pole) {}
    long pole() const noexcept { return pole_; }

private:
    long pole_;
};

/// Complex digamma Psi(z) = Gamma'(z)/Gamma(z).
/// Reflection for Re z < 1/2, upward recurrence to |z| >= 10, then the
/// asymptotic series through the B_16 term.
ComplexValue digamma(ComplexValue z);

double digamma(double x);

}  // namespace wavekin
