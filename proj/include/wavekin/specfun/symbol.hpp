#pragma once

#include "wavekin/specfun/digamma.hpp"

#include <span>
#include <vector>

namespace wavekin {

/// rho0(k) = (log 4 + Psi(1/2 - ik/2) + Psi(1 + ik/2) + 2 gamma_E) / 2,
/// the multiplier of the log-variable collision operator.
/// Re rho0 ~ zeta(3) k^2 near 0 and ~ gamma_E + log|k| at infinity.
ComplexValue rho0(double k);

/// Independent route: -1/2 int (e^{-ikh} - 1) G(h) dh with
/// G(h) = (1/|1-e^{-h}| - 1/(1+e^{-h})) e^{-h}, folded onto h > 0 and
/// integrated panel by panel with adaptive Gauss-Kronrod.
/// Throws QuadratureError when the summed error estimate exceeds tol.
ComplexValue rho0_via_integral(double k, double tol);

/// Raw kernel G(h) of the log-variable operator, h != 0.
double collision_kernel_log(double h);

/// Symbol values on a wavenumber lattice. Immutable after construction.
class SymbolTable {
public:
    explicit SymbolTable(std::vector<double> wavenumbers);

    std::span<const double> wavenumbers() const { return k_; }
    std::span<const ComplexValue> values() const { return v_; }
    std::size_t size() const { return k_.size(); }
    ComplexValue operator[](std::size_t i) const { return v_[i]; }

private:
    std::vector<double> k_;
    std::vector<ComplexValue> v_;
};

struct BoundsReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    // maximum over |k| outside [1/2, 2], where log|k| stays away from 0
    double max_ratio_off_transition = 0.0;
    double k_at_min = 0.0;
    double k_at_max = 0.0;
    std::size_t points = 0;
};

/// Re rho0(k) / (k^2 1_{k<1} + log k 1_{k>1}) over n log-spaced k in
/// [1e-3, k_max], skipping k = 1.
BoundsReport rho0_bounds_report(double k_max, std::size_t n);

struct SmallKReport {
    double re_over_k2 = 0.0;       // at the smallest k of the window
    double im_over_k = 0.0;
    double re_fluctuation = 0.0;   // max relative deviation across the window
    double im_fluctuation = 0.0;
    double claimed_re = 0.0;       // zeta(3)
    double claimed_im = 0.0;       // -pi^2/12
};

/// Measures Re rho0/k^2 and Im rho0/k on [k_lo, k_hi].
SmallKReport rho0_small_k_report(double k_lo = 1e-3, double k_hi = 1e-2, std::size_t n = 64);

struct LargeKReport {
    double max_re_error_times_k = 0.0;  // max k |Re rho0 - gamma_E - log k|
    double im_coefficient = 0.0;        // -2 k Im rho0 at the top of the range
    double fitted_c_lower = 0.0;        // max k^2 |remainder| on [k_lo, 2 sqrt]
    double fitted_c_upper = 0.0;
};

/// Remainder of the large-k expansion gamma_E + log k - i/(2k).
LargeKReport rho0_large_k_report(double k_lo = 100.0, double k_hi = 1000.0, std::size_t n = 200);

}  // namespace wavekin
