#pragma once

#include "wavekin/spectral/grid.hpp"

#include <functional>
#include <vector>

namespace wavekin {

/// e^{-xi0/2}, the frozen coefficient of the log-variable operator.
double frozen_coefficient(double xi0);

/// S(t) h0 = F^{-1}[exp(-t kappa0 rho0) h0^], kappa0 = e^{-xi0/2}.
Field frozen_semigroup_apply(const Field& h0, double t, double xi0);

/// Forcing sampled on the grid at a given time.
struct SampledForcing {
    std::function<Field(double t)> at;
    bool time_constant = false;
};

struct DuhamelOptions {
    /// Relative bound on the per-interval difference between 4- and
    /// 3-point Gauss-Legendre forcing integrals.
    double tolerance = 1e-6;
};

/// h^(t) = e^{-lambda t} h0^ + int_0^t e^{-lambda (t-s)} Q^(s) ds with
/// lambda = kappa0 rho0(k), sampled at t_grid (t_grid[0] = 0).
/// Time-constant forcing uses (1 - e^{-lambda t})/lambda, t at k = 0.
std::vector<Field> duhamel_solve(const Field& h0, const SampledForcing& q, const std::vector<double>& t_grid,
                                 double xi0, DuhamelOptions opts = {});

/// e^z - 1 without cancellation for small |z|.
ComplexValue expm1(ComplexValue z);

/// (1 - e^{-z}) / z with the z -> 0 limit 1.
ComplexValue phi1(ComplexValue z);

struct GainReport {
    std::vector<double> times;
    std::vector<double> ratios;  // ||S(t)h0||_{H^{sigma + t kappa0}} / ||h0||_{H^sigma}
    double max_ratio = 0.0;
};

/// Throws ValidationError if |h0^(k)| drops below 1e-14 max|h0^| before k_max/4.
GainReport regularization_gain(const Field& h0, const std::vector<double>& t_list, double sigma, double xi0);

}  // namespace wavekin
