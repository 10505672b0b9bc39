#include "wavekin/spectral/semigroup.hpp"

#include "wavekin/errors.hpp"
#include "wavekin/spectral/fourier.hpp"
#include "wavekin/spectral/multiplier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace wavekin {
namespace {

// Gauss-Legendre on [0, 1]
constexpr std::array<double, 4> kGl4Node = {0.06943184420297371, 0.33000947820757187, 0.6699905217924281,
                                            0.9305681557970262};
constexpr std::array<double, 4> kGl4Weight = {0.17392742256872692, 0.32607257743127307, 0.32607257743127307,
                                              0.17392742256872692};
constexpr std::array<double, 3> kGl3Node = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr std::array<double, 3> kGl3Weight = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

}  // namespace

double frozen_coefficient(double xi0)
{
    return std::exp(-0.5 * xi0);
}

ComplexValue expm1(ComplexValue z)
{
    const double a = z.real(), b = z.imag();
    const double s = std::sin(0.5 * b);
    const double re = std::expm1(a) * std::cos(b) - 2.0 * s * s;
    return {re, std::exp(a) * std::sin(b)};
}

ComplexValue phi1(ComplexValue z)
{
    if (std::abs(z) < 1e-8)
        return 1.0 - 0.5 * z;
    return -expm1(-z) / z;
}

Field frozen_semigroup_apply(const Field& h0, double t, double xi0)
{
    if (!(t >= 0.0))
        throw ValidationError("frozen_semigroup_apply: t must be >= 0");
    if (t == 0.0)
        return h0;
    return inverse(apply_multiplier(forward(h0), multiplier::Semigroup{t, frozen_coefficient(xi0)}));
}

std::vector<Field> duhamel_solve(const Field& h0, const SampledForcing& q, const std::vector<double>& t_grid,
                                 double xi0, DuhamelOptions opts)
{
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw ValidationError("duhamel_solve: t_grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw ValidationError("duhamel_solve: t_grid must be increasing");

    const UniformLogGrid& g = h0.grid();
    const std::size_t n = g.n();
    const double kappa = frozen_coefficient(xi0);
    const auto table = lattice_symbol(g);
    std::vector<ComplexValue> lambda(n);
    for (std::size_t i = 0; i < n; ++i)
        lambda[i] = kappa * (*table)[i];
    // Nyquist: Hermitian average of the two aliases
    const std::size_t ny = g.nyquist_index();
    lambda[ny] = kappa * (*table)[ny].real();

    const Spectrum h0_hat = forward(h0);
    std::vector<Field> out;
    out.reserve(t_grid.size());
    out.push_back(h0);

    if (q.time_constant) {
        const Spectrum q_hat = forward(q.at(0.0));
        for (std::size_t it = 1; it < t_grid.size(); ++it) {
            const double t = t_grid[it];
            Spectrum s(g);
            for (std::size_t i = 0; i < n; ++i) {
                const ComplexValue z = lambda[i] * t;
                s[i] = std::exp(-z) * h0_hat[i] + t * phi1(z) * q_hat[i];
            }
            out.push_back(inverse(s));
        }
        return out;
    }

    // panels inside each sampling interval keep |lambda| h <= 1/2, so the
    // exponential weight is well resolved by 4-point Gauss-Legendre
    double lambda_max = 0.0;
    for (const auto& l : lambda)
        lambda_max = std::max(lambda_max, std::abs(l));

    std::vector<ComplexValue> state(h0_hat.coefficients().begin(), h0_hat.coefficients().end());
    std::vector<double> residual(n, 0.0);
    for (std::size_t it = 1; it < t_grid.size(); ++it) {
        const double ta = t_grid[it - 1], tb = t_grid[it];
        const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(2.0 * lambda_max * (tb - ta))));
        const double h = (tb - ta) / static_cast<double>(panels);
        std::vector<ComplexValue> inc4(n, 0.0), inc3(n, 0.0);
        for (std::size_t pnl = 0; pnl < panels; ++pnl) {
            const double pa = ta + h * static_cast<double>(pnl);
            for (std::size_t p = 0; p < 4; ++p) {
                const double s = pa + h * kGl4Node[p];
                const Spectrum qs = forward(q.at(s));
                for (std::size_t i = 0; i < n; ++i)
                    inc4[i] += h * kGl4Weight[p] * std::exp(-lambda[i] * (tb - s)) * qs[i];
            }
            for (std::size_t p = 0; p < 3; ++p) {
                const double s = pa + h * kGl3Node[p];
                const Spectrum qs = forward(q.at(s));
                for (std::size_t i = 0; i < n; ++i)
                    inc3[i] += h * kGl3Weight[p] * std::exp(-lambda[i] * (tb - s)) * qs[i];
            }
        }
        double scale = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            scale = std::max(scale, std::abs(inc4[i]));
            residual[i] = std::abs(inc4[i] - inc3[i]);
            worst = std::max(worst, residual[i]);
        }
        if (!std::isfinite(worst) || worst > opts.tolerance * std::max(scale, 1e-300))
            throw QuadratureError("duhamel_solve: forcing quadrature on [" + std::to_string(ta) + ", " +
                                      std::to_string(tb) + "] misses tolerance",
                                  worst / std::max(scale, 1e-300), residual);
        Spectrum s(g);
        for (std::size_t i = 0; i < n; ++i) {
            state[i] = std::exp(-lambda[i] * (tb - ta)) * state[i] + inc4[i];
            s[i] = state[i];
        }
        out.push_back(inverse(s));
    }
    return out;
}

GainReport regularization_gain(const Field& h0, const std::vector<double>& t_list, double sigma, double xi0)
{
    const Spectrum h_hat = forward(h0);
    const UniformLogGrid& g = h0.grid();
    double peak = 0.0;
    for (std::size_t i = 0; i < h_hat.size(); ++i)
        peak = std::max(peak, std::abs(h_hat[i]));
    for (std::size_t i = 0; i < h_hat.size(); ++i)
        if (std::abs(g.wavenumber(i)) <= 0.25 * g.k_max() && std::abs(h_hat[i]) < 1e-14 * peak)
            throw ValidationError("regularization_gain: spectrum of h0 falls below the lattice floor before k_max/4");

    const double kappa = frozen_coefficient(xi0);
    const double base = sobolev_norm(h_hat, sigma, 0);
    GainReport r;
    for (double t : t_list) {
        const Spectrum st = apply_multiplier(h_hat, multiplier::Semigroup{t, kappa});
        const double ratio = sobolev_norm(st, sigma + t * kappa, 0) / base;
        r.times.push_back(t);
        r.ratios.push_back(ratio);
        r.max_ratio = std::max(r.max_ratio, ratio);
    }
    return r;
}

}  // namespace wavekin
