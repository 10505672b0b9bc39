#include "wavekin/evolve/experiments.hpp"

#include "wavekin/errors.hpp"
#include "wavekin/spectral/fourier.hpp"
#include "wavekin/spectral/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavekin {

namespace {

std::size_t buffer_nodes(const UniformLogGrid& g, double fraction)
{
    return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(g.n())));
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

// log-log slope of r over the earliest eighth of the horizon, widened to at
// least three positive samples on coarse trajectories
double small_t_slope(const std::vector<double>& t, const std::vector<double>& r)
{
    std::vector<double> x, y;
    const double t_end = t.empty() ? 0.0 : t.back() / 8.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] > 0.0 && r[i] > 0.0 && (t[i] <= t_end || x.size() < 3)) {
            x.push_back(std::log(t[i]));
            y.push_back(std::log(r[i]));
        }
    return x.size() < 2 ? 0.0 : slope_fit(x, y);
}

double forcing_norm(const ForcingSpec& f, const UniformLogGrid& g, const WeightSpec& w, double t)
{
    return weighted_sup_norm(RadialFunction(f.sample(g, t)), w);
}

double forcing_center_xi(const ForcingSpec& f)
{
    switch (f.family) {
    case ForcingSpec::Family::indicator_window:
        return 0.5 * (std::log(f.a) + std::log(f.b)) - std::log(f.x_scale);
    case ForcingSpec::Family::log_gaussian:
        return f.center - std::log(f.x_scale);
    case ForcingSpec::Family::power_decay:
        break;
    }
    return -std::log(f.x_scale);
}

double binned_tail_slope(const Field& f, double k_lo, double k_hi)
{
    constexpr std::size_t bins = 16;
    const UniformLogGrid& g = f.grid();
    const Spectrum s = forward(f);
    std::vector<double> power(bins, 0.0);
    std::vector<std::size_t> count(bins, 0);
    const double span = std::log(k_hi / k_lo);
    for (std::size_t i = 1; i < g.nyquist_index(); ++i) {
        const double k = g.wavenumber(i);
        if (k < k_lo || k > k_hi)
            continue;
        const auto b = std::min(bins - 1, static_cast<std::size_t>(std::log(k / k_lo) / span * bins));
        power[b] += std::norm(s[i]);
        ++count[b];
    }
    std::vector<double> x, y;
    for (std::size_t b = 0; b < bins; ++b) {
        if (count[b] == 0 || power[b] <= 0.0)
            continue;
        const double centre = k_lo * std::exp(span * (static_cast<double>(b) + 0.5) / bins);
        x.push_back(std::log10(centre));
        y.push_back(0.5 * std::log10(power[b] / static_cast<double>(count[b])));
    }
    return x.size() < 2 ? 0.0 : slope_fit(x, y);
}

}  // namespace

DecayReport weighted_decay_check(const Trajectory& traj, const ForcingSpec& forcing, const WeightSpec& w,
                                 double buffer_fraction)
{
    const UniformLogGrid& g = traj.grid;
    const std::size_t buffer = buffer_nodes(g, buffer_fraction);
    DecayReport r;
    double nu_sup = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        nu_sup = std::max(nu_sup, forcing_norm(forcing, g, w, t));
        if (t <= 0.0)
            continue;
        const Field& v = traj.states[i];
        double sup1 = 0.0, sup2 = 0.0;
        for (std::size_t j = buffer; j + buffer < g.n(); ++j) {
            const double X = g.X(j);
            sup1 = std::max(sup1, w.weight(X) * std::abs(v[j]));
            if (X > t * t)
                sup2 = std::max(sup2, std::abs(v[j]) * std::pow(X, 1.5));
        }
        const double shape = std::pow(t, 4.0 - 2.0 * w.theta) * std::pow(1.0 + t, -2.0 * w.rho);
        r.times.push_back(t);
        r.r1.push_back(nu_sup > 0.0 ? sup1 / (t * nu_sup) : 0.0);
        r.r2.push_back(nu_sup > 0.0 ? sup2 / (shape * nu_sup) : 0.0);
    }
    r.forcing_sup = nu_sup;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        r.max_r1 = std::max(r.max_r1, r.r1[i]);
        r.max_r2 = std::max(r.max_r2, r.r2[i]);
    }
    r.r1_small_t_slope = small_t_slope(r.times, r.r1);
    r.r2_small_t_slope = small_t_slope(r.times, r.r2);
    r.r1_bounded = std::isfinite(r.max_r1) && r.r1_small_t_slope >= -0.1;
    r.r2_bounded = std::isfinite(r.max_r2) && r.r2_small_t_slope >= -0.1;
    return r;
}

TailSlopeReport spectral_tail_report(const Trajectory& traj, const ForcingSpec& forcing)
{
    const UniformLogGrid& g = traj.grid;
    const CutoffSpec window = CutoffSpec::smooth_bump(forcing_center_xi(forcing), 2.5, 3.5);
    const Field bump = window.sample(g);
    const double k_lo = g.k_max() / 8.0;
    const double k_hi = g.k_max() / 2.0;
    TailSlopeReport r;
    r.min_improvement = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t <= 0.0)
            continue;
        Field q = forcing.sample(g, t);
        Field v = traj.states[i];
        for (std::size_t j = 0; j < g.n(); ++j) {
            q[j] *= bump[j];
            v[j] *= bump[j];
        }
        const double sq = binned_tail_slope(q, k_lo, k_hi);
        const double sv = binned_tail_slope(v, k_lo, k_hi);
        const double gain = (sq - sv) * std::log10(k_hi / k_lo);
        r.times.push_back(t);
        r.forcing_slope.push_back(sq);
        r.solution_slope.push_back(sv);
        r.improvement_decades.push_back(gain);
        r.min_improvement = std::min(r.min_improvement, gain);
    }
    if (r.times.empty())
        r.min_improvement = 0.0;
    else
        r.final_improvement = r.improvement_decades.back();
    r.passed = r.min_improvement >= 0.5;
    return r;
}

double forcing_weighted_integral(const ForcingSpec& forcing, const UniformLogGrid& g, const WeightSpec& w, double T,
                                 std::size_t cells)
{
    const double p = 1.0 - 4.0 * w.theta;
    if (!(p > 0.0))
        return std::numeric_limits<double>::infinity();
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t j = 1; j <= cells; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(cells);
        const double t = T * u * u;
        const double mid = 0.5 * (prev + t);
        const double nu = forcing_norm(forcing, g, w, mid);
        const double weight = (t - prev) + (std::pow(t, p) - std::pow(prev, p)) / p;
        acc += nu * nu * weight;
        prev = t;
    }
    return acc;
}

double trapezoid_window(const std::vector<double>& t, const std::vector<double>& f, double a, double b)
{
    if (t.size() != f.size())
        throw ValidationError("trapezoid_window: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double lo = std::max(a, t[i]);
        const double hi = std::min(b, t[i + 1]);
        if (!(hi > lo))
            continue;
        const double h = t[i + 1] - t[i];
        auto at = [&](double s) { return f[i] + (f[i + 1] - f[i]) * (s - t[i]) / h; };
        acc += 0.5 * (hi - lo) * (at(lo) + at(hi));
    }
    return acc;
}

SweepReport smoothing_sweep(const ExperimentConfig& config, const Trajectory& traj)
{
    const UniformLogGrid& g = traj.grid;
    const auto& times = traj.times;
    const std::size_t ns = times.size();
    const double T = config.T_star;
    const WeightSpec& w = config.weight;
    const auto Rs = config.R_lattice();
    const auto t0s = config.t0_lattice();

    std::vector<RadialFunction> v;
    std::vector<Field> nu;
    v.reserve(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        v.emplace_back(traj.states[i]);
        nu.push_back(config.forcing.sample(g, times[i]));
    }

    const bool constant = config.forcing.time_constant();
    SweepReport rep;
    rep.forcing_weighted_integral = forcing_weighted_integral(config.forcing, g, w, T);
    const double A = std::sqrt(rep.forcing_weighted_integral);
    const double pre_small = 1.0 + std::pow(T, 2.0 * (1.0 - w.theta));
    const double pre_large = 1.0 + std::pow(T, 2.0 * (1.0 - 2.0 * w.theta));

    auto integrate = [&](const std::vector<double>& series, double a, double b) {
        return std::sqrt(std::max(0.0, trapezoid_window(times, series, a, b)));
    };
    auto end_of = [&](double t0, double R) { return R < 1.0 ? std::min(t0 + std::sqrt(R), T) : T; };

    // eta_{0,R} nu on the grid
    auto cut = [&](const Field& f, double R) {
        const Field eta = CutoffSpec::eta0_R(R).sample(g);
        Field out = f;
        for (std::size_t j = 0; j < g.n(); ++j)
            out[j] *= eta[j];
        return out;
    };

    for (double sigma : config.sigmas) {
        // forcing-side lattice suprema
        double B_log_small = 0.0, B_log_large = 0.0, B_local = 0.0;
        for (double R : Rs) {
            std::vector<double> log_norm(ns), local_norm(ns);
            for (std::size_t i = 0; i < ns; ++i) {
                if (i > 0 && constant) {
                    log_norm[i] = log_norm[0];
                    local_norm[i] = local_norm[0];
                    continue;
                }
                const Field c = cut(nu[i], R);
                const double a = sobolev_norm(c, sigma, -1);
                log_norm[i] = R * a * a;
                if (R < 1.0) {
                    const double b = m_sigma_norm(RadialFunction(c), sigma, Window{R, kI2});
                    local_norm[i] = R * b * b;
                }
            }
            if (R < 1.0) {
                for (double t0 : t0s) {
                    B_log_small = std::max(B_log_small, integrate(log_norm, t0, end_of(t0, R)));
                    B_local = std::max(B_local, integrate(local_norm, t0, end_of(t0, R)));
                }
            } else {
                B_log_large = std::max(B_log_large, integrate(log_norm, 0.0, T));
            }
        }
        double B_l2 = 0.0;
        if (sigma == 0.0)
            for (double R : Rs) {
                if (!(R < 1.0))
                    continue;
                std::vector<double> s(ns);
                for (std::size_t i = 0; i < ns; ++i)
                    s[i] = i > 0 && constant ? s[0] : window_l2_squared(RadialFunction(nu[i]), Window{R, kI2});
                for (double t0 : t0s)
                    B_l2 = std::max(B_l2, integrate(s, t0, end_of(t0, R)));
            }

        const double rhs_small = pre_small * A + B_log_small;
        const double rhs_large = pre_large * A + B_log_large;
        const double rhs_n = pre_small * A + B_local;
        const double rhs_l2 = pre_large * A + B_l2;

        auto emit = [&](double R, double t0, const char* lname, double lhs, const char* rname, double rhs) {
            SweepRow row{sigma, R, t0, lname, lhs, rname, rhs, 0.0};
            row.ratio = rhs > 0.0 && std::isfinite(rhs) ? lhs / rhs : 0.0;
            if (!std::isfinite(lhs) || std::isnan(rhs) || !std::isfinite(row.ratio))
                rep.all_finite = false;
            rep.rows.push_back(row);
        };

        for (double R : Rs) {
            std::vector<double> m(ns), nr(ns), lg(ns);
            for (std::size_t i = 0; i < ns; ++i) {
                const double a = m_sigma_norm(v[i], sigma, Window{R, kI3});
                m[i] = a * a;
                if (R < 1.0) {
                    const double b = n_r_sigma(v[i], R, sigma);
                    nr[i] = b * b;
                    if (sigma == 0.0)
                        lg[i] = window_l2_squared(v[i], Window{R, kI3}) / R +
                                gagliardo_log_seminorm(v[i], Window{R, kI3}) / (R * R);
                }
            }
            if (R < 1.0) {
                for (double t0 : t0s) {
                    const double t1 = end_of(t0, R);
                    emit(R, t0, "m_sigma_local", integrate(m, t0, t1), "weighted_forcing_plus_log_inverse",
                         rhs_small);
                    emit(R, t0, "n_r_sigma", integrate(nr, t0, t1), "weighted_forcing_plus_local", rhs_n);
                    if (sigma == 0.0)
                        emit(R, t0, "local_l2_gagliardo", integrate(lg, t0, t1), "weighted_forcing_plus_l2",
                             rhs_l2);
                }
            } else {
                emit(R, 0.0, "m_sigma_local", integrate(m, 0.0, T), "weighted_forcing_plus_log_inverse", rhs_large);
            }
        }
    }

    for (double sigma : config.sigmas) {
        double c = 0.0;
        for (const auto& row : rep.rows)
            if (row.sigma == sigma)
                c = std::max(c, row.ratio);
        rep.C_hat_per_sigma.emplace_back(sigma, c);
        rep.C_hat = std::max(rep.C_hat, c);
    }
    rep.tail = spectral_tail_report(traj, config.forcing);
    return rep;
}

SweepReport smoothing_sweep(const ExperimentConfig& config)
{
    config.validate();
    if (!config.theorem_mode)
        throw ValidationError("smoothing_sweep: requires theorem mode");
    const Trajectory traj = evolve(config);
    return smoothing_sweep(config, traj);
}

ExperimentConfig scaled_config(const ExperimentConfig& base, double R)
{
    if (!(R > 0.0))
        throw ValidationError("scaled_config: R must be positive");
    ExperimentConfig c = base;
    const double shift = std::log(R);
    const double root = std::sqrt(R);
    c.grid.xi_min -= shift;
    c.grid.xi_max -= shift;
    c.T_star /= root;
    c.dt /= root;
    c.forcing = base.forcing.scaled(R);
    if (base.frozen_xi0)
        c.frozen_xi0 = *base.frozen_xi0 - shift;
    return c;
}

ScalingReport scaling_check(const ExperimentConfig& base, const std::vector<double>& R_list)
{
    const Trajectory ref = evolve(base);
    const std::size_t buffer = buffer_nodes(ref.grid, base.buffer_fraction);
    ScalingReport rep;
    rep.passed = true;
    for (double R : R_list) {
        const Trajectory run = evolve(scaled_config(base, R));
        double worst = 0.0;
        for (std::size_t i = 1; i < ref.states.size(); ++i) {
            double diff = 0.0, norm = 0.0;
            for (std::size_t j = buffer; j + buffer < ref.grid.n(); ++j) {
                const double d = run.states[i][j] - ref.states[i][j];
                diff += d * d;
                norm += ref.states[i][j] * ref.states[i][j];
            }
            if (norm > 0.0)
                worst = std::max(worst, std::sqrt(diff / norm));
            else if (diff > 0.0)
                worst = std::numeric_limits<double>::infinity();
        }
        rep.R.push_back(R);
        rep.max_relative_error.push_back(worst);
        rep.passed = rep.passed && worst <= 1e-4;
    }
    return rep;
}

}  // namespace wavekin
