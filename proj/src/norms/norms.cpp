#include "wavekin/norms/norms.hpp"

#include "wavekin/errors.hpp"
#include "wavekin/kinetic/interp.hpp"
#include "wavekin/specfun/symbol.hpp"
#include "wavekin/spectral/fourier.hpp"
#include "wavekin/spectral/multiplier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace wavekin {
namespace {

constexpr std::array<double, 4> kGlNode = {0.06943184420297371, 0.33000947820757187, 0.6699905217924281,
                                           0.9305681557970262};
constexpr std::array<double, 4> kGlWeight = {0.17392742256872692, 0.32607257743127307, 0.32607257743127307,
                                             0.17392742256872692};

// 16-point Gauss-Legendre on [0, 1], used for the outer (diagonal) variable
struct Gl16 {
    std::array<double, 16> node{};
    std::array<double, 16> weight{};
    Gl16()
    {
        // Newton on P_16
        constexpr int n = 16;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            node[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
            weight[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const Gl16& gl16()
{
    static const Gl16 rule;
    return rule;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, double cell)
{
    if (!(b > a))
        return 0.0;
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / cell)));
    const double h = (b - a) / static_cast<double>(panels);
    double s = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double x0 = a + h * static_cast<double>(p);
        for (std::size_t i = 0; i < 4; ++i)
            s += h * kGlWeight[i] * f(x0 + h * kGlNode[i]);
    }
    return s;
}

// w(xi) off-grid
std::function<double(double)> interpolant(const Field& w)
{
    return [&w](double xi) {
        const double pos = (xi - w.grid().xi_min()) / w.grid().spacing();
        return interpolate_periodic(w.values(), pos);
    };
}

void require_inside(const UniformLogGrid& g, double xi_lo, double xi_hi, const char* who)
{
    if (xi_lo < g.xi_min() + 3.0 * g.spacing() || xi_hi > g.xi_max() - 4.0 * g.spacing())
        throw ValidationError(std::string(who) + ": window outside the grid's X range");
}

}  // namespace

void WeightSpec::validate_decay_mode() const
{
    if (!(theta >= 0.0))
        throw ValidationError("weight: θ ≥ 0 required, got θ = " + std::to_string(theta));
    if (!(theta + rho > 0.0 && theta + rho < 1.5))
        throw ValidationError("weight: θ+ρ ∉ (0, 3/2)");
}

void WeightSpec::validate_smoothing_mode(bool remark_mode) const
{
    const double theta_hi = remark_mode ? 0.5 : 0.25;
    if (!(theta > 0.0 && theta < theta_hi))
        throw ValidationError(remark_mode ? "weight: θ ∉ (0, 1/2)" : "weight: θ ∉ (0, 1/4)");
    if (!(theta + rho > 0.5 && theta + rho < 1.5))
        throw ValidationError("weight: θ+ρ ∉ (1/2, 3/2)");
}

double WeightSpec::weight(double X) const
{
    return std::pow(X, theta) * std::pow(1.0 + X, rho);
}

std::pair<double, double> Window::xi_range() const
{
    const Interval r = X_range();
    return {std::log(r.a), std::log(r.b)};
}

double weighted_sup_norm(const RadialFunction& v, const WeightSpec& w)
{
    double m = 0.0;
    for (std::size_t j = 0; j < v.values().size(); ++j)
        m = std::max(m, w.weight(v.X(j)) * std::abs(v[j]));
    return m;
}

double power_tail_sup_inner(double a, double b, double x_hi)
{
    // X^a (1+X)^b rises up to X* = -a/(a+b), then falls
    const double x_star = -a / (a + b);
    const double x = std::min(x_hi, x_star);
    return std::pow(x, a) * std::pow(1.0 + x, b);
}

double power_tail_sup_outer(double a, double b, double x_lo)
{
    const double x_star = -a / (a + b);
    const double x = std::max(x_lo, x_star);
    return std::pow(x, a) * std::pow(1.0 + x, b);
}

TruncationReport truncation_convergence(const RadialFunction& g, const WeightSpec& w, const WeightSpec& w_prime,
                                        const std::vector<double>& n_list)
{
    if (!(w_prime.theta > w.theta))
        throw ValidationError("truncation: need θ' > θ");
    if (!(w_prime.rho < w.rho + w.theta - w_prime.theta))
        throw ValidationError("truncation: need ρ' < ρ + θ - θ'");
    const UniformLogGrid& grid = g.grid();
    const double reach = std::min(std::exp(-grid.xi_min()), std::exp(grid.xi_max()));
    TruncationReport r;
    r.base_norm = weighted_sup_norm(g, w);
    for (double n : n_list) {
        if (!(n >= 1.0) || n > reach)
            continue;
        double inner = 0.0, outer = 0.0;
        for (std::size_t j = 0; j < g.values().size(); ++j) {
            const double X = g.X(j);
            const double val = w_prime.weight(X) * std::abs(g[j]);
            if (X < 1.0 / n)
                inner = std::max(inner, val);
            else if (X > n)
                outer = std::max(outer, val);
        }
        r.cutoffs.push_back(n);
        r.inner_side.push_back(inner);
        r.outer_side.push_back(outer);
        r.tail_norms.push_back(std::max(inner, outer));
    }
    r.monotone = true;
    for (std::size_t i = 1; i < r.tail_norms.size(); ++i)
        if (r.tail_norms[i] > r.tail_norms[i - 1])
            r.monotone = false;
    r.below_threshold = !r.tail_norms.empty() && r.tail_norms.back() < 1e-3 * r.base_norm;
    return r;
}

std::vector<ComplexValue> mellin(const RadialFunction& v, const std::vector<double>& k)
{
    const UniformLogGrid& g = v.grid();
    const Spectrum s = forward(v.field());
    const double root = std::sqrt(2.0 * std::numbers::pi);
    std::vector<ComplexValue> out;
    out.reserve(k.size());
    for (double kk : k) {
        const double m = kk / g.dk();
        const double mr = std::round(m);
        const auto half = static_cast<double>(g.n() / 2);
        if (std::abs(m - mr) < 1e-9 && mr >= -half && mr < half) {
            out.push_back(root * s.at_mode(static_cast<long>(mr)));
        } else {
            ComplexValue acc = 0.0;
            for (std::size_t j = 0; j < g.n(); ++j)
                acc += std::polar(v[j], -kk * g.xi(j));
            out.push_back(acc * g.spacing());
        }
    }
    return out;
}

std::vector<ComplexValue> mellin_direct(const RadialFunction& v, const std::vector<double>& k)
{
    const UniformLogGrid& g = v.grid();
    const double dxi = g.spacing();
    std::vector<ComplexValue> out(k.size(), 0.0);
    // the six-point stencil of cell j reaches j-2 .. j+3
    for (std::size_t j = 2; j + 4 < g.n(); ++j) {
        for (std::size_t q = 0; q < 4; ++q) {
            const double pos = static_cast<double>(j) + kGlNode[q];
            const double val = interpolate_periodic(v.values(), pos);
            const double xi = g.xi_min() + pos * dxi;
            for (std::size_t i = 0; i < k.size(); ++i)
                out[i] += dxi * kGlWeight[q] * std::polar(val, -k[i] * xi);
        }
    }
    return out;
}

Field central_derivative(const Field& w)
{
    static constexpr std::array<double, 4> c = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    const UniformLogGrid& g = w.grid();
    const std::size_t n = g.n();
    Field out(g);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t m = 1; m <= 4; ++m)
            s += c[m - 1] * (w[(j + m) % n] - w[(j + n - m) % n]);
        out[j] = s / g.spacing();
    }
    return out;
}

double difference_double_integral(const std::function<double(double)>& f, double a, double b, double alpha,
                                  double cell)
{
    if (!(alpha >= 1.0 && alpha < 3.0))
        throw ValidationError("difference_double_integral: exponent must lie in [1, 3)");
    const double len = b - a;
    if (!(len > 0.0))
        return 0.0;
    // 2 int_0^len d^{-alpha} F(d) dd with F(d) = int_a^{b-d} |f(y+d)-f(y)|^2 dy.
    // F(d)/d^2 is smooth, so panels grade geometrically towards d = 0 and
    // stay below four cells further out.
    const Gl16& rule = gl16();
    auto F = [&](double d) {
        return integrate_1d(
            [&](double y) {
                const double diff = f(y + d) - f(y);
                return diff * diff;
            },
            a, b - d, cell);
    };
    auto panel = [&](double d0, double d1) {
        double s = 0.0;
        for (std::size_t i = 0; i < 16; ++i) {
            const double d = d0 + (d1 - d0) * rule.node[i];
            s += (d1 - d0) * rule.weight[i] * F(d) * std::pow(d, -alpha);
        }
        return s;
    };
    const double d_split = std::min(len, 2.0 * cell);
    double total = 0.0;
    const auto uniform = static_cast<std::size_t>(std::ceil((len - d_split) / (4.0 * cell)));
    for (std::size_t p = 0; p < uniform; ++p) {
        const double h = (len - d_split) / static_cast<double>(uniform);
        total += panel(d_split + h * static_cast<double>(p), d_split + h * static_cast<double>(p + 1));
    }
    constexpr int levels = 20;
    double hi = d_split;
    for (int m = 0; m < levels; ++m) {
        total += panel(0.5 * hi, hi);
        hi *= 0.5;
    }
    // F(d) ~ c d^2 on the remaining sliver
    const double c = F(hi) / (hi * hi);
    total += c * std::pow(hi, 3.0 - alpha) / (3.0 - alpha);
    return 2.0 * total;
}

double m_sigma_norm(const RadialFunction& v, double sigma, std::optional<Window> window)
{
    if (!window)
        return sobolev_norm(v.field(), sigma, 0);
    if (!(sigma >= 0.0 && sigma < 2.0))
        throw ValidationError("m_sigma_norm: local order must lie in [0, 2), got " + std::to_string(sigma));
    const auto [lo, hi] = window->xi_range();
    const UniformLogGrid& g = v.grid();
    require_inside(g, lo, hi, "m_sigma_norm");
    const int m = static_cast<int>(std::floor(sigma));
    const double s = sigma - m;
    const double cell = g.spacing();

    Field deriv = v.field();
    double total = 0.0;
    for (int l = 0; l <= m; ++l) {
        if (l > 0)
            deriv = central_derivative(deriv);
        const auto f = interpolant(deriv);
        total += integrate_1d([&](double x) { return f(x) * f(x); }, lo, hi, cell);
    }
    if (s > 0.0)
        total += difference_double_integral(interpolant(deriv), lo, hi, 1.0 + 2.0 * s, cell);
    return std::sqrt(total);
}

double gagliardo_log_seminorm(const RadialFunction& v, const Window& window)
{
    const Interval r = window.X_range();
    const auto [lo, hi] = window.xi_range();
    require_inside(v.grid(), lo, hi, "gagliardo_log_seminorm");
    const auto w = interpolant(v.field());
    const double cell = r.b * v.grid().spacing();
    return difference_double_integral([&](double X) { return w(std::log(X)); }, r.a, r.b, 1.0, cell);
}

double window_l2_squared(const RadialFunction& v, const Window& window)
{
    const auto [lo, hi] = window.xi_range();
    require_inside(v.grid(), lo, hi, "window_l2_squared");
    const auto w = interpolant(v.field());
    return integrate_1d([&](double xi) { const double x = w(xi); return x * x * std::exp(xi); }, lo, hi,
                        v.grid().spacing());
}

double h0log_double_integral_norm(const Field& w)
{
    const UniformLogGrid& g = w.grid();
    const double dxi = g.spacing();
    constexpr double reach = 1.0 / 3.0;
    const auto panels = static_cast<std::size_t>(std::max(16.0, std::ceil(reach * g.k_max() / 2.0)));
    const double hp = reach / static_cast<double>(panels);
    std::vector<double> shifted(g.n());
    double acc = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        for (std::size_t q = 0; q < 4; ++q) {
            const double h = hp * (static_cast<double>(p) + kGlNode[q]);
            shift_periodic(w.values(), h / dxi, shifted);
            double F = 0.0;
            for (std::size_t j = 0; j < g.n(); ++j)
                F += (shifted[j] - w[j]) * (shifted[j] - w[j]);
            acc += hp * kGlWeight[q] * F * dxi / h;
        }
    }
    const double l2 = w.l2_norm();
    // |h| < 1/3 covers both signs of h
    return std::sqrt(l2 * l2 + 2.0 * acc);
}

double n_r_sigma(const RadialFunction& v, double R, double sigma)
{
    const UniformLogGrid& g = v.grid();
    const CutoffSpec eta = CutoffSpec::eta0_R(R);
    const auto [lo, hi] = eta.support();
    require_inside(g, lo, hi, "n_r_sigma");
    Field cut = v.field();
    for (std::size_t j = 0; j < g.n(); ++j)
        cut[j] *= eta(g.xi(j));
    const Spectrum s = forward(cut);
    const auto table = lattice_symbol(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double k = std::abs(g.wavenumber(i));
        double weight = 0.0;
        if (k < 1.0)
            weight = 1.0;
        else if (k > 1.0)
            weight = (*table)[i].real();
        acc += std::norm(s[i]) * std::pow(1.0 + k * k, sigma) * weight;
    }
    return std::sqrt(acc * g.dk() / R);
}

EquivalenceReport norm_equivalence_report(const UniformLogGrid& g,
                                          const std::vector<std::function<double(double)>>& profiles, double sigma,
                                          const std::vector<double>& R_list)
{
    const bool low = sigma > 0.0 && sigma < 1.0;
    const bool high = sigma > 1.0 && sigma < 2.0;
    if (!low && !high)
        throw ValidationError("norm_equivalence_report: σ must lie in (0,1) ∪ (1,2)");
    EquivalenceReport rep;
    rep.sigma = sigma;
    rep.min_ratio = INFINITY;
    rep.max_ratio = 0.0;
    std::size_t ref_index = 0;
    for (std::size_t i = 1; i < R_list.size(); ++i)
        if (std::abs(std::log(R_list[i])) < std::abs(std::log(R_list[ref_index])))
            ref_index = i;

    for (std::size_t m = 0; m < profiles.size(); ++m) {
        double ref_ratio = 0.0;
        std::vector<double> ratios;
        for (double R : R_list) {
            const RadialFunction v = RadialFunction::sample(g, [&](double X) { return profiles[m](X / R); });
            const Window win{R, kI3};
            const Interval J = win.X_range();
            const auto [lo, hi] = win.xi_range();
            require_inside(g, lo, hi, "norm_equivalence_report");
            const double cell = J.b * g.spacing();
            const auto w = interpolant(v.field());
            auto vx = [&](double X) { return w(std::log(X)); };
            double x_side = integrate_1d([&](double X) { return vx(X) * vx(X); }, J.a, J.b, cell) / R;
            if (low) {
                x_side += std::pow(R, 2.0 * sigma - 1.0) * difference_double_integral(vx, J.a, J.b, 2.0 * sigma + 1.0, cell);
            } else {
                const Field dw = central_derivative(v.field());
                const auto wd = interpolant(dw);
                auto vpx = [&](double X) { return wd(std::log(X)) / X; };
                x_side += R * integrate_1d([&](double X) { return vpx(X) * vpx(X); }, J.a, J.b, cell);
                x_side +=
                    std::pow(R, 2.0 * sigma - 1.0) * difference_double_integral(vpx, J.a, J.b, 2.0 * sigma - 1.0, cell);
            }
            const double ms = m_sigma_norm(v, sigma, win);
            EquivalenceEntry e{m, R, x_side, ms * ms, ms == 0.0 ? 0.0 : x_side / (ms * ms)};
            rep.entries.push_back(e);
            ratios.push_back(e.ratio);
        }
        ref_ratio = ratios[ref_index];
        for (double r : ratios) {
            if (r == 0.0)
                continue;
            rep.min_ratio = std::min(rep.min_ratio, r);
            rep.max_ratio = std::max(rep.max_ratio, r);
            rep.max_r_drift = std::max(rep.max_r_drift, std::abs(r / ref_ratio - 1.0));
        }
    }
    rep.spread = rep.min_ratio > 0.0 && std::isfinite(rep.min_ratio) ? rep.max_ratio / rep.min_ratio : 0.0;
    return rep;
}

LocalLogReport local_log_bound_check(const Field& w, const CutoffSpec& cutoff, std::pair<double, double> I)
{
    const auto [pa, pb] = cutoff.plateau();
    if (I.first < pa || I.second > pb)
        throw ValidationError("local_log_bound_check: cutoff must equal 1 on the interval");
    require_inside(w.grid(), I.first, I.second, "local_log_bound_check");
    LocalLogReport r;
    r.lhs = difference_double_integral(interpolant(w), I.first, I.second, 1.0, w.grid().spacing());
    Field cw = w;
    for (std::size_t j = 0; j < w.size(); ++j)
        cw[j] *= cutoff(w.grid().xi(j));
    const double n = sobolev_norm(cw, 0.0, 1);
    r.rhs = n * n;
    r.ratio = r.rhs == 0.0 ? 0.0 : r.lhs / r.rhs;
    return r;
}

}  // namespace wavekin
