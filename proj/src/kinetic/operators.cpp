#include "wavekin/kinetic/operators.hpp"

#include "wavekin/errors.hpp"
#include "wavekin/kinetic/interp.hpp"
#include "wavekin/specfun/symbol.hpp"
#include "wavekin/spectral/fourier.hpp"
#include "wavekin/spectral/multiplier.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace wavekin {
namespace {

struct Rule {
    std::vector<double> node;
    std::vector<double> weight;
};

// Gauss-Legendre on [0, 1]
Rule gauss_legendre(std::size_t order)
{
    const auto zeros = boost::math::legendre_p_zeros<double>(static_cast<int>(order));
    std::vector<double> x;
    for (double z : zeros) {
        x.push_back(z);
        if (z != 0.0)
            x.push_back(-z);
    }
    std::sort(x.begin(), x.end());
    Rule r;
    for (double z : x) {
        const double dp = boost::math::legendre_p_prime(static_cast<int>(order), z);
        r.node.push_back(0.5 * (z + 1.0));
        r.weight.push_back(1.0 / ((1.0 - z * z) * dp * dp));
    }
    return r;
}

// Nodes and weights on (0, cut] with panel boundaries at split and multiples
// of the panel width beyond it.
Rule half_line_rule(const QuadratureSpec& q, double width)
{
    const Rule base = gauss_legendre(q.panel_order);
    std::vector<double> edges{0.0};
    const double split = std::min(q.split_radius, q.tail_cut);
    const auto inner_panels = static_cast<std::size_t>(std::ceil(split / width - 1e-12));
    for (std::size_t i = 1; i <= inner_panels; ++i)
        edges.push_back(split * static_cast<double>(i) / static_cast<double>(inner_panels));
    const auto outer_panels = static_cast<std::size_t>(std::ceil((q.tail_cut - split) / width - 1e-12));
    for (std::size_t i = 1; i <= outer_panels; ++i)
        edges.push_back(split + (q.tail_cut - split) * static_cast<double>(i) / static_cast<double>(outer_panels));
    Rule r;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], len = edges[p + 1] - edges[p];
        for (std::size_t i = 0; i < base.node.size(); ++i) {
            r.node.push_back(a + len * base.node[i]);
            r.weight.push_back(len * base.weight[i]);
        }
    }
    return r;
}

std::vector<double> one_pass(const Field& w, const std::function<double(double)>& kernel, const QuadratureSpec& q,
                             double width)
{
    const Rule rule = half_line_rule(q, width);
    const std::size_t n = w.size();
    const double dxi = w.grid().spacing();
    const auto vals = w.values();
    std::vector<double> out(n, 0.0), plus(n), minus(n);
    for (std::size_t i = 0; i < rule.node.size(); ++i) {
        const double h = rule.node[i];
        const double kp = kernel(h), km = kernel(-h);
        const double even = 0.5 * (kp + km) * rule.weight[i];
        const double odd = 0.5 * (kp - km) * rule.weight[i];
        shift_periodic(vals, h / dxi, plus);
        shift_periodic(vals, -h / dxi, minus);
        for (std::size_t j = 0; j < n; ++j)
            out[j] += even * (plus[j] + minus[j] - 2.0 * vals[j]) + odd * (plus[j] - minus[j]);
    }
    return out;
}

double raw_G(double h)
{
    return collision_kernel_log(h);
}

}  // namespace

void QuadratureSpec::validate() const
{
    if (!(split_radius > 0.0 && split_radius <= 1.0))
        throw ValidationError("quadrature: split_radius must lie in (0, 1]");
    if (!(tolerance >= 1e-12))
        throw ValidationError("quadrature: tolerance must be >= 1e-12");
    if (panel_order < 1 || panel_order > 64)
        throw ValidationError("quadrature: panel_order must lie in [1, 64]");
    if (!(tail_cut > split_radius) || !(panel_width > 0.0))
        throw ValidationError("quadrature: need tail_cut > split_radius and panel_width > 0");
}

double kernel_M(double X, double Y)
{
    return (1.0 / std::abs(X - Y) - 1.0 / (X + Y)) / std::sqrt(X);
}

double kernel_K(double x, double y)
{
    return (1.0 / std::abs(x * x - y * y) - 1.0 / (x * x + y * y)) * y / x;
}

Field log_difference_apply(const Field& w, const std::function<double(double)>& kernel, const QuadratureSpec& q,
                           DirectDiagnostics* diag)
{
    q.validate();
    double width = q.panel_width;
    std::vector<double> coarse = one_pass(w, kernel, q, width);
    if (!q.adaptive) {
        if (diag) {
            diag->error_estimate.assign(w.size(), NAN);
            diag->final_panel_width = width;
            diag->refinements = 0;
        }
        return Field(w.grid(), std::move(coarse));
    }
    const double scale = std::max(w.sup_norm(), 1e-300);
    std::vector<double> est(w.size());
    for (int level = 1; level <= q.max_refinements; ++level) {
        width *= 0.5;
        std::vector<double> fine = one_pass(w, kernel, q, width);
        double worst = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            est[j] = std::abs(fine[j] - coarse[j]);
            worst = std::max(worst, est[j]);
        }
        if (worst <= q.tolerance * scale) {
            if (diag) {
                diag->error_estimate = est;
                diag->final_panel_width = width;
                diag->refinements = level;
            }
            return Field(w.grid(), std::move(fine));
        }
        coarse = std::move(fine);
    }
    throw QuadratureError("direct quadrature: tolerance not met after " + std::to_string(q.max_refinements) +
                              " refinements",
                          *std::max_element(est.begin(), est.end()) / scale, est);
}

RadialFunction apply_L_X(const RadialFunction& v, const QuadratureSpec& q, DirectDiagnostics* diag)
{
    // Y = X e^h: M(X, Y) dY = X^{-1/2} (1/|1-e^h| - 1/(1+e^h)) e^h dh
    auto k = [](double h) {
        const double e = std::exp(h);
        return (1.0 / std::abs(std::expm1(h)) - 1.0 / (1.0 + e)) * e;
    };
    Field out = log_difference_apply(v.field(), k, q, diag);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] /= std::sqrt(v.X(j));
    return RadialFunction(std::move(out));
}

RadialFunction apply_L_sqrt(const RadialFunction& u, const QuadratureSpec& q, DirectDiagnostics* diag)
{
    // y = x e^h: K(x, y) dy = x^{-1} (1/|1-e^{2h}| - 1/(1+e^{2h})) e^{2h} dh
    auto k = [](double h) {
        const double e = std::exp(2.0 * h);
        return (1.0 / std::abs(std::expm1(2.0 * h)) - 1.0 / (1.0 + e)) * e;
    };
    Field out = log_difference_apply(u.field(), k, q, diag);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] /= u.X(j);
    return RadialFunction(std::move(out));
}

Field apply_P0_direct(const Field& w, const QuadratureSpec& q, DirectDiagnostics* diag)
{
    // 1/2 int (w(xi-h) - w(xi)) G(h) dh = int (w(xi+h) - w(xi)) G(-h)/2 dh
    return log_difference_apply(w, [](double h) { return 0.5 * raw_G(-h); }, q, diag);
}

double apply_P0_at_node_adaptive(const Field& w, std::size_t j, double tol)
{
    const double dxi = w.grid().spacing();
    const auto vals = w.values();
    const double w0 = vals[j];
    auto right = [&](double h) {
        if (h == 0.0)
            return 0.0;
        return (ShiftStencil(-h / dxi).at(vals, j) - w0) * raw_G(h);
    };
    auto left = [&](double h) {
        if (h == 0.0)
            return 0.0;
        return (ShiftStencil(h / dxi).at(vals, j) - w0) * raw_G(-h);
    };
    // integrate cell by cell: between grid offsets the interpolant is a
    // polynomial in h, so Gauss-Kronrod converges without deep recursion
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    constexpr double cut = 40.0;
    const auto cells = static_cast<std::size_t>(std::ceil(cut / dxi));
    double total = 0.0, err_total = 0.0;
    for (std::size_t m = 0; m < cells; ++m) {
        const double a = dxi * static_cast<double>(m), b = a + dxi;
        double e1 = 0.0, e2 = 0.0;
        total += GK::integrate(right, a, b, 6, 1e-12, &e1);
        total += GK::integrate(left, a, b, 6, 1e-12, &e2);
        err_total += 0.5 * dxi * (e1 + e2);
    }
    if (err_total > tol * std::max(1.0, w.sup_norm()))
        throw QuadratureError("adaptive P0 node evaluation missed tolerance", err_total);
    return 0.5 * total;
}

Field apply_P0_spectral(const Field& w)
{
    return -1.0 * inverse(apply_multiplier(forward(w), multiplier::Custom{[](double k) { return rho0(k); }}));
}

Field apply_P_spectral(const Field& w)
{
    const UniformLogGrid& g = w.grid();
    const auto table = lattice_symbol(g);
    Spectrum s = forward(w);
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] *= (i == g.nyquist_index()) ? ComplexValue((*table)[i].real()) : (*table)[i];
    Field out = inverse(s);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] *= -std::exp(-0.5 * g.xi(j));
    return out;
}

std::vector<ComplexValue> apply_P_spectral(const UniformLogGrid& g, std::span<const ComplexValue> w)
{
    const auto table = lattice_symbol(g);
    std::vector<ComplexValue> c = forward_complex(g, w);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] *= (*table)[i];
    std::vector<ComplexValue> out = inverse_complex(g, c);
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] *= -std::exp(-0.5 * g.xi(j));
    return out;
}

Field commutator_apply(const CutoffSpec& eta, const Field& w)
{
    const Field e = eta.sample(w.grid());
    Field ew = w;
    for (std::size_t j = 0; j < w.size(); ++j)
        ew[j] *= e[j];
    Field a = apply_P0_spectral(w);
    for (std::size_t j = 0; j < w.size(); ++j)
        a[j] *= e[j];
    return a - apply_P0_spectral(ew);
}

double commutator_smoothing_ratio(const CutoffSpec& eta, const Field& w, double sigma, double rho_bar)
{
    const double den = sobolev_norm(w, sigma - rho_bar, 0);
    if (den == 0.0)
        return 0.0;
    return sobolev_norm(commutator_apply(eta, w), sigma, 0) / den;
}

std::pair<std::size_t, std::size_t> inner_range(std::size_t n, double fraction)
{
    const auto margin = static_cast<std::size_t>(std::floor(0.5 * (1.0 - fraction) * static_cast<double>(n)));
    return {margin, n - margin};
}

double relative_l2_inner(std::span<const double> a, std::span<const double> b, double fraction)
{
    const auto [lo, hi] = inner_range(a.size(), fraction);
    double num = 0.0, den = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
        num += (a[j] - b[j]) * (a[j] - b[j]);
        den += b[j] * b[j];
    }
    if (den == 0.0)
        return num == 0.0 ? 0.0 : INFINITY;
    return std::sqrt(num / den);
}

double buffer_mass(std::span<const double> w, double fraction)
{
    const auto width = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(w.size())));
    double sup = 0.0, edge = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        sup = std::max(sup, std::abs(w[j]));
        if (j < width || j >= w.size() - width)
            edge = std::max(edge, std::abs(w[j]));
    }
    return sup == 0.0 ? 0.0 : edge / sup;
}

double homogeneity_residual(const RadialFunction& v, double R, const QuadratureSpec& q)
{
    if (!(R > 0.0))
        throw ValidationError("homogeneity_residual: R must be positive");
    const UniformLogGrid& g = v.grid();
    const double shift = std::log(R) / g.spacing();
    std::vector<double> vr(g.n());
    shift_periodic(v.values(), shift, vr);
    if (buffer_mass(v.values()) > 1e-10 || buffer_mass(vr) > 1e-10)
        throw ValidationError("homogeneity_residual: v or its dilation by R = " + std::to_string(R) +
                              " reaches the grid buffers");
    const RadialFunction lhs = apply_L_X(RadialFunction(Field(g, vr)), q);
    const RadialFunction lv = apply_L_X(v, q);
    std::vector<double> rhs(g.n());
    shift_periodic(lv.values(), shift, rhs);
    for (double& x : rhs)
        x *= std::sqrt(R);
    return relative_l2_inner(lhs.values(), rhs);
}

}  // namespace wavekin
