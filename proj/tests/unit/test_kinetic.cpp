#include "wavekin/errors.hpp"
#include "wavekin/kinetic/interp.hpp"
#include "wavekin/kinetic/operators.hpp"
#include "wavekin/specfun/symbol.hpp"
#include "wavekin/spectral/fourier.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace wavekin;

namespace {

Field bump(const UniformLogGrid& g, double c, double w)
{
    return Field::sample(g, [&](double x) { return std::exp(-(x - c) * (x - c) / (w * w)); });
}

double inner_sup(std::span<const double> v)
{
    const auto [lo, hi] = inner_range(v.size());
    double m = 0.0;
    for (std::size_t j = lo; j < hi; ++j)
        m = std::max(m, std::abs(v[j]));
    return m;
}

}  // namespace

TEST_CASE("pointwise kernels")
{
    CHECK(kernel_M(1.0, 2.0) == doctest::Approx(2.0 / 3.0));
    CHECK(kernel_K(1.0, 2.0) == doctest::Approx(4.0 / 15.0));
}

TEST_CASE("shift stencil")
{
    const UniformLogGrid g(-8.0, 8.0, 256);
    const Field f = bump(g, 0.3, 1.1);
    std::vector<double> out(g.n());
    shift_periodic(f.values(), 0.0, out);
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(out[j] == f[j]);
    // sixth-order convergence under grid halving
    auto shift_error = [](std::size_t n) {
        const UniformLogGrid gg(-8.0, 8.0, n);
        const Field ff = bump(gg, 0.3, 1.1);
        std::vector<double> o(n);
        const double off = 0.37 * static_cast<double>(n) / 256.0 + 0.5;
        shift_periodic(ff.values(), off, o);
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double x = gg.xi(j) + off * gg.spacing();
            err = std::max(err, std::abs(o[j] - std::exp(-(x - 0.3) * (x - 0.3) / 1.21)));
        }
        return err;
    };
    const double e1 = shift_error(256), e2 = shift_error(512);
    CHECK(e1 < 1e-7);
    CHECK(std::log2(e1 / e2) > 5.0);
    // wrap-around: offset of a full period is the identity
    shift_periodic(f.values(), static_cast<double>(g.n()), out);
    for (std::size_t j = 0; j < g.n(); ++j)
        CHECK(out[j] == doctest::Approx(f[j]).epsilon(1e-14));
}

TEST_CASE("constants are annihilated")
{
    const UniformLogGrid g(-16.0, 16.0, 512);
    const Field c = Field::sample(g, [](double) { return 3.0; });
    const QuadratureSpec q;
    // compare after removing the X^{-1/2} and x^{-1} prefactors
    const RadialFunction lx = apply_L_X(RadialFunction(c), q);
    const RadialFunction ls = apply_L_sqrt(RadialFunction(c), q);
    for (std::size_t j = 0; j < g.n(); ++j) {
        CHECK(std::abs(lx[j]) * std::sqrt(lx.X(j)) < 1e-11);
        CHECK(std::abs(ls[j]) * ls.X(j) < 1e-11);
    }
    CHECK(apply_P0_direct(c, q).sup_norm() < 1e-12);
    CHECK(apply_P_spectral(c).sup_norm() < 1e-12);
}

TEST_CASE("direct and spectral routes agree")
{
    const UniformLogGrid g(-16.0, 16.0, 1024);
    const QuadratureSpec q;
    for (auto [c, w] : {std::pair{0.0, 1.0}, std::pair{1.5, 0.6}, std::pair{-2.0, 2.0}}) {
        const Field f = bump(g, c, w);
        DirectDiagnostics diag;
        const Field d = apply_P0_direct(f, q, &diag);
        const Field s = apply_P0_spectral(f);
        CHECK(relative_l2_inner(d.values(), s.values()) < 1e-6);
        CHECK(diag.refinements >= 1);
        const RadialFunction lx = apply_L_X(RadialFunction(f), q);
        Field two_p = apply_P_spectral(f);
        two_p *= 2.0;
        CHECK(relative_l2_inner(lx.values(), two_p.values()) < 1e-6);
    }
}

TEST_CASE("windowed cosine against the symbol")
{
    const UniformLogGrid g(-24.0, 24.0, 2048);
    const double k = 3.0;
    const CutoffSpec win = CutoffSpec::smooth_bump(0.0, 6.0, 12.0);
    const Field f = Field::sample(g, [&](double x) { return win(x) * std::cos(k * x); });
    const Field d = apply_P0_direct(f, QuadratureSpec{});
    const ComplexValue r = rho0(k);
    // on the plateau, far from the ramps: P0 cos(k xi) = -Re[rho0 e^{ik xi}]
    double err = 0.0, ref = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = g.xi(j);
        if (std::abs(x) > 3.0)
            continue;
        const double pred = -(r * std::polar(1.0, k * x)).real();
        err += (d[j] - pred) * (d[j] - pred);
        ref += pred * pred;
    }
    CHECK(std::sqrt(err / ref) < 1e-4);
}

TEST_CASE("symmetrized and plain adaptive quadrature agree")
{
    const UniformLogGrid g(-16.0, 16.0, 1024);
    // odd about the centre xi = 0
    const Field f = Field::sample(g, [](double x) { return x * std::exp(-x * x / 2.0); });
    const Field d = apply_P0_direct(f, QuadratureSpec{});
    const std::size_t mid = g.n() / 2;
    REQUIRE(g.xi(mid) == 0.0);
    const double plain = apply_P0_at_node_adaptive(f, mid, 1e-8);
    CHECK(std::abs(d[mid] - plain) < 1e-6);
    // the even part of the kernel sees no second difference here; the
    // value is the odd kernel against the first difference alone
    CHECK(std::abs(d[mid]) > 1e-3);
    for (std::size_t j : {mid - 100, mid + 37})
        CHECK(std::abs(d[j] - apply_P0_at_node_adaptive(f, j, 1e-8)) < 1e-6);
}

TEST_CASE("dissipativity of the pairing")
{
    const UniformLogGrid g(-16.0, 16.0, 512);
    for (auto [c, w] : {std::pair{0.0, 1.0}, std::pair{2.0, 0.5}, std::pair{-1.0, 3.0}}) {
        const Field f = bump(g, c, w) - 0.5 * bump(g, c + 1.0, w);
        const Field p = apply_P0_direct(f, QuadratureSpec{});
        double pairing = 0.0;
        for (std::size_t j = 0; j < g.n(); ++j)
            pairing += p[j] * f[j];
        CHECK(pairing * g.spacing() <= 1e-10);
    }
}

TEST_CASE("x-variable form is a rescaled copy")
{
    // xi grid on [-16, 16] and log-x grid on [-8, 8] share node indices
    const UniformLogGrid gx(-16.0, 16.0, 1024), gu(-8.0, 8.0, 1024);
    const Field w = bump(gx, 0.5, 1.5);
    const RadialFunction v(w);
    const RadialFunction u(Field(gu, std::vector<double>(w.values().begin(), w.values().end())));
    const QuadratureSpec q;
    const RadialFunction lv = apply_L_X(v, q);
    const RadialFunction lu = apply_L_sqrt(u, q);
    const double peak = inner_sup(lu.values());
    double lo = INFINITY, hi = -INFINITY;
    const auto [a, b] = inner_range(gx.n());
    for (std::size_t j = a; j < b; ++j) {
        if (std::abs(lu[j]) < 1e-3 * peak)
            continue;
        const double r = lv[j] / lu[j];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi - lo < 1e-4);
    CHECK(lo == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("single complex mode")
{
    const UniformLogGrid g(-10.0, 10.0, 256);
    for (std::size_t i : {std::size_t{3}, std::size_t{40}, std::size_t{200}}) {
        const double k = g.wavenumber(i);
        std::vector<ComplexValue> w(g.n());
        for (std::size_t j = 0; j < g.n(); ++j)
            w[j] = std::polar(1.0, k * g.xi(j));
        const auto p = apply_P_spectral(g, w);
        const ComplexValue r = rho0(k);
        double err = 0.0;
        for (std::size_t j = 0; j < g.n(); ++j)
            err = std::max(err, std::abs(p[j] + std::exp(-0.5 * g.xi(j)) * r * w[j]) * std::exp(0.5 * g.xi(j)));
        CHECK(err < 1e-12);
    }
}

TEST_CASE("commutator")
{
    const UniformLogGrid g(-24.0, 24.0, 1024);
    const Field f = bump(g, 0.0, 0.5);
    const CutoffSpec all = CutoffSpec::smooth_bump(0.0, 100.0, 200.0);
    CHECK(commutator_apply(all, f).sup_norm() < 1e-13);

    const CutoffSpec eta = CutoffSpec::smooth_bump(0.0, 4.0, 6.0);
    const Field c = commutator_apply(eta, f);
    double plateau = 0.0, far = 0.0, ramp = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j) {
        const double x = std::abs(g.xi(j));
        if (x > 3.0 && x < 4.0)
            plateau = std::max(plateau, std::abs(c[j]));
        if (x > 4.0 && x < 6.0)
            ramp = std::max(ramp, std::abs(c[j]));
        if (x > 20.0)
            far = std::max(far, std::abs(c[j]));
    }
    CHECK(plateau <= 1e-6 * f.l2_norm());
    CHECK(far <= 1e-6 * f.l2_norm());
    CHECK(ramp > 1e3 * plateau);
    CHECK(std::isfinite(commutator_smoothing_ratio(eta, f, 0.5, 0.2)));
}

TEST_CASE("homogeneity")
{
    const UniformLogGrid g(-16.0, 16.0, 2048);
    const RadialFunction v(bump(g, 0.2, 1.0));
    const QuadratureSpec q;
    CHECK(homogeneity_residual(v, 1.0, q) == 0.0);
    CHECK(homogeneity_residual(v, 4.0, q) < 1e-5);
    CHECK(homogeneity_residual(v, 0.25, q) < 1e-5);
    CHECK_THROWS_AS(homogeneity_residual(v, std::exp(10.0), q), ValidationError);
}

TEST_CASE("quadrature errors")
{
    const UniformLogGrid g(-16.0, 16.0, 512);
    QuadratureSpec q;
    q.split_radius = 2.0;
    CHECK_THROWS_AS(apply_P0_direct(bump(g, 0, 1), q), ValidationError);
    q = QuadratureSpec{};
    q.panel_order = 1;
    q.panel_width = 4.0;
    q.max_refinements = 1;
    q.tolerance = 1e-12;
    try {
        apply_P0_direct(bump(g, 0, 1), q);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.per_node().size() == g.n());
        CHECK(e.achieved() > 1e-12);
    }
}
