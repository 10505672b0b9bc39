#include "wavekin/errors.hpp"
#include "wavekin/norms/norms.hpp"
#include "wavekin/spectral/fourier.hpp"
#include "wavekin/spectral/multiplier.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace wavekin;

namespace {

Field bump(const UniformLogGrid& g, double c, double w)
{
    return Field::sample(g, [&](double x) { return std::exp(-(x - c) * (x - c) / (w * w)); });
}

}  // namespace

TEST_CASE("weight spec validation")
{
    CHECK_NOTHROW((WeightSpec{0.15, 0.5}.validate_smoothing_mode()));
    CHECK_THROWS_WITH_AS((WeightSpec{0.15, 0.2}.validate_smoothing_mode()), "weight: θ+ρ ∉ (1/2, 3/2)",
                         ValidationError);
    CHECK_THROWS_AS((WeightSpec{0.3, 0.5}.validate_smoothing_mode()), ValidationError);
    CHECK_NOTHROW((WeightSpec{0.3, 0.5}.validate_smoothing_mode(true)));
    CHECK_THROWS_AS((WeightSpec{-0.1, 0.5}.validate_decay_mode()), ValidationError);
    CHECK_NOTHROW((WeightSpec{0.1, 0.6}.validate_decay_mode()));
}

TEST_CASE("weighted sup norm")
{
    const UniformLogGrid g(-10.0, 10.0, 512);
    const WeightSpec w{0.1, 0.5};
    const auto v = RadialFunction::sample(g, [&](double X) { return 1.0 / w.weight(X); });
    CHECK(weighted_sup_norm(v, w) == doctest::Approx(1.0).epsilon(1e-14));
    const auto v2 = RadialFunction::sample(g, [&](double X) { return 2.0 / w.weight(X); });
    CHECK(weighted_sup_norm(v2, w) == doctest::Approx(2.0).epsilon(1e-14));
    // indicator of [1, 2]: weight is increasing, so the max sits at the
    // last node inside
    const auto ind = RadialFunction::sample(g, [](double X) { return (X >= 1.0 && X <= 2.0) ? 1.0 : 0.0; });
    double expect = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j)
        if (g.X(j) >= 1.0 && g.X(j) <= 2.0)
            expect = std::max(expect, w.weight(g.X(j)));
    CHECK(weighted_sup_norm(ind, w) == expect);
}

TEST_CASE("truncation convergence")
{
    const UniformLogGrid g(-13.5, 13.5, 4096);
    const WeightSpec w{0.1, 0.5}, wp{0.2, 0.2};
    const auto gfun = RadialFunction::sample(g, [&](double X) { return 1.0 / w.weight(X); });
    const std::vector<double> ns = {2.0, 8.0, 32.0, 128.0, 512.0, 2048.0, 8192.0, 1e6};
    const TruncationReport r = truncation_convergence(gfun, w, wp, ns);
    REQUIRE(r.cutoffs.size() == 7);  // 1e6 is beyond the grid reach
    CHECK(r.monotone);
    CHECK(r.below_threshold == (r.tail_norms.back() < 1e-3 * r.base_norm));
    // closed-form tail sup, a = theta'-theta, b = rho'-rho
    const double a = 0.1, b = -0.3;
    for (std::size_t i = 0; i < r.cutoffs.size(); ++i) {
        const double n = r.cutoffs[i];
        CHECK(r.inner_side[i] <= power_tail_sup_inner(a, b, 1.0 / n) * (1.0 + 1e-12));
        CHECK(r.inner_side[i] == doctest::Approx(power_tail_sup_inner(a, b, 1.0 / n)).epsilon(0.01));
        CHECK(r.outer_side[i] == doctest::Approx(power_tail_sup_outer(a, b, n)).epsilon(0.01));
    }
    // inner side decays like n^{-(theta'-theta)}
    const double slope = std::log(r.inner_side[5] / r.inner_side[3]) / std::log(r.cutoffs[5] / r.cutoffs[3]);
    CHECK(slope == doctest::Approx(-0.1).epsilon(0.02));

    const auto compact = RadialFunction::sample(g, [](double X) { return (X > 0.25 && X < 4.0) ? 1.0 : 0.0; });
    const TruncationReport c = truncation_convergence(compact, w, wp, {8.0, 64.0});
    CHECK(c.tail_norms[0] == 0.0);
    CHECK(c.tail_norms[1] == 0.0);
    CHECK_THROWS_AS(truncation_convergence(gfun, w, WeightSpec{0.05, 0.2}, ns), ValidationError);
    CHECK_THROWS_AS(truncation_convergence(gfun, w, WeightSpec{0.2, 0.5}, ns), ValidationError);

    const UniformLogGrid g2(-13.5, 13.5, 8192);
    const auto gfun2 = RadialFunction::sample(g2, [&](double X) { return 1.0 / w.weight(X); });
    const TruncationReport r2 = truncation_convergence(gfun2, w, wp, ns);
    for (std::size_t i = 0; i < r.tail_norms.size(); ++i)
        CHECK(r2.tail_norms[i] == doctest::Approx(r.tail_norms[i]).epsilon(0.01));
}

TEST_CASE("mellin transform")
{
    // 0 and 1 are nodes, so both ramps are sampled symmetrically
    const UniformLogGrid g(-16.0, 16.0, 2048);
    const double width = 4.0 * g.spacing();
    const auto ind = RadialFunction(
        Field::sample(g, [&](double xi) { return ramped_indicator(xi, 0.0, 1.0, width); }));
    std::vector<double> ks = {0.0, g.dk() * 3, g.dk() * 11, 0.77};
    const auto m = mellin(ind, ks);
    CHECK(std::abs(m[0] - 1.0) < 1e-13);
    for (std::size_t i = 1; i < ks.size(); ++i) {
        const double k = ks[i];
        // transform of the ramp derivative, a symmetric bump of width `width`
        const double smear = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double u) { return 30.0 * u * u * (1 - u) * (1 - u) * std::cos(k * width * (u - 0.5)); }, 0.0, 1.0);
        const ComplexValue exact = (1.0 - std::polar(1.0, -k)) / ComplexValue(0.0, k) * smear;
        CHECK(std::abs(m[i] - exact) < k * g.spacing() * g.spacing());
    }
    const auto v = RadialFunction(bump(g, 0.4, 0.8));
    std::vector<double> lattice;
    for (int i = -20; i <= 20; ++i)
        lattice.push_back(g.dk() * i);
    const auto a = mellin(v, lattice), b = mellin_direct(v, lattice);
    for (std::size_t i = 0; i < lattice.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-8);
    // dilation covariance with a grid-aligned R
    const double logR = 32.0 * g.spacing();
    const auto vr = RadialFunction(bump(g, 0.4 - logR, 0.8));
    const auto c = mellin(vr, lattice);
    for (std::size_t i = 0; i < lattice.size(); ++i)
        CHECK(std::abs(c[i] - std::polar(1.0, lattice[i] * logR) * a[i]) < 1e-10);
}

TEST_CASE("m_sigma norms")
{
    const UniformLogGrid g(-12.0, 12.0, 4096);
    const auto v = RadialFunction(bump(g, 0.3, 0.9));
    CHECK(m_sigma_norm(v, 0.0) == doctest::Approx(v.field().l2_norm()).epsilon(1e-12));
    const double k1 = g.wavenumber(9);
    const auto c = RadialFunction(Field::sample(g, [&](double x) { return std::cos(k1 * x); }));
    CHECK(m_sigma_norm(c, 1.0) / m_sigma_norm(c, 0.0) == doctest::Approx(std::sqrt(1 + k1 * k1)).epsilon(1e-12));

    // bump inside log I4 seen through the I3 window: integer orders agree
    const double c4 = 0.0, half = 0.5 * std::log((5.0 / 4.0) / (3.0 / 4.0));
    const CutoffSpec b4 = CutoffSpec::smooth_bump(c4, 0.0, 0.95 * half);
    const auto in4 = RadialFunction(b4.sample(g));
    const Window w3{1.0, kI3};
    CHECK(m_sigma_norm(in4, 0.0, w3) == doctest::Approx(m_sigma_norm(in4, 0.0)).epsilon(1e-6));
    CHECK(m_sigma_norm(in4, 1.0, w3) == doctest::Approx(m_sigma_norm(in4, 1.0)).epsilon(1e-6));

    // nested windows
    for (double s : {0.0, 0.5, 1.0, 1.5}) {
        const double inner = m_sigma_norm(v, s, Window{1.0, kI4});
        const double outer = m_sigma_norm(v, s, Window{1.0, kI3});
        const double outer2 = m_sigma_norm(v, s, Window{1.0, kI2});
        CHECK(inner <= outer);
        CHECK(outer <= outer2);
    }
    CHECK_THROWS_AS(m_sigma_norm(v, 2.0, w3), ValidationError);
    CHECK_THROWS_AS(m_sigma_norm(v, 0.5, Window{1e9, kI3}), ValidationError);
}

TEST_CASE("difference double integral")
{
    // int int_{(0,1)^2} |x-y|^2 / |x-y|^alpha = 2 / ((3-alpha)(4-alpha))
    for (double alpha : {1.0, 1.5, 2.0, 2.5}) {
        const double v = difference_double_integral([](double x) { return x; }, 0.0, 1.0, alpha, 0.05);
        CHECK(v == doctest::Approx(2.0 / ((3.0 - alpha) * (4.0 - alpha))).epsilon(1e-10));
    }
    CHECK(difference_double_integral([](double) { return 2.0; }, 0.0, 1.0, 1.5, 0.1) == 0.0);
}

TEST_CASE("gagliardo log seminorm")
{
    const Window w12{1.0, Interval{1.0, 2.0}};
    for (std::size_t n : {2048u, 4096u}) {
        const UniformLogGrid g(-6.0, 6.0, n);
        const auto v = RadialFunction::sample(g, [](double X) { return X; });
        CHECK(gagliardo_log_seminorm(v, w12) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
        const auto c = RadialFunction::sample(g, [](double) { return 5.0; });
        CHECK(gagliardo_log_seminorm(c, w12) < 1e-25);
        const auto v3 = RadialFunction::sample(g, [](double X) { return 3.0 * X; });
        CHECK(gagliardo_log_seminorm(v3, w12) == doctest::Approx(3.0).epsilon(1e-6));
    }
    const UniformLogGrid g1(-6.0, 6.0, 1024), g2(-6.0, 6.0, 2048);
    auto f = [](double X) { return std::sin(3.0 * X) * std::exp(-X); };
    const double a = gagliardo_log_seminorm(RadialFunction::sample(g1, f), Window{1.0, kI3});
    const double b = gagliardo_log_seminorm(RadialFunction::sample(g2, f), Window{1.0, kI3});
    CHECK(a == doctest::Approx(b).epsilon(0.01));
}

TEST_CASE("double-integral H0_log norm")
{
    const UniformLogGrid g(-16.0, 16.0, 2048);
    CHECK(h0log_double_integral_norm(Field(g)) == 0.0);
    std::vector<double> ratios;
    for (int i = 0; i < 6; ++i) {
        const Field f = bump(g, 0.3 * i - 1.0, 0.2 + 0.3 * i);
        ratios.push_back(h0log_double_integral_norm(f) / sobolev_norm(f, 0.0, 1));
    }
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    CHECK(*mn > 0.0);
    CHECK(*mx / *mn < 4.0);

    // a windowed single mode: ratio^2 = 1 + 4 int_0^{k/3} (1 - cos t)/t dt
    const CutoffSpec win = CutoffSpec::smooth_bump(0.0, 4.0, 8.0);
    for (double k : {8.0, 16.0, 32.0, 64.0}) {
        const Field f = Field::sample(g, [&](double x) { return win(x) * std::cos(k * x); });
        const double n = h0log_double_integral_norm(f);
        const double cin = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [](double t) { return t < 1e-8 ? 0.5 * t : (1.0 - std::cos(t)) / t; }, 0.0, k / 3.0, 12, 1e-14);
        CHECK(n * n / (f.l2_norm() * f.l2_norm()) == doctest::Approx(1.0 + 4.0 * cin).epsilon(0.01));
    }
}

TEST_CASE("N_{R,sigma}")
{
    const UniformLogGrid g(-12.0, 12.0, 2048);
    const auto zero = RadialFunction(Field(g));
    CHECK(n_r_sigma(zero, 1.0, 0.5) == 0.0);
    const auto v = RadialFunction(bump(g, 0.5, 1.5));
    for (double R : {0.25, 1.0, 4.0}) {
        const double a = n_r_sigma(v, R, 0.0), b = n_r_sigma(v, R, 0.5), c = n_r_sigma(v, R, 1.0);
        CHECK(a <= b);
        CHECK(b <= c);
        // comparable to the plain H0_log norm of the cut-off function
        Field cut = v.field();
        const CutoffSpec eta = CutoffSpec::eta0_R(R);
        for (std::size_t j = 0; j < g.n(); ++j)
            cut[j] *= eta(g.xi(j));
        const double h = sobolev_norm(cut, 0.0, 1) / std::sqrt(R);
        CHECK(a / h > 0.3);
        CHECK(a / h < 3.0);
    }
}

TEST_CASE("scaled norm equivalence")
{
    const UniformLogGrid g(-8.0, 8.0, 4096);
    std::vector<std::function<double(double)>> profiles = {
        [](double X) { return std::exp(-4.0 * (X - 1.0) * (X - 1.0)); },
        [](double X) { return X * std::sin(2.0 * X); },
        [](double X) { return 1.0 / (1.0 + X * X); },
    };
    for (double sigma : {0.5, 1.5}) {
        const EquivalenceReport r = norm_equivalence_report(g, profiles, sigma, {0.25, 1.0, 4.0});
        CHECK(r.max_r_drift < 1e-6);
        CHECK(std::isfinite(r.spread));
        CHECK(r.min_ratio > 0.0);
    }
    // quadratic homogeneity
    std::vector<std::function<double(double)>> doubled = {[&](double X) { return 2.0 * profiles[0](X); }};
    const auto a = norm_equivalence_report(g, {profiles[0]}, 0.5, {1.0});
    const auto b = norm_equivalence_report(g, doubled, 0.5, {1.0});
    CHECK(b.entries[0].x_side == doctest::Approx(4.0 * a.entries[0].x_side).epsilon(1e-12));
    CHECK(b.entries[0].m_side == doctest::Approx(4.0 * a.entries[0].m_side).epsilon(1e-12));
    const auto z = norm_equivalence_report(g, {[](double) { return 0.0; }}, 0.5, {1.0});
    CHECK(z.entries[0].x_side == 0.0);
    CHECK(z.entries[0].m_side == 0.0);
    CHECK_THROWS_AS(norm_equivalence_report(g, profiles, 1.0, {1.0}), ValidationError);
}

TEST_CASE("local log bound")
{
    const UniformLogGrid g(-10.0, 10.0, 2048);
    const CutoffSpec chi = CutoffSpec::smooth_bump(0.0, 2.0, 3.0);
    const std::pair<double, double> I{-1.5, 1.5};
    const LocalLogReport z = local_log_bound_check(Field(g), chi, I);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    const LocalLogReport a = local_log_bound_check(bump(g, 0.2, 0.4), chi, I);
    const UniformLogGrid g2(-10.0, 10.0, 4096);
    const LocalLogReport b = local_log_bound_check(bump(g2, 0.2, 0.4), chi, I);
    CHECK(std::isfinite(a.ratio));
    CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(0.05));
    const LocalLogReport d = local_log_bound_check(bump(g, 5.0, 0.2), chi, I);
    CHECK(d.lhs <= d.rhs);
    CHECK_THROWS_AS(local_log_bound_check(bump(g, 0, 1), chi, {-2.5, 0.0}), ValidationError);
}
