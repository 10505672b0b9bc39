#include "wavekin/errors.hpp"
#include "wavekin/evolve/appendix.hpp"
#include "wavekin/evolve/experiments.hpp"
#include "wavekin/spectral/fourier.hpp"
#include "wavekin/spectral/semigroup.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace wavekin;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.grid = {-8.0, 10.0, 1024};
    c.T_star = 0.25;
    c.dt = 1.0 / 1024.0;
    c.samples = 9;
    return c;
}

ExperimentConfig frozen_config()
{
    // the periodic closure sees the kernel's exponential tails, hence the wide grid
    ExperimentConfig c = small_config();
    c.grid = {-24.0, 24.0, 4096};
    c.frozen_xi0 = 0.0;
    c.forcing.family = ForcingSpec::Family::log_gaussian;
    c.forcing.center = 1.0;
    c.forcing.width = 1.0;
    return c;
}

double max_diff(const Field& a, const Field& b)
{
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

// sum dxi w^2 e^{xi/2}
double weighted_energy(const Field& w)
{
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        s += w[j] * w[j] * std::exp(w.grid().xi(j) / 2.0);
    return s * w.grid().spacing();
}

}  // namespace

TEST_CASE("zero forcing stays zero")
{
    ExperimentConfig c = small_config();
    c.forcing.amplitude = 0.0;
    const Trajectory t = evolve(c);
    REQUIRE(t.states.size() == 9);
    for (const Field& f : t.states)
        CHECK(f.sup_norm() == 0.0);
    CHECK_NOTHROW(t.check());
}

TEST_CASE("trajectory invariants and X-side view")
{
    const ExperimentConfig c = small_config();
    const Trajectory t = evolve(c);
    CHECK_NOTHROW(t.check());
    CHECK(t.states.front().sup_norm() == 0.0);
    CHECK(t.times.back() == doctest::Approx(c.T_star).epsilon(1e-15));
    CHECK(t.diagnostics.closure == Closure::constant_extension);
    CHECK(t.diagnostics.right_buffer_peak < c.monitor_tolerance);
    CHECK(t.diagnostics.max_growth <= 2.0);
    CHECK(t.provenance == c.hash());

    const RadialTrajectory r = as_radial(t);
    for (std::size_t i = 0; i < t.states.size(); ++i)
        for (std::size_t j = 0; j < t.grid.n(); j += 97) {
            CHECK(r.states[i][j] == t.states[i][j]);
            CHECK(r.states[i].X(j) == std::exp(t.grid.xi(j)));
        }
}

TEST_CASE("frozen mode matches the Duhamel formula")
{
    for (Integrator integ : {Integrator::rk4, Integrator::imex_frozen}) {
        ExperimentConfig c = frozen_config();
        c.integrator = integ;
        const Trajectory t = evolve(c);
        CHECK(t.diagnostics.closure == Closure::periodic);
        const UniformLogGrid g = t.grid;
        const ForcingSpec f = c.forcing;
        const auto ref = duhamel_solve(Field(g), SampledForcing{[&](double s) { return f.sample(g, s); }, true},
                                       t.times, 0.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < t.times.size(); ++i)
            worst = std::max(worst, (t.states[i] - ref[i]).l2_norm());
        INFO("integrator " << to_string(integ));
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("constant-in-xi forcing grows linearly in frozen mode")
{
    ExperimentConfig c = small_config();
    c.frozen_xi0 = 0.0;
    c.forcing.a = 1e-9;
    c.forcing.b = 1e9;
    c.forcing.amplitude = 0.75;
    // a spatially constant source fills both buffers by construction
    c.monitor_tolerance = 2.0;
    const Trajectory t = evolve(c);
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        const Spectrum s = forward(t.states[i]);
        const double mean = s[0].real() * std::sqrt(2.0 * std::numbers::pi) / t.grid.length();
        CHECK(std::abs(mean - 0.75 * t.times[i]) <= 1e-10);
        double other = 0.0;
        for (std::size_t k = 1; k < s.size(); ++k)
            other = std::max(other, std::abs(s[k]));
        CHECK(other <= 1e-10);
    }
}

TEST_CASE("superposition of two sources")
{
    const ExperimentConfig c = small_config();
    const UniformLogGrid g = c.grid.make();
    ForcingSpec f1 = c.forcing;
    ForcingSpec f2;
    f2.family = ForcingSpec::Family::log_gaussian;
    f2.center = -0.5;
    f2.width = 0.7;
    f2.profile = ForcingSpec::Profile::oscillatory;
    f2.omega = 9.0;
    const double alpha = 1.7, beta = -0.6;
    const Trajectory a = evolve(c, {[&](double t) { return f1.sample(g, t); }, true});
    const Trajectory b = evolve(c, {[&](double t) { return f2.sample(g, t); }, false});
    const Trajectory ab = evolve(
        c, {[&](double t) { return alpha * f1.sample(g, t) + beta * f2.sample(g, t); }, false});
    for (std::size_t i = 0; i < ab.states.size(); ++i) {
        const Field expect = alpha * a.states[i] + beta * b.states[i];
        CHECK(max_diff(ab.states[i], expect) <= 1e-10 * std::max(1.0, expect.sup_norm()));
    }
}

TEST_CASE("dissipation after the forcing is switched off")
{
    SUBCASE("variable coefficient, energy weighted by e^{xi/2}")
    {
        ExperimentConfig c = small_config();
        c.T_star = 0.5;
        c.samples = 65;
        c.forcing.switch_off = 0.125;
        const Trajectory t = evolve(c);
        for (std::size_t i = 1; i < t.times.size(); ++i)
            if (t.times[i - 1] >= 0.125) {
                const double before = weighted_energy(t.states[i - 1]);
                CHECK(weighted_energy(t.states[i]) <= before * (1.0 + 1e-8));
            }
    }
    SUBCASE("frozen coefficient, plain L2")
    {
        ExperimentConfig c = frozen_config();
        c.T_star = 0.5;
        c.samples = 65;
        c.forcing.switch_off = 0.125;
        const Trajectory t = evolve(c);
        for (std::size_t i = 1; i < t.times.size(); ++i)
            if (t.times[i - 1] >= 0.125)
                CHECK(t.states[i].l2_norm() <= t.states[i - 1].l2_norm() * (1.0 + 1e-8));
    }
}

TEST_CASE("imex and rk4 agree on the variable-coefficient problem")
{
    ExperimentConfig c = small_config();
    c.forcing.edge_width = 0.1;
    const Trajectory a = evolve(c);
    c.integrator = Integrator::imex_frozen;
    const Trajectory b = evolve(c);
    const Field& x = a.states.back();
    CHECK(max_diff(x, b.states.back()) <= 1e-6 * x.sup_norm());
}

TEST_CASE("monitor aborts when mass reaches the right buffer")
{
    ExperimentConfig c = small_config();
    c.forcing.family = ForcingSpec::Family::log_gaussian;
    c.forcing.center = c.grid.xi_max - 1.0;
    c.forcing.width = 0.5;
    CHECK_THROWS_AS(evolve(c), NumericalAbort);
}

TEST_CASE("trajectory file round trip")
{
    const Trajectory t = evolve(small_config());
    std::stringstream io;
    write_trajectory(t, io);
    const Trajectory back = read_trajectory(io);
    CHECK(back.grid == t.grid);
    CHECK(back.times == t.times);
    CHECK(back.provenance == t.provenance);
    REQUIRE(back.states.size() == t.states.size());
    for (std::size_t i = 0; i < t.states.size(); ++i)
        CHECK(max_diff(back.states[i], t.states[i]) == 0.0);

    std::stringstream bad("{\"format\": \"something-else\"}\n");
    CHECK_THROWS_AS(read_trajectory(bad), ValidationError);
}

TEST_CASE("config parsing and validation")
{
    const std::string text = "# run\n"
                             "grid.n = 2048\n"
                             "forcing.family = log_gaussian\n"
                             "forcing.center = 0.5\n"
                             "weight.theta = 0.1\n"
                             "weight.rho = 0.6\n"
                             "sweep.sigmas = 0, 0.5, 1\n"
                             "time.integrator = imex_frozen\n"
                             "mode.frozen_xi0 = 0.25\n";
    const ExperimentConfig c = ExperimentConfig::from_flat(FlatConfig::parse(text));
    CHECK(c.grid.n == 2048);
    CHECK(c.forcing.family == ForcingSpec::Family::log_gaussian);
    CHECK(c.forcing.center == 0.5);
    CHECK(c.sigmas == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(c.integrator == Integrator::imex_frozen);
    REQUIRE(c.frozen_xi0);
    CHECK(*c.frozen_xi0 == 0.25);
    CHECK(c.effective_closure() == Closure::periodic);
    CHECK_NOTHROW(c.validate());

    const ExperimentConfig again = ExperimentConfig::from_flat(FlatConfig::parse(text));
    CHECK(again.hash() == c.hash());
    const ExperimentConfig other = ExperimentConfig::from_flat(FlatConfig::parse(text + "grid.xi_min = -7\n"));
    CHECK(other.hash() != c.hash());

    CHECK_THROWS_AS(ExperimentConfig::from_flat(FlatConfig::parse("grid.nodes = 12\n")), ValidationError);
    CHECK_THROWS_AS(FlatConfig::parse("grid.n 12\n"), ValidationError);
    CHECK_THROWS_AS(FlatConfig::parse("grid.n = 1\ngrid.n = 2\n"), ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_flat(FlatConfig::parse("time.integrator = euler\n")), ValidationError);

    ExperimentConfig w = c;
    w.weight = {0.15, 0.2};
    CHECK_THROWS_WITH_AS(w.validate(), "weight: θ+ρ ∉ (1/2, 3/2)", ValidationError);
    w.theorem_mode = false;
    CHECK_NOTHROW(w.validate());

    ExperimentConfig s = small_config();
    s.dt = 1.0 / 256.0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_config();
    s.samples = 10;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_config();
    s.integrator = Integrator::imex_frozen;
    s.closure = Closure::periodic;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = small_config();
    s.grid.n = 1000;
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("scaled runs reproduce the base run")
{
    const ScalingReport r = scaling_check(small_config(), {0.25, 4.0});
    REQUIRE(r.max_relative_error.size() == 2);
    for (double e : r.max_relative_error)
        CHECK(e <= 1e-4);
    CHECK(r.passed);
}

TEST_CASE("weighted decay ratios")
{
    ExperimentConfig c = small_config();
    const WeightSpec w{0.1, 0.6};
    const DecayReport base = weighted_decay_check(evolve(c), c.forcing, w, c.buffer_fraction);
    CHECK(std::isfinite(base.max_r1));
    CHECK(base.max_r1 > 0.0);
    CHECK(base.r1_bounded);

    c.forcing.amplitude = 2.0;
    const DecayReport twice = weighted_decay_check(evolve(c), c.forcing, w, c.buffer_fraction);
    CHECK(twice.max_r1 == doctest::Approx(base.max_r1).epsilon(1e-10));
    CHECK(twice.max_r2 == doctest::Approx(base.max_r2).epsilon(1e-10));

    c.forcing.amplitude = 0.0;
    const DecayReport zero = weighted_decay_check(evolve(c), c.forcing, w, c.buffer_fraction);
    CHECK(zero.max_r1 == 0.0);
    CHECK(zero.max_r2 == 0.0);
}

TEST_CASE("time window integration")
{
    const std::vector<double> t{0.0, 0.5, 1.0};
    const std::vector<double> f{0.0, 1.0, 2.0};
    CHECK(trapezoid_window(t, f, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(trapezoid_window(t, f, 0.25, 0.75) == doctest::Approx(0.5));
    CHECK(trapezoid_window(t, f, 0.9, 3.0) == doctest::Approx(0.19));
}

TEST_CASE("weighted forcing integral")
{
    // indicator on [1, 2]: ||nu||_{theta,rho} = 2^theta 3^rho on the grid's nodes
    ExperimentConfig c = small_config();
    const UniformLogGrid g = c.grid.make();
    const double nu = weighted_sup_norm(RadialFunction(c.forcing.sample(g, 0.0)), c.weight);
    const double theta = c.weight.theta;
    const double exact = nu * nu * (1.0 + 1.0 / (1.0 - 4.0 * theta));
    CHECK(forcing_weighted_integral(c.forcing, g, c.weight, 1.0) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(std::isinf(forcing_weighted_integral(c.forcing, g, WeightSpec{0.3, 0.5}, 1.0)));
}

TEST_CASE("smoothing sweep on a small lattice")
{
    ExperimentConfig c = small_config();
    c.R_min_exponent = -2;
    c.R_max_exponent = 2;
    c.t0_count = 4;
    const SweepReport r = smoothing_sweep(c);
    CHECK(r.all_finite);
    CHECK(r.C_hat > 0.0);
    // R < 1: three LHS kinds for sigma 0, two for 1/2, per t0; R >= 1: one row each
    CHECK(r.rows.size() == 2 * 4 * 3 + 2 * 4 * 2 + 2 * 3);
    for (const auto& a : r.rows) {
        CHECK(std::isfinite(a.ratio));
        if (a.sigma != 0.0)
            continue;
        for (const auto& b : r.rows)
            if (b.sigma == 0.5 && b.R == a.R && b.t0 == a.t0 && b.lhs_name == a.lhs_name)
                CHECK(a.lhs <= b.lhs * (1.0 + 1e-12));
    }
    double best = 0.0;
    for (const auto& row : r.rows)
        best = std::max(best, row.ratio);
    CHECK(best == r.C_hat);

    c.forcing.amplitude = 0.0;
    const SweepReport z = smoothing_sweep(c);
    for (const auto& row : z.rows)
        CHECK(row.lhs == 0.0);
}

TEST_CASE("appendix suite")
{
    const UniformLogGrid g(-16.0, 16.0, 512);
    AppendixOptions opts;
    opts.members = 4;
    const AppendixReport r = appendix_inequality_suite(g, {0.5, 1.5}, opts);
    CHECK(r.closed_form_error <= 1e-8);
    CHECK(r.ratios.size() == 5);
    for (const auto& x : r.ratios) {
        INFO(x.name << " sigma " << x.sigma);
        CHECK(x.finite);
        CHECK(x.max_ratio > 0.0);
        CHECK(x.stable);
    }
    CHECK(r.locality_ratio < 1e-3 * r.typical_commutator_ratio);
    CHECK(r.passed);

    opts.zero_family = true;
    const AppendixReport z = appendix_inequality_suite(g, {1.5}, opts);
    for (const auto& x : z.ratios)
        CHECK(x.max_ratio == 0.0);
    CHECK(z.passed);
}

TEST_CASE("damped integral against the closed form")
{
    auto c = [](double s, const void*) { return std::cos(3.0 * s); };
    for (double lambda : {0.0, 0.4, 5.0}) {
        const double t = 0.8;
        // int_0^t e^{-lambda (t-s)} cos(3 s) ds
        const double exact =
            (lambda * std::cos(3.0 * t) + 3.0 * std::sin(3.0 * t) - lambda * std::exp(-lambda * t)) /
            (lambda * lambda + 9.0);
        CHECK(std::abs(damped_integral(lambda, t, c, nullptr) - exact) <= 1e-13);
    }
}

TEST_CASE("cutoff commutator vanishes for a constant cutoff")
{
    const UniformLogGrid g(-16.0, 16.0, 512);
    const Field h = Field::sample(g, [](double x) { return std::exp(-x * x); });
    // chi = smooth bump whose plateau covers the whole support of h and of the kernel's reach
    const Field b = cutoff_commutator(h, CutoffSpec::smooth_bump(0.0, 60.0, 61.0));
    CHECK(b.sup_norm() <= 1e-12);
}
