#include "wavekin/evolve/config.hpp"

#include "wavekin/errors.hpp"
#include "wavekin/specfun/symbol.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace wavekin {

std::string to_string(Integrator i)
{
    return i == Integrator::rk4 ? "rk4" : "imex_frozen";
}

std::string to_string(Closure c)
{
    switch (c) {
    case Closure::automatic:
        return "auto";
    case Closure::periodic:
        return "periodic";
    case Closure::constant_extension:
        return "constant_extension";
    }
    return "?";
}

Closure ExperimentConfig::effective_closure() const
{
    if (closure != Closure::automatic)
        return closure;
    return frozen_xi0 ? Closure::periodic : Closure::constant_extension;
}

double ExperimentConfig::stable_dt() const
{
    const UniformLogGrid g = grid.make();
    const double top = rho0(g.k_max()).real();
    double kappa = 0.0;
    if (frozen_xi0) {
        kappa = integrator == Integrator::rk4 ? std::exp(-*frozen_xi0 / 2.0) : 0.0;
    } else {
        double mean = 0.0, hi = 0.0;
        for (std::size_t j = 0; j < g.n(); ++j) {
            mean += std::exp(-g.xi(j) / 2.0) / static_cast<double>(g.n());
            hi = std::max(hi, std::exp(-g.xi(j) / 2.0));
        }
        // imex_frozen integrates the domain-mean coefficient exactly
        if (integrator == Integrator::rk4) {
            kappa = hi;
        } else {
            for (std::size_t j = 0; j < g.n(); ++j)
                kappa = std::max(kappa, std::abs(std::exp(-g.xi(j) / 2.0) - mean));
        }
    }
    if (kappa == 0.0)
        return INFINITY;
    return 0.5 / (kappa * top);
}

std::size_t ExperimentConfig::steps() const
{
    return static_cast<std::size_t>(std::llround(T_star / dt));
}

std::size_t ExperimentConfig::steps_per_sample() const
{
    return steps() / (samples - 1);
}

void ExperimentConfig::validate() const
{
    if (!(grid.xi_max > grid.xi_min) || !std::isfinite(grid.xi_min) || !std::isfinite(grid.xi_max))
        throw ValidationError("grid: need xi_min < xi_max");
    if (grid.n < 16 || (grid.n & (grid.n - 1)) != 0)
        throw ValidationError("grid: n must be a power of two >= 16");
    forcing.validate();
    if (!(T_star > 0.0) || !std::isfinite(T_star))
        throw ValidationError("time: T_star must be positive");
    if (!(dt > 0.0))
        throw ValidationError("time: dt must be positive");
    const double ratio = T_star / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw ValidationError("time: T_star must be a whole number of steps dt");
    if (samples < 2 || steps() % (samples - 1) != 0)
        throw ValidationError("time: samples - 1 must divide the number of steps");
    if (dt > stable_dt() * (1.0 + 1e-12))
        throw ValidationError("time: dt = " + format_real(dt) + " exceeds the stability bound " +
                              format_real(stable_dt()));
    if (frozen_xi0 && !std::isfinite(*frozen_xi0))
        throw ValidationError("mode: frozen_xi0 must be finite");
    if (!frozen_xi0 && integrator == Integrator::imex_frozen && effective_closure() == Closure::periodic)
        throw ValidationError("mode: the variable coefficient is not periodic; use constant_extension");
    if (theorem_mode)
        weight.validate_smoothing_mode(remark_mode);
    for (double s : sigmas)
        if (!(s >= 0.0 && s < 2.0))
            throw ValidationError("sweep: sigma must lie in [0, 2)");
    if (R_min_exponent > R_max_exponent || R_min_exponent < -6 || R_max_exponent > 6)
        throw ValidationError("sweep: R lattice must be dyadic within [2^-6, 2^6]");
    if (t0_count < 1)
        throw ValidationError("sweep: t0_count must be >= 1");
    if (!(buffer_fraction >= 0.15 && buffer_fraction < 0.5))
        throw ValidationError("monitor: buffer_fraction must lie in [0.15, 0.5)");
    if (!(monitor_tolerance > 0.0))
        throw ValidationError("monitor: tolerance must be positive");
}

std::vector<double> ExperimentConfig::R_lattice() const
{
    std::vector<double> out;
    for (int e = R_min_exponent; e <= R_max_exponent; ++e)
        out.push_back(std::ldexp(1.0, e));
    return out;
}

std::vector<double> ExperimentConfig::t0_lattice() const
{
    std::vector<double> out;
    for (std::size_t i = 0; i < t0_count; ++i)
        out.push_back(T_star * static_cast<double>(i) / static_cast<double>(t0_count));
    return out;
}

std::vector<double> ExperimentConfig::sample_times() const
{
    std::vector<double> out;
    const std::size_t per = steps_per_sample();
    for (std::size_t s = 0; s < samples; ++s)
        out.push_back(dt * static_cast<double>(s * per));
    return out;
}

std::string ExperimentConfig::canonical_text() const
{
    std::map<std::string, std::string> kv;
    auto real = [&](const std::string& k, double v) { kv[k] = format_real(v); };
    real("grid.xi_min", grid.xi_min);
    real("grid.xi_max", grid.xi_max);
    kv["grid.n"] = std::to_string(grid.n);
    kv["forcing.family"] = to_string(forcing.family);
    real("forcing.a", forcing.a);
    real("forcing.b", forcing.b);
    real("forcing.edge_width", forcing.edge_width);
    real("forcing.theta", forcing.theta);
    real("forcing.rho", forcing.rho);
    real("forcing.center", forcing.center);
    real("forcing.width", forcing.width);
    kv["forcing.profile"] = to_string(forcing.profile);
    real("forcing.ramp_time", forcing.ramp_time);
    real("forcing.omega", forcing.omega);
    real("forcing.amplitude", forcing.amplitude);
    real("forcing.switch_off", forcing.switch_off);
    real("forcing.x_scale", forcing.x_scale);
    real("forcing.t_scale", forcing.t_scale);
    real("weight.theta", weight.theta);
    real("weight.rho", weight.rho);
    std::string sig;
    for (double s : sigmas)
        sig += (sig.empty() ? "" : ", ") + format_real(s);
    kv["sweep.sigmas"] = sig;
    kv["sweep.R_min_exponent"] = std::to_string(R_min_exponent);
    kv["sweep.R_max_exponent"] = std::to_string(R_max_exponent);
    kv["sweep.t0_count"] = std::to_string(t0_count);
    real("time.T_star", T_star);
    real("time.dt", dt);
    kv["time.samples"] = std::to_string(samples);
    kv["time.integrator"] = to_string(integrator);
    kv["mode.frozen_xi0"] = frozen_xi0 ? format_real(*frozen_xi0) : "none";
    kv["mode.closure"] = to_string(closure);
    kv["mode.theorem"] = theorem_mode ? "true" : "false";
    kv["mode.remark"] = remark_mode ? "true" : "false";
    real("monitor.buffer_fraction", buffer_fraction);
    real("monitor.tolerance", monitor_tolerance);
    std::ostringstream out;
    for (const auto& [k, v] : kv)
        out << k << " = " << v << "\n";
    return out.str();
}

std::string ExperimentConfig::hash() const
{
    return hex64(fnv1a64(canonical_text()));
}

ExperimentConfig ExperimentConfig::from_flat(const FlatConfig& c)
{
    static const std::map<std::string, std::set<std::string>> known = {
        {"grid", {"xi_min", "xi_max", "n"}},
        {"forcing",
         {"family", "a", "b", "edge_width", "theta", "rho", "center", "width", "profile", "ramp_time", "omega",
          "amplitude", "switch_off", "x_scale", "t_scale"}},
        {"weight", {"theta", "rho"}},
        {"sweep", {"sigmas", "R_min_exponent", "R_max_exponent", "t0_count"}},
        {"time", {"T_star", "dt", "samples", "integrator"}},
        {"mode", {"frozen_xi0", "closure", "theorem", "remark"}},
        {"monitor", {"buffer_fraction", "tolerance"}},
    };
    for (const auto& [section, keys] : known) {
        const auto bad = c.unknown_keys(section, keys);
        if (!bad.empty())
            throw ValidationError("config: unknown key '" + bad.front() + "'");
    }

    ExperimentConfig e;
    e.grid.xi_min = c.get_double("grid.xi_min", e.grid.xi_min);
    e.grid.xi_max = c.get_double("grid.xi_max", e.grid.xi_max);
    const long n = c.get_int("grid.n", static_cast<long>(e.grid.n));
    if (n <= 0)
        throw ValidationError("grid: n must be positive");
    e.grid.n = static_cast<std::size_t>(n);

    ForcingSpec& f = e.forcing;
    f.family = parse_family(c.get_string("forcing.family", to_string(f.family)));
    f.a = c.get_double("forcing.a", f.a);
    f.b = c.get_double("forcing.b", f.b);
    f.edge_width = c.get_double("forcing.edge_width", f.edge_width);
    f.theta = c.get_double("forcing.theta", f.theta);
    f.rho = c.get_double("forcing.rho", f.rho);
    f.center = c.get_double("forcing.center", f.center);
    f.width = c.get_double("forcing.width", f.width);
    f.profile = parse_profile(c.get_string("forcing.profile", to_string(f.profile)));
    f.ramp_time = c.get_double("forcing.ramp_time", f.ramp_time);
    f.omega = c.get_double("forcing.omega", f.omega);
    f.amplitude = c.get_double("forcing.amplitude", f.amplitude);
    f.switch_off = c.get_double("forcing.switch_off", f.switch_off);
    f.x_scale = c.get_double("forcing.x_scale", f.x_scale);
    f.t_scale = c.get_double("forcing.t_scale", f.t_scale);

    e.weight.theta = c.get_double("weight.theta", e.weight.theta);
    e.weight.rho = c.get_double("weight.rho", e.weight.rho);

    e.sigmas = c.get_list("sweep.sigmas", e.sigmas);
    e.R_min_exponent = static_cast<int>(c.get_int("sweep.R_min_exponent", e.R_min_exponent));
    e.R_max_exponent = static_cast<int>(c.get_int("sweep.R_max_exponent", e.R_max_exponent));
    const long t0 = c.get_int("sweep.t0_count", static_cast<long>(e.t0_count));
    if (t0 < 1)
        throw ValidationError("sweep: t0_count must be >= 1");
    e.t0_count = static_cast<std::size_t>(t0);

    e.T_star = c.get_double("time.T_star", e.T_star);
    e.dt = c.get_double("time.dt", e.dt);
    const long samples = c.get_int("time.samples", static_cast<long>(e.samples));
    if (samples < 2)
        throw ValidationError("time: samples must be >= 2");
    e.samples = static_cast<std::size_t>(samples);
    const std::string integ = c.get_string("time.integrator", to_string(e.integrator));
    if (integ == "rk4")
        e.integrator = Integrator::rk4;
    else if (integ == "imex_frozen")
        e.integrator = Integrator::imex_frozen;
    else
        throw ValidationError("time.integrator: unknown integrator '" + integ + "'");

    const std::string frozen = c.get_string("mode.frozen_xi0", "none");
    if (frozen != "none")
        e.frozen_xi0 = c.get_double("mode.frozen_xi0", 0.0);
    const std::string closure = c.get_string("mode.closure", "auto");
    if (closure == "auto")
        e.closure = Closure::automatic;
    else if (closure == "periodic")
        e.closure = Closure::periodic;
    else if (closure == "constant_extension")
        e.closure = Closure::constant_extension;
    else
        throw ValidationError("mode.closure: unknown closure '" + closure + "'");
    e.theorem_mode = c.get_bool("mode.theorem", e.theorem_mode);
    e.remark_mode = c.get_bool("mode.remark", e.remark_mode);

    e.buffer_fraction = c.get_double("monitor.buffer_fraction", e.buffer_fraction);
    e.monitor_tolerance = c.get_double("monitor.tolerance", e.monitor_tolerance);
    e.validate();
    return e;
}

}  // namespace wavekin
