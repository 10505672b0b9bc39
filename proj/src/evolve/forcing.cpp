#include "wavekin/evolve/forcing.hpp"

#include "wavekin/errors.hpp"
#include "wavekin/kinetic/cutoff.hpp"

#include <cmath>

namespace wavekin {

void ForcingSpec::validate() const
{
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(amplitude) || !(x_scale > 0.0) || !(t_scale > 0.0) || !finite(x_scale) || !finite(t_scale))
        throw ValidationError("forcing: amplitude and scales must be finite, scales positive");
    switch (family) {
    case Family::indicator_window:
        if (!(a > 0.0 && b > a && finite(b)))
            throw ValidationError("forcing: indicator window needs 0 < a < b");
        if (!(edge_width >= 0.0 && finite(edge_width)))
            throw ValidationError("forcing: edge_width must be >= 0");
        break;
    case Family::power_decay:
        if (!finite(theta) || !finite(rho))
            throw ValidationError("forcing: power decay exponents must be finite");
        break;
    case Family::log_gaussian:
        if (!finite(center) || !(width > 0.0 && finite(width)))
            throw ValidationError("forcing: log gaussian needs width > 0");
        break;
    }
    if (profile == Profile::ramp && !(ramp_time > 0.0 && finite(ramp_time)))
        throw ValidationError("forcing: ramp_time must be > 0");
    if (profile == Profile::oscillatory && !finite(omega))
        throw ValidationError("forcing: omega must be finite");
    if (std::isnan(switch_off) || switch_off < 0.0)
        throw ValidationError("forcing: switch_off must be >= 0");
}

double ForcingSpec::spatial(double X) const
{
    const double Y = X * x_scale;
    switch (family) {
    case Family::indicator_window:
        if (edge_width > 0.0)
            return ramped_indicator(std::log(Y), std::log(a), std::log(b), edge_width);
        return (Y >= a && Y <= b) ? 1.0 : 0.0;
    case Family::power_decay:
        return std::pow(Y, -theta) * std::pow(1.0 + Y, -rho);
    case Family::log_gaussian: {
        const double z = (std::log(Y) - center) / width;
        return std::exp(-z * z);
    }
    }
    return 0.0;
}

double ForcingSpec::temporal(double t) const
{
    if (t >= switch_off)
        return 0.0;
    const double s = t * t_scale;
    switch (profile) {
    case Profile::constant:
        return 1.0;
    case Profile::ramp:
        return std::min(s / ramp_time, 1.0);
    case Profile::oscillatory:
        return std::cos(omega * s);
    }
    return 0.0;
}

bool ForcingSpec::time_constant() const
{
    return profile == Profile::constant && std::isinf(switch_off);
}

Field ForcingSpec::sample(const UniformLogGrid& g, double t) const
{
    const double c = amplitude * temporal(t);
    Field f(g);
    if (c == 0.0)
        return f;
    for (std::size_t j = 0; j < g.n(); ++j)
        f[j] = c * spatial(g.X(j));
    return f;
}

ForcingSpec ForcingSpec::scaled(double R) const
{
    if (!(R > 0.0))
        throw ValidationError("forcing: scale R must be positive");
    ForcingSpec s = *this;
    const double root = std::sqrt(R);
    s.x_scale *= R;
    s.t_scale *= root;
    s.amplitude *= root;
    s.switch_off /= root;
    return s;
}

std::string to_string(ForcingSpec::Family f)
{
    switch (f) {
    case ForcingSpec::Family::indicator_window:
        return "indicator_window";
    case ForcingSpec::Family::power_decay:
        return "power_decay";
    case ForcingSpec::Family::log_gaussian:
        return "log_gaussian";
    }
    return "?";
}

std::string to_string(ForcingSpec::Profile p)
{
    switch (p) {
    case ForcingSpec::Profile::constant:
        return "constant";
    case ForcingSpec::Profile::ramp:
        return "ramp";
    case ForcingSpec::Profile::oscillatory:
        return "oscillatory";
    }
    return "?";
}

ForcingSpec::Family parse_family(const std::string& s)
{
    if (s == "indicator_window")
        return ForcingSpec::Family::indicator_window;
    if (s == "power_decay")
        return ForcingSpec::Family::power_decay;
    if (s == "log_gaussian")
        return ForcingSpec::Family::log_gaussian;
    throw ValidationError("forcing.family: unknown family '" + s + "'");
}

ForcingSpec::Profile parse_profile(const std::string& s)
{
    if (s == "constant")
        return ForcingSpec::Profile::constant;
    if (s == "ramp")
        return ForcingSpec::Profile::ramp;
    if (s == "oscillatory")
        return ForcingSpec::Profile::oscillatory;
    throw ValidationError("forcing.profile: unknown profile '" + s + "'");
}

}  // namespace wavekin
