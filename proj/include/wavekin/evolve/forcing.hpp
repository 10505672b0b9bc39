#pragma once

#include "wavekin/spectral/grid.hpp"

#include <limits>
#include <string>

namespace wavekin {

/// nu(t, X) = amplitude * profile(t * t_scale) * family(X * x_scale).
/// The source Q(t, xi) of the log-variable equation is nu(t, e^xi).
struct ForcingSpec {
    enum class Family { indicator_window, power_decay, log_gaussian };
    enum class Profile { constant, ramp, oscillatory };

    Family family = Family::indicator_window;
    double a = 1.0;  // indicator window [a, b] in X
    double b = 2.0;
    double edge_width = 0.0;  // xi-width of the smooth edge ramps; 0 samples the sharp indicator
    double theta = 0.15;      // power decay X^-theta (1+X)^-rho
    double rho = 0.5;
    double center = 0.0;  // log gaussian exp(-((xi - center)/width)^2)
    double width = 1.0;

    Profile profile = Profile::constant;
    double ramp_time = 1.0;  // min(t / ramp_time, 1)
    double omega = 1.0;      // cos(omega t)
    double amplitude = 1.0;
    double switch_off = std::numeric_limits<double>::infinity();  // zero for t >= switch_off

    double x_scale = 1.0;
    double t_scale = 1.0;

    void validate() const;
    double spatial(double X) const;
    double temporal(double t) const;
    double operator()(double t, double X) const { return amplitude * temporal(t) * spatial(X); }
    bool time_constant() const;
    Field sample(const UniformLogGrid& g, double t) const;

    /// sqrt(R) nu(sqrt(R) t, R X): the source that reproduces v(sqrt(R) t, R X).
    ForcingSpec scaled(double R) const;
};

std::string to_string(ForcingSpec::Family f);
std::string to_string(ForcingSpec::Profile p);
ForcingSpec::Family parse_family(const std::string& s);
ForcingSpec::Profile parse_profile(const std::string& s);

}  // namespace wavekin
