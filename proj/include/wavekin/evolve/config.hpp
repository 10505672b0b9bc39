#pragma once

#include "wavekin/cli/flat_config.hpp"
#include "wavekin/evolve/forcing.hpp"
#include "wavekin/norms/norms.hpp"
#include "wavekin/spectral/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wavekin {

struct GridSpec {
    double xi_min = -8.0;  // natural-log units
    double xi_max = 10.0;
    std::size_t n = 4096;

    UniformLogGrid make() const { return {xi_min, xi_max, n}; }
};

enum class Integrator { rk4, imex_frozen };

/// periodic: the grid is a circle. constant_extension: values beyond each
/// end are held at the end value (the solution tends to a boundary-layer
/// constant as X -> 0).
enum class Closure { automatic, periodic, constant_extension };

struct ExperimentConfig {
    GridSpec grid;
    ForcingSpec forcing;
    WeightSpec weight{0.15, 0.5};

    std::vector<double> sigmas{0.0, 0.5};
    int R_min_exponent = -4;  // dyadic lattice 2^e
    int R_max_exponent = 4;
    std::size_t t0_count = 8;  // t0 = i T* / t0_count

    double T_star = 1.0;
    double dt = 1.0 / 1024.0;
    std::size_t samples = 129;  // stored states, including t = 0
    Integrator integrator = Integrator::rk4;

    std::optional<double> frozen_xi0;  // coefficient e^{-xi0/2} everywhere
    Closure closure = Closure::automatic;
    bool theorem_mode = true;
    bool remark_mode = false;

    double buffer_fraction = 0.15;
    double monitor_tolerance = 1e-6;

    void validate() const;
    Closure effective_closure() const;
    /// 0.5 / (kappa_max Re rho0(k_max)); kappa_max is the largest explicit coefficient
    double stable_dt() const;
    std::size_t steps() const;
    std::size_t steps_per_sample() const;
    std::vector<double> R_lattice() const;
    std::vector<double> t0_lattice() const;
    std::vector<double> sample_times() const;

    /// Sorted `key = value` lines; the hash covers this text.
    std::string canonical_text() const;
    std::string hash() const;

    /// Reads the grid, forcing, weight, sweep, time, mode and monitor
    /// sections; unknown keys in those sections are errors.
    static ExperimentConfig from_flat(const FlatConfig& c);
};

std::string to_string(Integrator i);
std::string to_string(Closure c);

}  // namespace wavekin
