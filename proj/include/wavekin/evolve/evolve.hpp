#pragma once

#include "wavekin/evolve/config.hpp"
#include "wavekin/kinetic/operators.hpp"
#include "wavekin/spectral/grid.hpp"
#include "wavekin/spectral/semigroup.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace wavekin {

struct EvolveDiagnostics {
    std::size_t steps = 0;
    Closure closure = Closure::periodic;
    std::size_t fft_size = 0;
    double right_buffer_peak = 0.0;  // max over steps of sup_right_buffer |w| / sup |w|
    double left_buffer_peak = 0.0;   // same on the left (monitored only for the periodic closure)
    double left_flatness = 0.0;      // final (max - min) over the left buffer / sup |w|
    double max_growth = 0.0;         // max over steps of sup|w| / int_0^t sup|Q|
};

struct Trajectory {
    UniformLogGrid grid;
    std::vector<double> times;
    std::vector<Field> states;
    std::string provenance;  // config hash
    EvolveDiagnostics diagnostics;

    /// Shared grid, increasing times, finite states, zero initial state.
    void check() const;
};

/// dw/dt = a(xi) P0(w) + Q(t, xi), w(0) = 0, with a = e^{-xi/2} (or the
/// frozen constant). Aborts with NumericalAbort on buffer contamination or
/// when sup|w| exceeds twice the forcing-driven bound int_0^t sup|Q| ds.
Trajectory evolve(const ExperimentConfig& config);
/// Same, with the source sampled by `source` instead of config.forcing.
Trajectory evolve(const ExperimentConfig& config, const SampledForcing& source);

/// The same run read on X = e^xi nodes: v(t, X_j) = w(t, xi_j).
struct RadialTrajectory {
    std::vector<double> times;
    std::vector<RadialFunction> states;
    std::string provenance;
};
RadialTrajectory solve_v_X(const ExperimentConfig& config);
RadialTrajectory as_radial(const Trajectory& t);

/// One JSON header line, then `t v_0 ... v_{n-1}` per stored time (%.17g).
void write_trajectory(const Trajectory& t, std::ostream& out);
Trajectory read_trajectory(std::istream& in);

}  // namespace wavekin
