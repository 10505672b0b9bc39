#pragma once

#include "wavekin/evolve/evolve.hpp"

#include <string>
#include <vector>

namespace wavekin {

/// r1(t) = ||v(t)||_{theta,rho} / (t sup_{s<=t} ||nu(s)||_{theta,rho})
/// r2(t) = sup_{X>t^2} |v| X^{3/2} / (t^{4-2theta} (1+t)^{-2rho} sup_{s<=t} ||nu(s)||_{theta,rho})
/// v is read on the inner range (both buffers excluded).
struct DecayReport {
    std::vector<double> times;  // t > 0 samples
    std::vector<double> r1;
    std::vector<double> r2;
    double forcing_sup = 0.0;  // sup over the run of ||nu(s)||_{theta,rho}
    double max_r1 = 0.0;
    double max_r2 = 0.0;
    // log-log slope over the earliest eighth of the run; >= -0.1 counts as bounded
    double r1_small_t_slope = 0.0;
    double r2_small_t_slope = 0.0;
    bool r1_bounded = true;
    bool r2_bounded = true;
};

DecayReport weighted_decay_check(const Trajectory& traj, const ForcingSpec& forcing, const WeightSpec& w,
                                 double buffer_fraction);

struct SweepRow {
    double sigma = 0.0;
    double R = 1.0;
    double t0 = 0.0;
    std::string lhs_name;
    double lhs = 0.0;
    std::string rhs_name;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// Binned Fourier amplitude of the windowed solution and forcing over
/// [k_max/8, k_max/2], fitted as log10 amplitude against log10 k.
struct TailSlopeReport {
    std::vector<double> times;
    std::vector<double> forcing_slope;
    std::vector<double> solution_slope;
    std::vector<double> improvement_decades;  // (forcing_slope - solution_slope) log10(4)
    double min_improvement = 0.0;
    double final_improvement = 0.0;
    bool passed = false;  // min_improvement >= 0.5
};

TailSlopeReport spectral_tail_report(const Trajectory& traj, const ForcingSpec& forcing);

struct SweepReport {
    std::vector<SweepRow> rows;
    double C_hat = 0.0;  // lattice supremum of lhs / rhs
    std::vector<std::pair<double, double>> C_hat_per_sigma;
    bool all_finite = true;
    double forcing_weighted_integral = 0.0;  // int_0^T (1 + t^{-4 theta}) ||nu||^2 dt
    TailSlopeReport tail;
};

/// Builds the table from an existing trajectory of the same config.
SweepReport smoothing_sweep(const ExperimentConfig& config, const Trajectory& traj);
SweepReport smoothing_sweep(const ExperimentConfig& config);

/// int_0^T (1 + t^{-4 theta}) ||nu(t)||^2_{theta,rho} dt on t_j = T (j/N)^2:
/// midpoint norm times the exact weight integral per cell. Infinite for
/// theta >= 1/4.
double forcing_weighted_integral(const ForcingSpec& forcing, const UniformLogGrid& g, const WeightSpec& w,
                                 double T, std::size_t cells = 256);

/// int_a^b of the piecewise-linear interpolant of (t_i, f_i).
double trapezoid_window(const std::vector<double>& t, const std::vector<double>& f, double a, double b);

/// The run at scale R: grid shifted by -log R, times divided by sqrt R,
/// forcing scaled. Its sample i on node j should reproduce the base run.
ExperimentConfig scaled_config(const ExperimentConfig& base, double R);

struct ScalingReport {
    std::vector<double> R;
    std::vector<double> max_relative_error;  // inner range, L^2 over nodes, max over samples
    bool passed = false;                      // all <= 1e-4
};

ScalingReport scaling_check(const ExperimentConfig& base, const std::vector<double>& R_list);

}  // namespace wavekin
