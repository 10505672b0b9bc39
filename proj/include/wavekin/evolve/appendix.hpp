#pragma once

#include "wavekin/kinetic/cutoff.hpp"
#include "wavekin/spectral/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wavekin {

/// h(s, xi) = sum_j cos(omega_j s + phase_j) b_j(xi), b_j Gaussian bumps.
struct AppendixMember {
    struct Term {
        double omega, phase;
        double center, width, amplitude;
    };
    std::vector<Term> terms;

    double temporal(std::size_t j, double s) const { return std::cos(terms[j].omega * s + terms[j].phase); }
    double spatial(std::size_t j, double xi) const;
    Field at(const UniformLogGrid& g, double s) const;
};

/// Seeded family: three terms per member, centres U(-2, 2), widths
/// U(0.3, 1.2), amplitudes N(0, 1), frequencies U(0, 6), phases U(0, 2 pi).
std::vector<AppendixMember> appendix_family(std::uint64_t seed, std::size_t members);

struct AppendixOptions {
    std::uint64_t seed = 7;
    std::size_t members = 10;
    double xi0 = 0.0;  // kappa0 = e^{-xi0/2}
    bool zero_family = false;
};

struct LemmaRatio {
    std::string name;
    double sigma = 0.0;
    double max_ratio = 0.0;          // on the given grid
    double max_ratio_refined = 0.0;  // on the grid with 2n nodes
    double relative_change = 0.0;
    bool finite = true;
    bool stable = true;  // relative_change <= 0.25
};

struct AppendixReport {
    std::vector<LemmaRatio> ratios;
    double closed_form_error = 0.0;  // max over modes and t of the per-mode integral error
    bool closed_form_passed = false;  // <= 1e-8
    double locality_ratio = 0.0;      // commutator ratio for h far from the cutoff ramps
    double typical_commutator_ratio = 0.0;
    bool passed = false;
};

/// Ratios per sigma:
///  semigroup_t1_hsigma       int_0^1 ||int_0^t T1 e^{-kappa0 T1 (t-s)} h ds||^2_{H^sigma} / int_0^1 ||h||^2_{H^sigma}
///  semigroup_log_inverse     int_0^1 ||int_0^t e^{-kappa0 T1 (t-s)} h ds||^2_{H^sigma} / int_0^1 ||h||^2_{H^sigma_log^-1}
///  cutoff_commutator_kernel  ||B(h)||_{H^sigma} / ||h||_{H^{sigma-1}}, sigma > 1 only, h = h(0, .)
/// with T1 = Re rho0 1_{|k|>1} and
///  B(h)(xi) = int (chi(xi) - chi(zeta)) h(zeta) (1/|e^{xi-zeta} - 1| - 1/(e^{xi-zeta} + 1)) dzeta.
/// Zero-over-zero ratios count as 0.
AppendixReport appendix_inequality_suite(const UniformLogGrid& grid, const std::vector<double>& sigmas,
                                         AppendixOptions opts = {});

/// int_0^t e^{-lambda (t-s)} f(s) ds by composite 8-point Gauss-Legendre.
double damped_integral(double lambda, double t, double (*f)(double, const void*), const void* ctx,
                       std::size_t panels = 8);

/// B(h) on the grid by quadrature in zeta - xi = -+s, s > 0, with h
/// interpolated from its samples and chi evaluated exactly.
Field cutoff_commutator(const Field& h, const CutoffSpec& chi);

}  // namespace wavekin
