#pragma once

#include "wavekin/kinetic/cutoff.hpp"
#include "wavekin/spectral/grid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace wavekin {

/// Direct quadrature controls. Panels of Gauss-Legendre nodes cover
/// (0, tail_cut] in the log-offset h; the first split_radius is a panel
/// boundary. tolerance is relative to sup|input| and is checked per node
/// by halving panel_width until two successive results agree.
struct QuadratureSpec {
    double split_radius = 0.5;
    std::size_t panel_order = 8;
    double tail_cut = 40.0;
    double tolerance = 1e-8;
    double panel_width = 0.5;
    int max_refinements = 5;
    /// false: one pass at panel_width, no error control (refinement studies)
    bool adaptive = true;

    void validate() const;
};

/// v(X) sampled at X_j = e^{xi_j}; storage identical to Field.
class RadialFunction {
public:
    explicit RadialFunction(Field samples) : w_(std::move(samples)) {}
    template <class F>
    static RadialFunction sample(const UniformLogGrid& g, F&& v)
    {
        return RadialFunction(Field::sample(g, [&](double xi) { return v(std::exp(xi)); }));
    }

    const UniformLogGrid& grid() const { return w_.grid(); }
    const Field& field() const { return w_; }
    std::span<const double> values() const { return w_.values(); }
    double X(std::size_t j) const { return w_.grid().X(j); }
    double operator[](std::size_t j) const { return w_[j]; }

private:
    Field w_;
};

/// M(X, Y) = X^{-1/2} (1/|X-Y| - 1/(X+Y))
double kernel_M(double X, double Y);
/// K(x, y) = (1/|x^2-y^2| - 1/(x^2+y^2)) y/x
double kernel_K(double x, double y);

struct DirectDiagnostics {
    std::vector<double> error_estimate;  // per node, absolute
    double final_panel_width = 0.0;
    int refinements = 0;
};

/// int (w(xi+h) - w(xi)) kernel(h) dh for a kernel with a 1/|h|
/// singularity, via the even/odd split paired with second and first
/// differences. w is read periodically through six-point interpolation.
Field log_difference_apply(const Field& w, const std::function<double(double)>& kernel, const QuadratureSpec& q,
                           DirectDiagnostics* diag = nullptr);

/// L(v)(X) = int (v(Y) - v(X)) M(X, Y) dY
RadialFunction apply_L_X(const RadialFunction& v, const QuadratureSpec& q, DirectDiagnostics* diag = nullptr);

/// L u(x) = int (u(y) - u(x)) K(x, y) dy, u sampled on a grid in log x
RadialFunction apply_L_sqrt(const RadialFunction& u, const QuadratureSpec& q, DirectDiagnostics* diag = nullptr);

/// P0 w(xi) = 1/2 int (w(xi-h) - w(xi)) G(h) dh. Its multiplier is -rho0,
/// so P w = e^{-xi/2} P0 w.
Field apply_P0_direct(const Field& w, const QuadratureSpec& q, DirectDiagnostics* diag = nullptr);

/// P0 at one node by plain adaptive Gauss-Kronrod on each half line,
/// without the even/odd pairing.
double apply_P0_at_node_adaptive(const Field& w, std::size_t j, double tol);

/// -F^{-1}[rho0 w^]
Field apply_P0_spectral(const Field& w);
/// -e^{-xi/2} F^{-1}[rho0 w^]
Field apply_P_spectral(const Field& w);
std::vector<ComplexValue> apply_P_spectral(const UniformLogGrid& g, std::span<const ComplexValue> w);

/// eta P0(w) - P0(eta w), spectral P0.
Field commutator_apply(const CutoffSpec& eta, const Field& w);

/// ||[eta, P0] w||_{H^sigma} / ||w||_{H^{sigma - rho_bar}}
double commutator_smoothing_ratio(const CutoffSpec& eta, const Field& w, double sigma, double rho_bar);

/// Relative L2 distance between L(v(R .)) and R^{1/2} (L v)(R .) over the
/// inner part of the grid.
double homogeneity_residual(const RadialFunction& v, double R, const QuadratureSpec& q);

/// Indices of the central `fraction` of the grid.
std::pair<std::size_t, std::size_t> inner_range(std::size_t n, double fraction = 0.7);

/// ||a - b|| / ||b|| over the central fraction.
double relative_l2_inner(std::span<const double> a, std::span<const double> b, double fraction = 0.7);

/// max |w| over the outer `fraction` / 2 at each end, relative to sup|w|
double buffer_mass(std::span<const double> w, double fraction = 0.15);

}  // namespace wavekin
