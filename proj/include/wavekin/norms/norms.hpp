#pragma once

#include "wavekin/kinetic/cutoff.hpp"
#include "wavekin/kinetic/operators.hpp"
#include "wavekin/spectral/grid.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wavekin {

/// Exponents of ||g||_{theta,rho} = sup X^theta (1+X)^rho |g(X)|.
struct WeightSpec {
    double theta = 0.0;
    double rho = 0.0;

    /// theta >= 0, theta + rho in (0, 3/2)
    void validate_decay_mode() const;
    /// theta in (0, 1/4) (or (0, 1/2) in remark mode), theta + rho in (1/2, 3/2)
    void validate_smoothing_mode(bool remark_mode = false) const;
    double weight(double X) const;
};

/// Dilated interval R * base on the X axis.
struct Window {
    double R = 1.0;
    Interval base = kI3;

    Interval X_range() const { return base.dilated(R); }
    std::pair<double, double> xi_range() const;
};

double weighted_sup_norm(const RadialFunction& v, const WeightSpec& w);

struct TruncationReport {
    std::vector<double> cutoffs;          // n values actually used
    std::vector<double> tail_norms;       // ||g - g_n||_{theta', rho'}
    std::vector<double> inner_side;       // sup over X < 1/n
    std::vector<double> outer_side;       // sup over X > n
    double base_norm = 0.0;               // ||g||_{theta, rho}
    bool monotone = false;
    bool below_threshold = false;         // last tail < 1e-3 base_norm
};

/// ||g - g_n|| for g_n = g 1_{[1/n, n]}; needs theta' > theta and
/// rho' < rho + theta - theta'. Cutoffs beyond the grid's X range are dropped.
TruncationReport truncation_convergence(const RadialFunction& g, const WeightSpec& w, const WeightSpec& w_prime,
                                        const std::vector<double>& n_list);

/// Continuum sup of X^a (1+X)^b over (0, x_hi] (inner) or [x_lo, inf) (outer)
/// for a > 0 > a + b.
double power_tail_sup_inner(double a, double b, double x_hi);
double power_tail_sup_outer(double a, double b, double x_lo);

/// M(v)(-ik) = int X^{-1-ik} v(X) dX. Lattice k uses the FFT
/// (sqrt(2 pi) w^(k)); other k fall back to the direct sum.
std::vector<ComplexValue> mellin(const RadialFunction& v, const std::vector<double>& k);

/// Independent route: four-point Gauss per cell on the local six-point
/// interpolant, no periodic wrap.
std::vector<ComplexValue> mellin_direct(const RadialFunction& v, const std::vector<double>& k);

/// Global: (int (1+k^2)^sigma |w^|^2 dk)^{1/2}. Windowed: H^sigma(log RJ)
/// norm sum_{l<=m} ||w^(l)||^2 + [w^(m)]^2_s with sigma = m + s, sigma in [0, 2).
double m_sigma_norm(const RadialFunction& v, double sigma, std::optional<Window> window = std::nullopt);

/// int int_{(a,b)^2} |f(x) - f(y)|^2 / |x - y|^alpha dx dy for alpha in [1, 3).
/// Over the offset d: Gauss panels of length <= 4 cell away from the
/// diagonal, geometric halving towards d = 0 and an F(d) ~ c d^2 tail.
double difference_double_integral(const std::function<double(double)>& f, double a, double b, double alpha,
                                  double cell);

/// [[v]]^2 = int int_{window^2} |v(X) - v(Y)|^2 / |X - Y| dX dY (squared).
double gagliardo_log_seminorm(const RadialFunction& v, const Window& window);

/// int_{window} |v(X)|^2 dX
double window_l2_squared(const RadialFunction& v, const Window& window);

/// (||w||^2 + int_{|h|<1/3} int |w(xi+h) - w(xi)|^2 / |h| dxi dh)^{1/2}
double h0log_double_integral_norm(const Field& w);

/// N_{R,sigma}[v] via eta_{0,R} v on the native grid (|R^{ik}| = 1).
double n_r_sigma(const RadialFunction& v, double R, double sigma);

struct EquivalenceEntry {
    std::size_t member = 0;
    double R = 1.0;
    double x_side = 0.0;   // scaled X-side combination
    double m_side = 0.0;   // ||v||^2_{M_sigma(RJ)}
    double ratio = 0.0;
};

struct EquivalenceReport {
    double sigma = 0.0;
    std::vector<EquivalenceEntry> entries;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double spread = 0.0;       // max / min over family and R
    double max_r_drift = 0.0;  // max_v max_R |ratio(v,R)/ratio(v,1) - 1|
};

/// Profiles b are given on J = I3 in relative coordinates; member v at
/// scale R is b(X / R). Both sides of the scaled norm equivalence are
/// computed on grid g.
EquivalenceReport norm_equivalence_report(const UniformLogGrid& g,
                                          const std::vector<std::function<double(double)>>& profiles, double sigma,
                                          const std::vector<double>& R_list);

struct LocalLogReport {
    double lhs = 0.0;  // int_I int_I |w(xi)-w(zeta)|^2/|xi-zeta|
    double rhs = 0.0;  // ||chi w||^2_{H^0_log}
    double ratio = 0.0;
};

/// I is an xi-interval on which the cutoff equals 1.
LocalLogReport local_log_bound_check(const Field& w, const CutoffSpec& cutoff, std::pair<double, double> I);

/// Eighth-order central difference in xi.
Field central_derivative(const Field& w);

}  // namespace wavekin
