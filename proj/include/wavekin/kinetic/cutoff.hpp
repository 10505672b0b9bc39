#pragma once

#include "wavekin/spectral/grid.hpp"

namespace wavekin {

/// Open interval (a, b) on the X axis.
struct Interval {
    double a;
    double b;
    bool contains(double x) const { return x > a && x < b; }
    Interval dilated(double R) const { return {R * a, R * b}; }
};

inline constexpr Interval kI1{1.0 / 8.0, 4.0};
inline constexpr Interval kI2{0.5, 2.0};
inline constexpr Interval kI3{5.0 / 8.0, 11.0 / 8.0};
inline constexpr Interval kI4{3.0 / 4.0, 5.0 / 4.0};

/// 0 for t <= 0, 1 for t >= 1, C^2 quintic in between.
double smoothstep5(double t);

/// Smooth cutoffs, all evaluated at xi = log X:
///  chi0        1 on log I3, 0 outside log I2, ramps linear in xi
///  eta0        1 on I3, 0 outside I2, ramps linear in X
///  eta0_R      eta0(X / R)
///  smooth_bump 1 on |xi - center| <= inner, 0 for |xi - center| >= outer
/// Ramps fill the whole gap between the inner and outer sets.
class CutoffSpec {
public:
    enum class Kind { chi0, eta0, eta0_R, smooth_bump };

    static CutoffSpec chi0() { return CutoffSpec(Kind::chi0, 1.0, 0.0, 0.0, 0.0); }
    static CutoffSpec eta0() { return CutoffSpec(Kind::eta0, 1.0, 0.0, 0.0, 0.0); }
    static CutoffSpec eta0_R(double R);
    static CutoffSpec smooth_bump(double center, double inner, double outer);

    Kind kind() const { return kind_; }
    double operator()(double xi) const;
    Field sample(const UniformLogGrid& g) const;
    /// xi-interval outside of which the cutoff vanishes
    std::pair<double, double> support() const;
    /// xi-interval on which the cutoff equals 1
    std::pair<double, double> plateau() const;

private:
    CutoffSpec(Kind k, double R, double c, double in, double out) : kind_(k), R_(R), center_(c), inner_(in), outer_(out)
    {
    }
    Kind kind_;
    double R_;
    double center_;
    double inner_;
    double outer_;
};

/// Indicator of (a, b) in xi with C^2 ramps of the given width centred on
/// the endpoints; the spectral surrogate of a sharp indicator.
double ramped_indicator(double xi, double a, double b, double width);

}  // namespace wavekin
