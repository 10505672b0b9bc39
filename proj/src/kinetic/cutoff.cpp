#include "wavekin/kinetic/cutoff.hpp"

#include "wavekin/errors.hpp"

#include <cmath>

namespace wavekin {

double smoothstep5(double t)
{
    if (t <= 0.0)
        return 0.0;
    if (t >= 1.0)
        return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

namespace {

double trapezoid(double x, double outer_lo, double inner_lo, double inner_hi, double outer_hi)
{
    if (x <= outer_lo || x >= outer_hi)
        return 0.0;
    if (x < inner_lo)
        return smoothstep5((x - outer_lo) / (inner_lo - outer_lo));
    if (x > inner_hi)
        return smoothstep5((outer_hi - x) / (outer_hi - inner_hi));
    return 1.0;
}

}  // namespace

CutoffSpec CutoffSpec::eta0_R(double R)
{
    if (!(R > 0.0))
        throw ValidationError("eta0_R: R must be positive");
    return CutoffSpec(Kind::eta0_R, R, 0.0, 0.0, 0.0);
}

CutoffSpec CutoffSpec::smooth_bump(double center, double inner, double outer)
{
    if (!(inner >= 0.0 && outer > inner))
        throw ValidationError("smooth_bump: need 0 <= inner < outer");
    return CutoffSpec(Kind::smooth_bump, 1.0, center, inner, outer);
}

double CutoffSpec::operator()(double xi) const
{
    switch (kind_) {
    case Kind::chi0:
        return trapezoid(xi, std::log(kI2.a), std::log(kI3.a), std::log(kI3.b), std::log(kI2.b));
    case Kind::eta0:
        return trapezoid(std::exp(xi), kI2.a, kI3.a, kI3.b, kI2.b);
    case Kind::eta0_R:
        return trapezoid(std::exp(xi) / R_, kI2.a, kI3.a, kI3.b, kI2.b);
    case Kind::smooth_bump:
        return trapezoid(xi, center_ - outer_, center_ - inner_, center_ + inner_, center_ + outer_);
    }
    return 0.0;
}

Field CutoffSpec::sample(const UniformLogGrid& g) const
{
    return Field::sample(g, [this](double xi) { return (*this)(xi); });
}

std::pair<double, double> CutoffSpec::support() const
{
    switch (kind_) {
    case Kind::chi0:
    case Kind::eta0:
        return {std::log(kI2.a), std::log(kI2.b)};
    case Kind::eta0_R:
        return {std::log(R_ * kI2.a), std::log(R_ * kI2.b)};
    case Kind::smooth_bump:
        return {center_ - outer_, center_ + outer_};
    }
    return {0.0, 0.0};
}

std::pair<double, double> CutoffSpec::plateau() const
{
    switch (kind_) {
    case Kind::chi0:
    case Kind::eta0:
        return {std::log(kI3.a), std::log(kI3.b)};
    case Kind::eta0_R:
        return {std::log(R_ * kI3.a), std::log(R_ * kI3.b)};
    case Kind::smooth_bump:
        return {center_ - inner_, center_ + inner_};
    }
    return {0.0, 0.0};
}

double ramped_indicator(double xi, double a, double b, double width)
{
    const double h = 0.5 * width;
    return trapezoid(xi, a - h, a + h, b - h, b + h);
}

}  // namespace wavekin
