#include "wavekin/spectral/grid.hpp"

#include "wavekin/errors.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace wavekin {

UniformLogGrid::UniformLogGrid(double xi_min, double xi_max, std::size_t n)
    : xi_min_(xi_min), xi_max_(xi_max), n_(n)
{
    if (!(std::isfinite(xi_min) && std::isfinite(xi_max) && xi_max > xi_min))
        throw ValidationError("grid: need finite xi_max > xi_min");
    if (n < 2 || (n & (n - 1)) != 0)
        throw ValidationError("grid: n must be a power of two, got " + std::to_string(n));
}

double UniformLogGrid::dk() const
{
    return 2.0 * std::numbers::pi / length();
}

std::vector<double> UniformLogGrid::nodes() const
{
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j)
        x[j] = xi(j);
    return x;
}

std::vector<double> UniformLogGrid::wavenumbers() const
{
    std::vector<double> k(n_);
    for (std::size_t i = 0; i < n_; ++i)
        k[i] = wavenumber(i);
    return k;
}

Field::Field(UniformLogGrid grid) : grid_(grid), values_(grid.n(), 0.0) {}

Field::Field(UniformLogGrid grid, std::vector<double> values) : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.n())
        throw ValidationError("field: length " + std::to_string(values_.size()) + " does not match grid n = " +
                              std::to_string(grid_.n()));
    if (!all_finite())
        throw ValidationError("field: non-finite value");
}

Field& Field::operator+=(const Field& o)
{
    if (!(o.grid_ == grid_))
        throw ValidationError("field: grid mismatch");
    for (std::size_t j = 0; j < values_.size(); ++j)
        values_[j] += o.values_[j];
    return *this;
}

Field& Field::operator-=(const Field& o)
{
    if (!(o.grid_ == grid_))
        throw ValidationError("field: grid mismatch");
    for (std::size_t j = 0; j < values_.size(); ++j)
        values_[j] -= o.values_[j];
    return *this;
}

Field& Field::operator*=(double a)
{
    for (double& v : values_)
        v *= a;
    return *this;
}

double Field::l2_norm() const
{
    double s = 0.0;
    for (double v : values_)
        s += v * v;
    return std::sqrt(s * grid_.spacing());
}

double Field::sup_norm() const
{
    double m = 0.0;
    for (double v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

bool Field::all_finite() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Field operator+(Field a, const Field& b)
{
    return a += b;
}

Field operator-(Field a, const Field& b)
{
    return a -= b;
}

Field operator*(double s, Field a)
{
    return a *= s;
}

Spectrum::Spectrum(UniformLogGrid grid) : grid_(grid), c_(grid.n(), 0.0) {}

Spectrum::Spectrum(UniformLogGrid grid, std::vector<ComplexValue> coefficients)
    : grid_(grid), c_(std::move(coefficients))
{
    if (c_.size() != grid_.n())
        throw ValidationError("spectrum: length does not match grid");
}

ComplexValue Spectrum::at_mode(long m) const
{
    const auto n = static_cast<long>(grid_.n());
    if (m < -n / 2 || m >= n / 2)
        throw ValidationError("spectrum: mode out of range");
    return c_[static_cast<std::size_t>(m < 0 ? m + n : m)];
}

double Spectrum::l2_norm() const
{
    double s = 0.0;
    for (const auto& c : c_)
        s += std::norm(c);
    return std::sqrt(s * grid_.dk());
}

double Spectrum::hermitian_defect() const
{
    const std::size_t n = c_.size();
    double d = 0.0;
    for (std::size_t i = 1; i < n / 2; ++i)
        d = std::max(d, std::abs(c_[n - i] - std::conj(c_[i])));
    return std::max(d, std::abs(c_[0].imag()));
}

}  // namespace wavekin
