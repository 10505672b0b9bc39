#pragma once

#include "wavekin/specfun/digamma.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace wavekin {

/// Uniform periodic grid in xi = log X with its dual wavenumber lattice
/// k_m = 2 pi m / (xi_max - xi_min), m in [-n/2, n/2).
/// Spectral storage uses FFT order: index i holds mode i for i < n/2 and
/// mode i - n otherwise.
class UniformLogGrid {
public:
    UniformLogGrid(double xi_min, double xi_max, std::size_t n);

    double xi_min() const { return xi_min_; }
    double xi_max() const { return xi_max_; }
    std::size_t n() const { return n_; }
    double spacing() const { return (xi_max_ - xi_min_) / static_cast<double>(n_); }
    double length() const { return xi_max_ - xi_min_; }
    /// Lattice measure 2 pi / L used by every Fourier-side quadrature.
    double dk() const;

    double xi(std::size_t j) const { return xi_min_ + spacing() * static_cast<double>(j); }
    double X(std::size_t j) const { return std::exp(xi(j)); }
    long mode(std::size_t i) const
    {
        const auto half = static_cast<long>(n_ / 2);
        const auto ii = static_cast<long>(i);
        return ii < half ? ii : ii - static_cast<long>(n_);
    }
    double wavenumber(std::size_t i) const { return dk() * static_cast<double>(mode(i)); }
    std::size_t nyquist_index() const { return n_ / 2; }
    double k_max() const { return dk() * static_cast<double>(n_ / 2); }

    std::vector<double> nodes() const;
    std::vector<double> wavenumbers() const;

    /// Same geometry translated by dxi.
    UniformLogGrid shifted(double dxi) const { return {xi_min_ + dxi, xi_max_ + dxi, n_}; }

    bool operator==(const UniformLogGrid&) const = default;

private:
    double xi_min_;
    double xi_max_;
    std::size_t n_;
};

/// Real samples w(xi_j) on a grid.
class Field {
public:
    explicit Field(UniformLogGrid grid);
    Field(UniformLogGrid grid, std::vector<double> values);
    template <class F>
    static Field sample(const UniformLogGrid& grid, F&& f)
    {
        std::vector<double> v(grid.n());
        for (std::size_t j = 0; j < grid.n(); ++j)
            v[j] = f(grid.xi(j));
        return Field(grid, std::move(v));
    }

    const UniformLogGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    double& operator[](std::size_t j) { return values_[j]; }

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);

    /// sqrt(dxi sum w_j^2)
    double l2_norm() const;
    double sup_norm() const;
    bool all_finite() const;

private:
    UniformLogGrid grid_;
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Fourier coefficients of a Field, storage in FFT order.
class Spectrum {
public:
    explicit Spectrum(UniformLogGrid grid);
    Spectrum(UniformLogGrid grid, std::vector<ComplexValue> coefficients);

    const UniformLogGrid& grid() const { return grid_; }
    std::size_t size() const { return c_.size(); }
    std::span<const ComplexValue> coefficients() const { return c_; }
    std::span<ComplexValue> coefficients() { return c_; }
    ComplexValue operator[](std::size_t i) const { return c_[i]; }
    ComplexValue& operator[](std::size_t i) { return c_[i]; }
    /// Coefficient of mode m in [-n/2, n/2).
    ComplexValue at_mode(long m) const;

    /// sqrt(sum |c|^2 dk)
    double l2_norm() const;
    /// max |c_{-m} - conj c_m| over paired modes
    double hermitian_defect() const;

private:
    UniformLogGrid grid_;
    std::vector<ComplexValue> c_;
};

}  // namespace wavekin
