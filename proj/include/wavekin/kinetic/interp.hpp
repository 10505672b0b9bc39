#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace wavekin {

/// Six-point Lagrange stencil on a uniform periodic grid, evaluated at a
/// fixed offset (in cells) from every node. Weights depend only on the
/// fractional part, so one stencil serves all nodes.
class ShiftStencil {
public:
    static constexpr std::size_t kOrder = 6;

    explicit ShiftStencil(double offset_cells);

    /// out[j] = w(x_j + offset), periodic wrap
    void apply(std::span<const double> w, std::span<double> out) const;
    double at(std::span<const double> w, std::size_t j) const;

private:
    long base_;
    std::array<double, kOrder> weights_{};
};

/// w(x_j + offset) for all j.
void shift_periodic(std::span<const double> w, double offset_cells, std::span<double> out);

}  // namespace wavekin

namespace wavekin {

/// Six-point Lagrange value of periodic samples at fractional index pos.
double interpolate_periodic(std::span<const double> w, double pos);

}  // namespace wavekin
