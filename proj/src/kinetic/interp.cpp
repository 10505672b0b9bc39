#include "wavekin/kinetic/interp.hpp"

#include <cmath>

namespace wavekin {

ShiftStencil::ShiftStencil(double offset_cells)
{
    const double fl = std::floor(offset_cells);
    const double t = offset_cells - fl;
    base_ = static_cast<long>(fl) - 2;
    // nodes at -2..3 relative to floor
    for (std::size_t i = 0; i < kOrder; ++i) {
        const double xi = static_cast<double>(i) - 2.0;
        double num = 1.0, den = 1.0;
        for (std::size_t m = 0; m < kOrder; ++m) {
            if (m == i)
                continue;
            const double xm = static_cast<double>(m) - 2.0;
            num *= t - xm;
            den *= xi - xm;
        }
        weights_[i] = num / den;
    }
}

double ShiftStencil::at(std::span<const double> w, std::size_t j) const
{
    const auto n = static_cast<long>(w.size());
    long idx = (static_cast<long>(j) + base_) % n;
    if (idx < 0)
        idx += n;
    double s = 0.0;
    for (std::size_t i = 0; i < kOrder; ++i) {
        s += weights_[i] * w[static_cast<std::size_t>(idx)];
        if (++idx == n)
            idx = 0;
    }
    return s;
}

void ShiftStencil::apply(std::span<const double> w, std::span<double> out) const
{
    const std::size_t n = w.size();
    const auto nl = static_cast<long>(n);
    long b = base_ % nl;
    if (b < 0)
        b += nl;
    std::size_t idx = static_cast<std::size_t>(b);
    for (std::size_t j = 0; j < n; ++j) {
        if (idx + kOrder <= n) {
            const double* p = w.data() + idx;
            out[j] = weights_[0] * p[0] + weights_[1] * p[1] + weights_[2] * p[2] + weights_[3] * p[3] +
                     weights_[4] * p[4] + weights_[5] * p[5];
        } else {
            out[j] = at(w, j);
        }
        if (++idx == n)
            idx = 0;
    }
}

void shift_periodic(std::span<const double> w, double offset_cells, std::span<double> out)
{
    ShiftStencil(offset_cells).apply(w, out);
}

}  // namespace wavekin

namespace wavekin {

double interpolate_periodic(std::span<const double> w, double pos)
{
    return ShiftStencil(pos).at(w, 0);
}

}  // namespace wavekin
