#pragma once

#include "wavekin/spectral/grid.hpp"

#include <span>
#include <vector>

namespace wavekin {

// Unitary convention with the grid offset folded into the phase:
//   w^(k_m) = dxi / sqrt(2 pi) * e^{-i k_m xi_min} * sum_j w_j e^{-2 pi i m j / n}
// so that sum |w^|^2 dk = dxi sum |w|^2 exactly and w^ approximates
// (2 pi)^{-1/2} int e^{-i k xi} w(xi) dxi.

Spectrum forward(const Field& f);
Field inverse(const Spectrum& s);

std::vector<ComplexValue> forward_complex(const UniformLogGrid& g, std::span<const ComplexValue> values);
std::vector<ComplexValue> inverse_complex(const UniformLogGrid& g, std::span<const ComplexValue> coefficients);

/// Plain unnormalized DFT, sign -1 (forward) or +1 (backward), any n.
void dft(std::span<const ComplexValue> in, std::span<ComplexValue> out, int sign);

}  // namespace wavekin
