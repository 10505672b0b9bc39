#pragma once

#include "wavekin/specfun/symbol.hpp"
#include "wavekin/spectral/grid.hpp"

#include <functional>
#include <memory>
#include <variant>

namespace wavekin {

namespace multiplier {
/// Re rho0(k) 1_{|k|>1}
struct T1 {};
/// 1_{|k|<=1}
struct T2 {};
/// (1+k^2)^{sigma/2}
struct Sobolev {
    double sigma;
};
/// (1+k^2)^{sigma/2} (1+log(1+|k|))^{p/2}, p = +1 or -1
struct SobolevLog {
    double sigma;
    int log_power;
};
/// exp(-t kappa rho0(k))
struct Semigroup {
    double t;
    double kappa;
};
struct Custom {
    std::function<ComplexValue(double)> fn;
};
}  // namespace multiplier

using MultiplierKind = std::variant<multiplier::T1, multiplier::T2, multiplier::Sobolev, multiplier::SobolevLog,
                                    multiplier::Semigroup, multiplier::Custom>;

ComplexValue multiplier_value(const MultiplierKind& kind, double k);

/// rho0 on the grid's lattice, FFT order; cached per (L, n), shared.
std::shared_ptr<const SymbolTable> lattice_symbol(const UniformLogGrid& grid);

/// Coefficient-wise product. The Nyquist mode aliases k_N and -k_N, so it
/// gets (mu(k_N) + mu(-k_N))/2 and real fields stay real.
Spectrum apply_multiplier(Spectrum s, const MultiplierKind& kind);

/// (int |w^|^2 (1+k^2)^sigma (1+log(1+|k|))^p dk)^{1/2} on the lattice.
double sobolev_norm(const Field& f, double sigma, int log_power);
double sobolev_norm(const Spectrum& s, double sigma, int log_power);

}  // namespace wavekin
