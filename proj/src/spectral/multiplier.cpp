#include "wavekin/spectral/multiplier.hpp"

#include "wavekin/errors.hpp"
#include "wavekin/spectral/fourier.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace wavekin {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

ComplexValue multiplier_value(const MultiplierKind& kind, double k)
{
    return std::visit(
        overloaded{
            [k](const multiplier::T1&) -> ComplexValue { return std::abs(k) > 1.0 ? rho0(k).real() : 0.0; },
            [k](const multiplier::T2&) -> ComplexValue { return std::abs(k) <= 1.0 ? 1.0 : 0.0; },
            [k](const multiplier::Sobolev& m) -> ComplexValue { return std::pow(1.0 + k * k, 0.5 * m.sigma); },
            [k](const multiplier::SobolevLog& m) -> ComplexValue {
                return std::pow(1.0 + k * k, 0.5 * m.sigma) *
                       std::pow(1.0 + std::log1p(std::abs(k)), 0.5 * m.log_power);
            },
            [k](const multiplier::Semigroup& m) -> ComplexValue {
                if (m.t == 0.0)
                    return 1.0;
                return std::exp(-m.t * m.kappa * rho0(k));
            },
            [k](const multiplier::Custom& m) -> ComplexValue { return m.fn(k); },
        },
        kind);
}

std::shared_ptr<const SymbolTable> lattice_symbol(const UniformLogGrid& grid)
{
    static std::mutex mutex;
    static std::map<std::pair<double, std::size_t>, std::shared_ptr<const SymbolTable>> cache;
    std::lock_guard lock(mutex);
    auto key = std::pair{grid.length(), grid.n()};
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto table = std::make_shared<const SymbolTable>(grid.wavenumbers());
    cache.emplace(key, table);
    return table;
}

Spectrum apply_multiplier(Spectrum s, const MultiplierKind& kind)
{
    const UniformLogGrid& g = s.grid();
    const std::size_t ny = g.nyquist_index();
    const auto* semi = std::get_if<multiplier::Semigroup>(&kind);
    if (semi && semi->t == 0.0)
        return s;
    std::shared_ptr<const SymbolTable> table;
    if (semi || std::holds_alternative<multiplier::T1>(kind))
        table = lattice_symbol(g);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double k = g.wavenumber(i);
        ComplexValue mu;
        if (i == ny && semi) {
            // average the generator, not the exponential, so S(t)S(s) = S(t+s)
            mu = std::exp(-semi->t * semi->kappa * (*table)[i].real());
        } else if (i == ny) {
            mu = 0.5 * (multiplier_value(kind, k) + multiplier_value(kind, -k));
        } else if (semi) {
            mu = std::exp(-semi->t * semi->kappa * (*table)[i]);
        } else if (table) {
            mu = std::abs(k) > 1.0 ? (*table)[i].real() : 0.0;
        } else {
            mu = multiplier_value(kind, k);
        }
        s[i] *= mu;
    }
    return s;
}

double sobolev_norm(const Spectrum& s, double sigma, int log_power)
{
    if (!(sigma >= -4.0 && sigma <= 4.0))
        throw ValidationError("sobolev_norm: sigma outside [-4, 4]");
    if (log_power < -1 || log_power > 1)
        throw ValidationError("sobolev_norm: log_power must be -1, 0 or 1");
    const UniformLogGrid& g = s.grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double k = g.wavenumber(i);
        double w = std::pow(1.0 + k * k, sigma);
        if (log_power != 0)
            w *= std::pow(1.0 + std::log1p(std::abs(k)), log_power);
        acc += std::norm(s[i]) * w;
    }
    return std::sqrt(acc * g.dk());
}

double sobolev_norm(const Field& f, double sigma, int log_power)
{
    return sobolev_norm(forward(f), sigma, log_power);
}

}  // namespace wavekin
