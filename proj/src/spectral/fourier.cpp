#include "wavekin/spectral/fourier.hpp"

#include "wavekin/errors.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace wavekin {
namespace {

// FFTW plans are created once per (n, sign) and executed with the new-array
// interface, which is thread safe. Planning itself is serialized.
class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign)
    {
        std::lock_guard lock(mutex_);
        auto it = plans_.find({n, sign});
        if (it != plans_.end())
            return it->second;
        std::vector<fftw_complex> a(n), b(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), a.data(), b.data(), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(std::pair{n, sign}, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plans()
{
    static PlanCache cache;
    return cache;
}

}  // namespace

void dft(std::span<const ComplexValue> in, std::span<ComplexValue> out, int sign)
{
    if (in.size() != out.size())
        throw ValidationError("dft: length mismatch");
    const fftw_plan p = plans().get(in.size(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    // FFTW never writes its input in out-of-place complex transforms
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<ComplexValue*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    if (in.data() == out.data()) {
        std::vector<ComplexValue> tmp(in.begin(), in.end());
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()), dst);
        return;
    }
    fftw_execute_dft(p, src, dst);
}

std::vector<ComplexValue> forward_complex(const UniformLogGrid& g, std::span<const ComplexValue> values)
{
    if (values.size() != g.n())
        throw ValidationError("forward: length mismatch");
    std::vector<ComplexValue> out(g.n());
    dft(values, out, -1);
    const double scale = g.spacing() / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < g.n(); ++i)
        out[i] *= scale * std::polar(1.0, -g.wavenumber(i) * g.xi_min());
    return out;
}

std::vector<ComplexValue> inverse_complex(const UniformLogGrid& g, std::span<const ComplexValue> coefficients)
{
    if (coefficients.size() != g.n())
        throw ValidationError("inverse: length mismatch");
    std::vector<ComplexValue> in(g.n());
    const double scale = std::sqrt(2.0 * std::numbers::pi) / (g.spacing() * static_cast<double>(g.n()));
    for (std::size_t i = 0; i < g.n(); ++i)
        in[i] = coefficients[i] * scale * std::polar(1.0, g.wavenumber(i) * g.xi_min());
    std::vector<ComplexValue> out(g.n());
    dft(in, out, +1);
    return out;
}

Spectrum forward(const Field& f)
{
    std::vector<ComplexValue> v(f.values().begin(), f.values().end());
    return Spectrum(f.grid(), forward_complex(f.grid(), v));
}

Field inverse(const Spectrum& s)
{
    const auto c = inverse_complex(s.grid(), s.coefficients());
    std::vector<double> v(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
        v[j] = c[j].real();
    return Field(s.grid(), std::move(v));
}

}  // namespace wavekin
