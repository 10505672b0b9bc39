#include "wavekin/evolve/evolve.hpp"

#include "wavekin/errors.hpp"
#include "wavekin/spectral/fourier.hpp"
#include "wavekin/spectral/multiplier.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace wavekin {

namespace {

/// Applies Fourier multipliers to fields on the physical grid, padding with
/// the end values for the constant-extension closure.
class SpectralWorkspace {
public:
    SpectralWorkspace(const UniformLogGrid& g, Closure closure) : n_(g.n())
    {
        std::size_t size = n_;
        if (closure == Closure::constant_extension) {
            // the periodic seam sits >= 25 xi-units from both ends
            const auto pad = static_cast<std::size_t>(std::ceil(25.0 / g.spacing()));
            while (size < n_ + 2 * pad)
                size *= 2;
        }
        size_ = size;
        left_ = (size_ - n_) / 2;
        padded_ = UniformLogGrid(g.xi_min() - g.spacing() * static_cast<double>(left_),
                                 g.xi_min() + g.spacing() * static_cast<double>(size_ - left_), size_);
        symbol_ = lattice_symbol(padded_);
        in_.resize(size_);
        out_.resize(size_);
    }

    std::size_t size() const { return size_; }
    const UniformLogGrid& padded() const { return padded_; }

    /// Multiplier per FFT index with the Nyquist entry made real through `nyquist`.
    template <class F, class G>
    std::vector<ComplexValue> table(F&& of_rho, G&& nyquist) const
    {
        std::vector<ComplexValue> m(size_);
        const std::size_t ny = padded_.nyquist_index();
        for (std::size_t i = 0; i < size_; ++i)
            m[i] = (i == ny ? nyquist((*symbol_)[i].real()) : of_rho((*symbol_)[i])) / static_cast<double>(size_);
        return m;
    }

    void apply(std::span<const double> w, const std::vector<ComplexValue>& m, std::span<double> out)
    {
        for (std::size_t i = 0; i < left_; ++i)
            in_[i] = w.front();
        for (std::size_t j = 0; j < n_; ++j)
            in_[left_ + j] = w[j];
        for (std::size_t i = left_ + n_; i < size_; ++i)
            in_[i] = w.back();
        dft(in_, out_, -1);
        for (std::size_t i = 0; i < size_; ++i)
            out_[i] *= m[i];
        dft(out_, in_, +1);
        for (std::size_t j = 0; j < n_; ++j)
            out[j] = in_[left_ + j].real();
    }

private:
    std::size_t n_;
    std::size_t size_ = 0;
    std::size_t left_ = 0;
    UniformLogGrid padded_{0.0, 1.0, 16};
    std::shared_ptr<const SymbolTable> symbol_;
    std::vector<ComplexValue> in_;
    std::vector<ComplexValue> out_;
};

void axpy(std::vector<double>& y, double a, const std::vector<double>& x)
{
    for (std::size_t j = 0; j < y.size(); ++j)
        y[j] += a * x[j];
}

double sup_abs(std::span<const double> v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

class Stepper {
public:
    Stepper(const ExperimentConfig& c, SampledForcing source)
        : config_(c), source_(std::move(source)), grid_(c.grid.make()), closure_(c.effective_closure()), work_(grid_, closure_), n_(grid_.n())
    {
        coef_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j)
            coef_[j] = c.frozen_xi0 ? std::exp(-*c.frozen_xi0 / 2.0) : std::exp(-grid_.xi(j) / 2.0);
        minus_rho_ = work_.table([](ComplexValue r) { return -r; }, [](double re) { return ComplexValue(-re); });
        if (c.integrator == Integrator::imex_frozen) {
            kbar_ = 0.0;
            for (double a : coef_)
                kbar_ += a / static_cast<double>(n_);
            if (c.frozen_xi0)
                kbar_ = coef_.front();
            for (double& a : coef_)
                a -= kbar_;
            const double dt = c.dt, kb = kbar_;
            half_ = work_.table([&](ComplexValue r) { return std::exp(-0.5 * dt * kb * r); },
                                [&](double re) { return ComplexValue(std::exp(-0.5 * dt * kb * re)); });
            full_ = work_.table([&](ComplexValue r) { return std::exp(-dt * kb * r); },
                                [&](double re) { return ComplexValue(std::exp(-dt * kb * re)); });
            explicit_part_ = std::any_of(coef_.begin(), coef_.end(), [](double a) { return a != 0.0; });
        }
        tmp_.resize(n_);
    }

    std::size_t fft_size() const { return work_.size(); }

    Field forcing(double t)
    {
        if (source_.time_constant) {
            if (!constant_q_)
                constant_q_ = source_.at(0.0);
            return *constant_q_;
        }
        return source_.at(t);
    }

    /// a(xi) P0(w) + Q, where a is the explicit coefficient.
    void rhs(const std::vector<double>& w, const Field& q, std::vector<double>& out, bool with_operator = true)
    {
        if (with_operator) {
            work_.apply(w, minus_rho_, out);
            for (std::size_t j = 0; j < n_; ++j)
                out[j] = coef_[j] * out[j] + q[j];
        } else {
            for (std::size_t j = 0; j < n_; ++j)
                out[j] = q[j];
        }
    }

    void step(std::vector<double>& w, double t)
    {
        const double dt = config_.dt;
        const Field q0 = forcing(t), qh = forcing(t + 0.5 * dt), q1 = forcing(t + dt);
        if (config_.integrator == Integrator::rk4) {
            std::vector<double> k1(n_), k2(n_), k3(n_), k4(n_), y(w);
            rhs(w, q0, k1);
            y = w;
            axpy(y, 0.5 * dt, k1);
            rhs(y, qh, k2);
            y = w;
            axpy(y, 0.5 * dt, k2);
            rhs(y, qh, k3);
            y = w;
            axpy(y, dt, k3);
            rhs(y, q1, k4);
            for (std::size_t j = 0; j < n_; ++j)
                w[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            return;
        }
        // integrating-factor RK4 on the exact exponential of the mean coefficient
        const bool op = explicit_part_;
        std::vector<double> k1(n_), k2(n_), k3(n_), k4(n_), y(n_), ew(n_), hw(n_);
        work_.apply(w, half_, hw);
        work_.apply(w, full_, ew);
        rhs(w, q0, k1, op);
        y = w;
        axpy(y, 0.5 * dt, k1);
        work_.apply(y, half_, tmp_);
        rhs(tmp_, qh, k2, op);
        y = hw;
        axpy(y, 0.5 * dt, k2);
        rhs(y, qh, k3, op);
        work_.apply(k3, half_, tmp_);
        y = ew;
        axpy(y, dt, tmp_);
        rhs(y, q1, k4, op);
        std::vector<double> e1(n_), e23(n_), s23(k2);
        axpy(s23, 1.0, k3);
        work_.apply(k1, full_, e1);
        work_.apply(s23, half_, e23);
        for (std::size_t j = 0; j < n_; ++j)
            w[j] = ew[j] + dt / 6.0 * (e1[j] + 2.0 * e23[j] + k4[j]);
    }

private:
    const ExperimentConfig& config_;
    SampledForcing source_;
    UniformLogGrid grid_;
    Closure closure_;
    SpectralWorkspace work_;
    std::size_t n_;
    std::vector<double> coef_;
    std::vector<ComplexValue> minus_rho_;
    std::vector<ComplexValue> half_;
    std::vector<ComplexValue> full_;
    double kbar_ = 0.0;
    bool explicit_part_ = true;
    std::optional<Field> constant_q_;
    std::vector<double> tmp_;
};

}  // namespace

void Trajectory::check() const
{
    if (times.size() != states.size() || times.empty())
        throw ValidationError("trajectory: times and states must be non-empty and of equal length");
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (!(states[i].grid() == grid))
            throw ValidationError("trajectory: states must share one grid");
        if (!states[i].all_finite())
            throw ValidationError("trajectory: non-finite state");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw ValidationError("trajectory: times must increase");
    }
    if (times.front() != 0.0 || states.front().sup_norm() != 0.0)
        throw ValidationError("trajectory: the initial state must be zero at t = 0");
}

Trajectory evolve(const ExperimentConfig& config)
{
    const UniformLogGrid grid = config.grid.make();
    const ForcingSpec f = config.forcing;
    return evolve(config, SampledForcing{[f, grid](double t) { return f.sample(grid, t); }, f.time_constant()});
}

Trajectory evolve(const ExperimentConfig& config, const SampledForcing& source)
{
    config.validate();
    const UniformLogGrid grid = config.grid.make();
    Stepper stepper(config, source);
    const std::size_t n = grid.n();
    const auto buffer = static_cast<std::size_t>(std::ceil(config.buffer_fraction * static_cast<double>(n)));
    const Closure closure = config.effective_closure();

    Trajectory traj{grid, {}, {}, config.hash(), {}};
    traj.diagnostics.closure = closure;
    traj.diagnostics.fft_size = stepper.fft_size();

    std::vector<double> w(n, 0.0);
    traj.times.push_back(0.0);
    traj.states.emplace_back(grid);
    const std::size_t steps = config.steps(), per = config.steps_per_sample();
    double forcing_bound = 0.0;
    double q_prev = stepper.forcing(0.0).sup_norm();
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = config.dt * static_cast<double>(s);
        stepper.step(w, t);
        const double t1 = config.dt * static_cast<double>(s + 1);
        const double q_next = stepper.forcing(t1).sup_norm();
        const double q_mid = stepper.forcing(t + 0.5 * config.dt).sup_norm();
        forcing_bound += config.dt / 6.0 * (q_prev + 4.0 * q_mid + q_next);
        q_prev = q_next;

        const double sup = sup_abs(w);
        if (!std::isfinite(sup))
            throw NumericalAbort("evolve: non-finite state at t = " + format_real(t1));
        if (sup > 0.0) {
            const std::span<const double> all(w);
            const double right = sup_abs(all.subspan(n - buffer)) / sup;
            const double left = sup_abs(all.first(buffer)) / sup;
            auto& d = traj.diagnostics;
            d.right_buffer_peak = std::max(d.right_buffer_peak, right);
            d.left_buffer_peak = std::max(d.left_buffer_peak, left);
            if (right > config.monitor_tolerance)
                throw NumericalAbort("evolve: mass reached the right buffer at t = " + format_real(t1) +
                                     " (relative " + format_real(right) + ")");
            if (closure == Closure::periodic && left > config.monitor_tolerance)
                throw NumericalAbort("evolve: mass reached the left buffer at t = " + format_real(t1) +
                                     " (relative " + format_real(left) + ")");
            const double growth = forcing_bound > 0.0 ? sup / forcing_bound : INFINITY;
            d.max_growth = std::max(d.max_growth, growth);
            if (growth > 2.0)
                throw NumericalAbort("evolve: instability, sup|w| = " + format_real(sup) +
                                     " exceeds twice the forcing bound at t = " + format_real(t1));
        }
        if ((s + 1) % per == 0) {
            traj.times.push_back(t1);
            traj.states.emplace_back(grid, w);
        }
    }
    traj.diagnostics.steps = steps;
    const double sup = sup_abs(w);
    if (sup > 0.0) {
        const auto [lo, hi] = std::minmax_element(w.begin(), w.begin() + static_cast<long>(buffer));
        traj.diagnostics.left_flatness = (*hi - *lo) / sup;
    }
    return traj;
}

RadialTrajectory as_radial(const Trajectory& t)
{
    RadialTrajectory r{t.times, {}, t.provenance};
    r.states.reserve(t.states.size());
    for (const Field& f : t.states)
        r.states.emplace_back(f);
    return r;
}

RadialTrajectory solve_v_X(const ExperimentConfig& config)
{
    return as_radial(evolve(config));
}

void write_trajectory(const Trajectory& t, std::ostream& out)
{
    nlohmann::ordered_json header;
    header["format"] = "wavekin-trajectory";
    header["version"] = 1;
    header["grid"] = {{"xi_min", t.grid.xi_min()}, {"xi_max", t.grid.xi_max()}, {"n", t.grid.n()}};
    header["times"] = t.times;
    header["config_hash"] = t.provenance;
    out << header.dump() << "\n";
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        out << format_real(t.times[i]);
        for (double v : t.states[i].values())
            out << ' ' << format_real(v);
        out << "\n";
    }
}

Trajectory read_trajectory(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("trajectory: missing header");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("trajectory: bad header: ") + e.what());
    }
    if (header.value("format", "") != "wavekin-trajectory")
        throw ValidationError("trajectory: not a wavekin trajectory file");
    const UniformLogGrid grid(header["grid"]["xi_min"].get<double>(), header["grid"]["xi_max"].get<double>(),
                              header["grid"]["n"].get<std::size_t>());
    Trajectory t{grid, {}, {}, header.value("config_hash", ""), {}};
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        double time = 0.0;
        if (!(row >> time))
            throw ValidationError("trajectory: bad row");
        std::vector<double> v(grid.n());
        for (double& x : v)
            if (!(row >> x))
                throw ValidationError("trajectory: short row at t = " + format_real(time));
        t.times.push_back(time);
        t.states.emplace_back(grid, std::move(v));
    }
    t.check();
    return t;
}

}  // namespace wavekin
