#include "wavekin/cli/checks.hpp"
#include "wavekin/cli/flat_config.hpp"
#include "wavekin/errors.hpp"
#include "wavekin/evolve/experiments.hpp"
#include "wavekin/kinetic/operators.hpp"
#include "wavekin/norms/norms.hpp"
#include "wavekin/specfun/symbol.hpp"
#include "wavekin/spectral/multiplier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace wavekin;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, validation = 2, numerical = 3, check_failure = 4 };

struct Column {
    std::string name;
    std::string description;
};

struct Table {
    std::string stem;
    std::vector<Column> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string real(double v)
{
    return format_real(v);
}

class Run {
public:
    Run(std::string subcommand, const FlatConfig& config, fs::path out)
        : subcommand_(std::move(subcommand)), out_(std::move(out))
    {
        hash_ = hex64(fnv1a64(canonical(config)));
        for (const auto& [k, v] : config.entries())
            echo_[k] = v;
    }

    void check(const CheckResult& c) { checks_.push_back(c); }
    void summary(const std::string& key, ordered_json value) { summary_[key] = std::move(value); }

    void write(const Table& t)
    {
        fs::create_directories(out_);
        const fs::path csv = out_ / (t.stem + ".csv");
        std::ofstream os(csv, std::ios::binary);
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << t.columns[i].name;
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << row[i];
            os << "\n";
        }
        outputs_.push_back(csv.filename().string());

        ordered_json j;
        j["table"] = t.stem;
        j["config_hash"] = hash_;
        ordered_json cols = ordered_json::object();
        for (const auto& c : t.columns)
            cols[c.name] = c.description;
        j["columns"] = cols;
        ordered_json rows = ordered_json::array();
        for (const auto& row : t.rows) {
            ordered_json r = ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i)
                r[t.columns[i].name] = row[i];
            rows.push_back(r);
        }
        j["rows"] = rows;
        const fs::path json = out_ / (t.stem + ".json");
        std::ofstream(json, std::ios::binary) << j.dump(2) << "\n";
        outputs_.push_back(json.filename().string());
    }

    void write_file(const std::string& name, const std::function<void(std::ostream&)>& body)
    {
        fs::create_directories(out_);
        std::ofstream os(out_ / name, std::ios::binary);
        body(os);
        outputs_.push_back(name);
    }

    int finish()
    {
        bool all = true;
        ordered_json checks = ordered_json::array();
        for (const auto& c : checks_) {
            all = all && c.passed;
            checks.push_back({{"name", c.name},
                              {"passed", c.passed},
                              {"measured", c.measured},
                              {"threshold", c.threshold},
                              {"detail", c.detail}});
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << real(c.measured) << " (threshold "
                      << real(c.threshold) << ")" << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
        }
        ordered_json m;
        m["format"] = "wavekin-run-manifest";
        m["tool_version"] = kVersion;
        m["subcommand"] = subcommand_;
        m["config_hash"] = hash_;
        m["config"] = echo_;
        m["summary"] = summary_;
        m["checks"] = checks;
        m["passed_checks"] = std::count_if(checks_.begin(), checks_.end(), [](const auto& c) { return c.passed; });
        m["all_passed"] = all;
        outputs_.push_back("manifest.json");
        m["outputs"] = outputs_;
        fs::create_directories(out_);
        std::ofstream(out_ / "manifest.json", std::ios::binary) << m.dump(2) << "\n";
        return all ? Exit::ok : Exit::check_failure;
    }

private:
    static std::string canonical(const FlatConfig& c)
    {
        std::string s;
        for (const auto& [k, v] : c.entries())
            s += k + " = " + v + "\n";
        return s;
    }

    std::string subcommand_;
    fs::path out_;
    std::string hash_;
    std::map<std::string, std::string> echo_;
    ordered_json summary_ = ordered_json::object();
    std::vector<CheckResult> checks_;
    std::vector<std::string> outputs_;
};

const std::set<std::string> kSections = {"grid",  "forcing", "weight", "sweep",  "time",
                                         "mode",  "monitor", "symbol", "operator", "norms"};

void reject_unknown(const FlatConfig& c)
{
    for (const auto& [key, value] : c.entries()) {
        const auto dot = key.find('.');
        if (dot == std::string::npos || !kSections.count(key.substr(0, dot)))
            throw ValidationError("config: unknown section in key '" + key + "'");
    }
    const auto bad_symbol = c.unknown_keys("symbol", {"k_max", "points", "tolerance"});
    const auto bad_op =
        c.unknown_keys("operator", {"name", "family", "center", "width", "tolerance", "tail_cut", "cutoff_R"});
    const auto bad_norms = c.unknown_keys("norms", {"trajectory", "menu"});
    if (!bad_norms.empty())
        throw ValidationError("config: unknown key '" + bad_norms.front() + "'");
    if (!bad_symbol.empty())
        throw ValidationError("config: unknown key '" + bad_symbol.front() + "'");
    if (!bad_op.empty())
        throw ValidationError("config: unknown key '" + bad_op.front() + "'");
}

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {})
{
    return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

int cmd_symbol(const FlatConfig& c, Run& run)
{
    const double k_max = c.get_double("symbol.k_max", 50.0);
    const long points = c.get_int("symbol.points", 401);
    const double tol = c.get_double("symbol.tolerance", 1e-9);
    if (!(k_max > 0.0) || points < 2)
        throw ValidationError("symbol: need k_max > 0 and points >= 2");
    Table t{"symbol",
            {{"k", "wavenumber"},
             {"re_rho0", "Re rho0 via digamma"},
             {"im_rho0", "Im rho0 via digamma"},
             {"re_integral", "Re rho0 via the defining integral"},
             {"im_integral", "Im rho0 via the defining integral"},
             {"abs_diff", "|digamma route - integral route|"}},
            {}};
    double worst = 0.0;
    for (long i = 0; i < points; ++i) {
        const double k = -k_max + 2.0 * k_max * static_cast<double>(i) / static_cast<double>(points - 1);
        const ComplexValue a = rho0(k), b = rho0_via_integral(k, tol);
        const double d = std::abs(a - b);
        worst = std::max(worst, d);
        t.add({real(k), real(a.real()), real(a.imag()), real(b.real()), real(b.imag()), real(d)});
    }
    run.write(t);
    run.summary("max_abs_diff", worst);
    run.check(at_most("symbol_routes_agree", worst, 1e-8));
    return run.finish();
}

Field input_family(const FlatConfig& c, const UniformLogGrid& g)
{
    const std::string family = c.get_string("operator.family", "log_gaussian");
    const double center = c.get_double("operator.center", 0.0);
    const double width = c.get_double("operator.width", 1.0);
    if (!(width > 0.0))
        throw ValidationError("operator: width must be positive");
    if (family == "log_gaussian")
        return Field::sample(g, [&](double x) { return std::exp(-(x - center) * (x - center) / (width * width)); });
    if (family == "constant")
        return Field::sample(g, [](double) { return 1.0; });
    if (family == "oscillating")
        return Field::sample(g, [&](double x) {
            const double z = (x - center) / width;
            return std::cos(3.0 * z) * std::exp(-z * z);
        });
    throw ValidationError("operator: family must be log_gaussian, constant or oscillating");
}

int cmd_apply_op(const FlatConfig& c, Run& run)
{
    const ExperimentConfig e = ExperimentConfig::from_flat(c);
    const UniformLogGrid g = e.grid.make();
    const std::string op = c.get_string("operator.name", "P_spectral");
    QuadratureSpec q;
    q.tolerance = c.get_double("operator.tolerance", q.tolerance);
    q.tail_cut = c.get_double("operator.tail_cut", q.tail_cut);
    q.validate();
    const Field w = input_family(c, g);
    const double cutoff_R = c.get_double("operator.cutoff_R", 1.0);
    if (!(cutoff_R > 0.0))
        throw ValidationError("operator: cutoff_R must be positive");

    Field out = w;
    double equivalence = -1.0;
    if (op == "L_X") {
        out = apply_L_X(RadialFunction(w), q).field();
    } else if (op == "L_sqrt") {
        out = apply_L_sqrt(RadialFunction(w), q).field();
    } else if (op == "P0" || op == "P_spectral") {
        Field direct = apply_P0_direct(w, q);
        out = op == "P0" ? direct : apply_P_spectral(w);
        for (std::size_t j = 0; j < g.n(); ++j)
            direct[j] *= std::exp(-g.xi(j) / 2.0);
        equivalence = relative_l2_inner(direct.values(), apply_P_spectral(w).values());
    } else if (op == "commutator") {
        out = commutator_apply(CutoffSpec::eta0_R(cutoff_R), w);
    } else {
        throw ValidationError("operator: name must be one of L_X, L_sqrt, P0, P_spectral, commutator");
    }

    Table t{"apply_op",
            {{"node", "grid index j"},
             {"xi", "log X at the node"},
             {"input", "input field w(xi)"},
             {"output", op + " applied to the input"}},
            {}};
    bool finite = true;
    for (std::size_t j = 0; j < g.n(); ++j) {
        finite = finite && std::isfinite(out[j]);
        t.add({std::to_string(j), real(g.xi(j)), real(w[j]), real(out[j])});
    }
    run.write(t);
    run.summary("operator", op);
    run.summary("family", c.get_string("operator.family", "log_gaussian"));
    run.check({"output_finite", finite, finite ? 1.0 : 0.0, 1.0, ""});
    if (equivalence >= 0.0) {
        run.summary("spectral_direct_relative_l2", equivalence);
        run.check(at_most("spectral_direct_agree", equivalence, 1e-4, "inner 70% of the grid"));
    }
    if (op != "commutator" && c.get_string("operator.family", "log_gaussian") == "constant") {
        const auto [lo, hi] = inner_range(g.n());
        double sup = 0.0;
        for (std::size_t j = lo; j < hi; ++j)
            sup = std::max(sup, std::abs(out[j]));
        run.check(at_most("constants_annihilated", sup, 1e-8, "inner 70% of the grid"));
    }
    return run.finish();
}

int cmd_evolve(const FlatConfig& c, Run& run)
{
    const ExperimentConfig e = ExperimentConfig::from_flat(c);
    e.validate();
    const Trajectory traj = evolve(e);
    traj.check();
    run.write_file("trajectory.txt", [&](std::ostream& os) { write_trajectory(traj, os); });
    const DecayReport d = weighted_decay_check(traj, e.forcing, e.weight, e.buffer_fraction);
    Table t{"decay",
            {{"t", "sample time"},
             {"r1", "||v(t)||_{theta,rho} / (t sup_s ||nu(s)||_{theta,rho})"},
             {"r2", "sup_{X>t^2} |v| X^{3/2} / (t^{4-2theta} (1+t)^{-2rho} sup_s ||nu(s)||_{theta,rho})"}},
            {}};
    for (std::size_t i = 0; i < d.times.size(); ++i)
        t.add({real(d.times[i]), real(d.r1[i]), real(d.r2[i])});
    run.write(t);
    const auto& diag = traj.diagnostics;
    run.summary("closure", to_string(diag.closure));
    run.summary("fft_size", diag.fft_size);
    run.summary("steps", diag.steps);
    run.summary("right_buffer_peak", diag.right_buffer_peak);
    run.summary("max_growth", diag.max_growth);
    run.summary("max_r1", d.max_r1);
    run.summary("max_r2", d.max_r2);
    run.check(at_most("right_buffer_clean", diag.right_buffer_peak, e.monitor_tolerance));
    run.check({"decay_r1_bounded", d.r1_bounded, d.r1_small_t_slope, -0.1,
               "small-t log-log slope; max r1 = " + real(d.max_r1)});
    run.check({"decay_r2_bounded", d.r2_bounded, d.r2_small_t_slope, -0.1,
               "small-t log-log slope; max r2 = " + real(d.max_r2)});
    return run.finish();
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a != std::string::npos)
            out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

int cmd_norms(const FlatConfig& c, Run& run)
{
    const ExperimentConfig e = ExperimentConfig::from_flat(c);
    const std::string path = c.get_string("norms.trajectory", "");
    if (path.empty())
        throw ValidationError("norms: norms.trajectory names the input trajectory file");
    const std::set<std::string> known = {"m_sigma", "m_sigma_local", "n_r_sigma", "gagliardo_local",
                                         "weighted_sup", "l2"};
    const auto menu = split_list(c.get_string("norms.menu", "m_sigma, m_sigma_local, n_r_sigma, weighted_sup"));
    for (const auto& m : menu)
        if (!known.count(m))
            throw ValidationError("norms: unknown norm '" + m + "'");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("norms: cannot open trajectory '" + path + "'");
    const Trajectory traj = read_trajectory(in);
    traj.check();

    Table t{"norms",
            {{"t", "sample time"},
             {"norm_name", "norm from the menu, with its sigma where it has one"},
             {"window", "global, or R=<scale> for the dyadic window around X ~ R"},
             {"value", "norm value"}},
            {}};
    bool finite = true;
    auto emit = [&](double time, const std::string& name, const std::string& window, double value) {
        finite = finite && std::isfinite(value);
        t.add({real(time), name, window, real(value)});
    };
    const auto lattice = e.R_lattice();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const RadialFunction v(traj.states[i]);
        const double time = traj.times[i];
        for (const auto& m : menu) {
            if (m == "weighted_sup") {
                emit(time, m, "global", weighted_sup_norm(v, e.weight));
            } else if (m == "l2") {
                emit(time, m, "global", sobolev_norm(traj.states[i], 0.0, 0));
            } else if (m == "gagliardo_local") {
                for (double R : lattice)
                    emit(time, m, "R=" + real(R), gagliardo_log_seminorm(v, Window{R, kI3}));
            } else {
                for (double sigma : e.sigmas) {
                    const std::string name = m + "[sigma=" + real(sigma) + "]";
                    if (m == "m_sigma")
                        emit(time, name, "global", m_sigma_norm(v, sigma));
                    else
                        for (double R : lattice)
                            emit(time, name, "R=" + real(R),
                                 m == "m_sigma_local" ? m_sigma_norm(v, sigma, Window{R, kI3}) : n_r_sigma(v, R, sigma));
                }
            }
        }
    }
    run.write(t);
    run.summary("trajectory", path);
    run.summary("trajectory_config_hash", traj.provenance);
    run.summary("rows", t.rows.size());
    run.check({"all_values_finite", finite, finite ? 1.0 : 0.0, 1.0, ""});
    return run.finish();
}

int cmd_smoothing(const FlatConfig& c, Run& run)
{
    const ExperimentConfig e = ExperimentConfig::from_flat(c);
    e.validate();
    const SweepReport r = smoothing_sweep(e);
    Table t{"sweep",
            {{"sigma", "Sobolev order"},
             {"R", "dyadic scale"},
             {"t0", "window start (0 for R >= 1, whose window is [0, T*])"},
             {"lhs_name", "solution-side quantity"},
             {"lhs", "time-integrated solution norm, square-rooted"},
             {"rhs_name", "forcing-side quantity"},
             {"rhs", "forcing functional with its lattice supremum"},
             {"ratio", "lhs / rhs"}},
            {}};
    for (const auto& row : r.rows)
        t.add({real(row.sigma), real(row.R), real(row.t0), row.lhs_name, real(row.lhs), row.rhs_name,
               real(row.rhs), real(row.ratio)});
    run.write(t);
    Table tail{"tail_slope",
               {{"t", "sample time"},
                {"forcing_slope", "fitted log10 amplitude slope of the windowed forcing"},
                {"solution_slope", "same for the windowed solution"},
                {"improvement_decades", "(forcing_slope - solution_slope) log10(4)"}},
               {}};
    for (std::size_t i = 0; i < r.tail.times.size(); ++i)
        tail.add({real(r.tail.times[i]), real(r.tail.forcing_slope[i]), real(r.tail.solution_slope[i]),
                  real(r.tail.improvement_decades[i])});
    run.write(tail);
    run.summary("C_hat_lattice_supremum", r.C_hat);
    ordered_json per = ordered_json::object();
    for (const auto& [s, v] : r.C_hat_per_sigma)
        per[real(s)] = v;
    run.summary("C_hat_per_sigma", per);
    run.summary("forcing_weighted_integral", r.forcing_weighted_integral);
    run.check({"all_entries_finite", r.all_finite, r.all_finite ? 1.0 : 0.0, 1.0, ""});
    run.check({"tail_slope_gain", r.tail.passed, r.tail.min_improvement, 0.5,
               "decades over [k_max/8, k_max/2], minimum over t > 0"});
    return run.finish();
}

int cmd_verify(Run& run)
{
    Table t{"verify",
            {{"criterion", "acceptance criterion id"},
             {"check", "check name within the criterion"},
             {"passed", "1 if the check passed"},
             {"measured", "measured value"},
             {"threshold", "pinned threshold"}},
            {}};
    for (int id : verify_criteria()) {
        const CriterionResult r = run_criterion(id);
        std::cout << r.summary() << "\n";
        for (auto part : r.parts) {
            t.add({std::to_string(id), part.name, part.passed ? "1" : "0", real(part.measured), real(part.threshold)});
            part.name = "c" + std::to_string(id) + "." + part.name;
            run.check(part);
        }
    }
    run.write(t);
    return run.finish();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Log-variable kinetic operator experiments"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir = ".";
    const std::vector<std::string> names = {"symbol", "apply-op", "evolve", "norms", "smoothing", "verify"};
    for (const auto& n : names) {
        auto* sub = app.add_subcommand(n);
        sub->add_option("config", config_path, "flat key = value config file")->required(n != "verify");
        sub->add_option("-o,--out", out_dir, "output directory");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        const FlatConfig config = config_path.empty() ? FlatConfig::parse("") : FlatConfig::load(config_path);
        reject_unknown(config);
        ExperimentConfig::from_flat(config);
        Run run(sub, config, out_dir);
        if (sub == "symbol")
            return cmd_symbol(config, run);
        if (sub == "apply-op")
            return cmd_apply_op(config, run);
        if (sub == "evolve")
            return cmd_evolve(config, run);
        if (sub == "norms")
            return cmd_norms(config, run);
        if (sub == "smoothing")
            return cmd_smoothing(config, run);
        return cmd_verify(run);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return Exit::validation;
    } catch (const NumericalAbort& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return Exit::numerical;
    } catch (const QuadratureError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return Exit::numerical;
    }
}
