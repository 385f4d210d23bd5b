#include "diamond/cli.hpp"

#include "diamond/config.hpp"
#include "diamond/dressed.hpp"
#include "diamond/lindblad.hpp"
#include "diamond/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace diamond {

namespace {

struct SourceOptions {
    std::string config_path;
    std::string preset_name;
    std::string out_path;
};

void add_source_options(CLI::App& cmd, SourceOptions& src)
{
    auto* config = cmd.add_option("--config", src.config_path, "Scenario configuration file");
    auto* preset_opt = cmd.add_option("--preset", src.preset_name, "Built-in figure preset");
    config->excludes(preset_opt);
    preset_opt->excludes(config);
    cmd.add_option("--out", src.out_path, "Output path (default: stdout)");
}

RunConfig resolve_source(const SourceOptions& src)
{
    if (src.config_path.empty() && src.preset_name.empty())
        throw CLI::RequiredError("one of --config or --preset");
    if (!src.preset_name.empty()) return preset(src.preset_name);
    return load_config(src.config_path);
}

// Writes to --out (or the config's out_path) when given, otherwise to `fallback`.
template <class Writer>
void emit(const std::optional<std::string>& path, std::ostream& fallback, Writer&& write)
{
    if (!path) {
        write(fallback);
        return;
    }
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + *path + "' for writing");
    write(file);
    file.flush();
    if (!file) throw std::runtime_error("write to '" + *path + "' failed");
}

std::optional<std::string> output_path(const SourceOptions& src, const RunConfig& config)
{
    if (!src.out_path.empty()) return src.out_path;
    return config.output.out_path;
}

void print_state(std::ostream& out, const DensityMatrix& rho, bool csv)
{
    static constexpr char kNames[] = "abcd";
    if (csv) out << "row,col,re,im\n";
    for (std::size_t i = 0; i < kLevels; ++i)
        for (std::size_t j = 0; j < kLevels; ++j) {
            const complex v = rho.matrix()(i, j);
            if (csv)
                out << kNames[i] << ',' << kNames[j] << ',' << format_number(v.real()) << ','
                    << format_number(v.imag()) << '\n';
            else
                out << "rho_" << kNames[i] << kNames[j] << " = " << std::setw(24) << format_number(v.real())
                    << ' ' << std::setw(24) << format_number(v.imag()) << "i\n";
        }
}

void print_sweep_summary(std::ostream& out, const SweepResult& result, const std::vector<Observable>& keys)
{
    for (Observable key : keys) {
        if (!is_coherence(key)) continue;
        const auto windows = detect_windows(result, key);
        out << "Im rho_" << to_string(key) << ": " << windows.size() << " transparency window(s)";
        for (const auto& w : windows)
            out << " [center " << format_number(w.center) << ", half-width " << format_number(w.half_width) << ']';
        out << '\n';
        const auto gain = detect_gain(result, key);
        out << "Im rho_" << to_string(key) << ": " << gain.size() << " gain interval(s)";
        for (const auto& g : gain) out << " [" << format_number(g.lo) << ", " << format_number(g.hi) << ']';
        out << '\n';
    }
}

void print_presets(std::ostream& out)
{
    for (const auto& p : presets()) {
        const Scenario& s = p.config.scenario();
        out << std::left << std::setw(12) << p.name << " Oa1=" << s.omega_a1 << " Oa2=" << s.omega_a2
            << " Oc1=" << s.omega_c1 << " Oc2=" << s.omega_c2 << " gamma=(" << s.gamma1 << ',' << s.gamma2 << ','
            << s.gamma3 << ',' << s.gamma4 << ") closure=" << to_string(s.closure_target) << "  # "
            << p.description << '\n';
    }
}

void print_dressed(std::ostream& out, const Scenario& s, bool csv)
{
    const DressedSpectrum spectrum = dressed_spectrum(s);
    const auto closed = closed_form_eigenvalues(s);
    const DarkReport report = dark_classification(spectrum);
    const std::size_t c = index(Level::c);

    std::vector<std::size_t> group_of(spectrum.eigenvalues.size());
    for (std::size_t g = 0; g < spectrum.groups.size(); ++g)
        for (std::size_t k : spectrum.groups[g]) group_of[k] = g;

    if (csv) {
        out << "index,eigenvalue,closed_form,group,group_dark,c_amplitude\n";
        for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k)
            out << k << ',' << format_number(spectrum.eigenvalues[k]) << ',' << format_number(closed[k]) << ','
                << group_of[k] << ',' << report.group_dark[group_of[k]] << ','
                << format_number(std::abs(spectrum.eigenvectors(c, k))) << '\n';
        return;
    }

    out << std::setw(6) << "index" << std::setw(24) << "eigenvalue" << std::setw(24) << "closed form"
        << std::setw(7) << "group" << std::setw(20) << "|<c|D>|" << '\n';
    for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k)
        out << std::setw(6) << k << std::setw(24) << format_number(spectrum.eigenvalues[k]) << std::setw(24)
            << format_number(closed[k]) << std::setw(7) << group_of[k] << std::setw(20)
            << format_number(std::abs(spectrum.eigenvectors(c, k))) << '\n';
    out << "dark dimension per group:";
    for (std::size_t d : report.group_dark) out << ' ' << d;
    out << "\ntotal dark: " << report.total_dark << "\ndegenerate: " << (report.degenerate ? "yes" : "no") << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Four-level diamond atom: dressed states, steady states and probe sweeps"};
    app.require_subcommand(1);

    SourceOptions src;
    std::optional<double> sweep_min, sweep_max;
    std::optional<std::size_t> sweep_points;
    std::size_t threads = 0;
    std::optional<double> probe_delta;
    bool csv = false;
    double t_final = 200.0;
    double dt = 1e-3;
    std::size_t samples = 0;

    auto* sweep_cmd = app.add_subcommand("sweep", "Steady-state sweep of the probe detuning, written as CSV");
    add_source_options(*sweep_cmd, src);
    sweep_cmd->add_option("--min", sweep_min, "Lower end of the detuning grid");
    sweep_cmd->add_option("--max", sweep_max, "Upper end of the detuning grid");
    sweep_cmd->add_option("--points", sweep_points, "Number of grid points (>= 2)");
    sweep_cmd->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    auto* steady_cmd = app.add_subcommand("steady", "Steady-state density matrix at one probe detuning");
    add_source_options(*steady_cmd, src);
    steady_cmd->add_option("--delta", probe_delta, "Probe detuning (default: delta_c2 of the scenario)");
    steady_cmd->add_flag("--csv", csv, "Print entries as CSV");

    auto* evolve_cmd = app.add_subcommand("evolve", "Integrate the master equation from the ground state");
    add_source_options(*evolve_cmd, src);
    evolve_cmd->add_option("--delta", probe_delta, "Probe detuning (default: delta_c2 of the scenario)");
    evolve_cmd->add_option("--t-final", t_final, "Final time in units of 1/gamma_ref");
    evolve_cmd->add_option("--dt", dt, "Fixed RK4 step");
    evolve_cmd->add_option("--samples", samples, "Record this many evenly spaced states as a CSV trajectory");
    evolve_cmd->add_flag("--csv", csv, "Print the final state as CSV");

    auto* dressed_cmd = app.add_subcommand("dressed", "Dressed-state spectrum and dark-state census");
    add_source_options(*dressed_cmd, src);
    dressed_cmd->add_flag("--csv", csv, "Print as CSV");

    auto* presets_cmd = app.add_subcommand("presets", "List built-in presets");

    RunConfig config;
    try {
        app.parse(argc, argv);
        if (!presets_cmd->parsed()) config = resolve_source(src);
        if (sweep_min) config.sweep.delta_min = *sweep_min;
        if (sweep_max) config.sweep.delta_max = *sweep_max;
        if (sweep_points) config.sweep.points = *sweep_points;
        if (sweep_cmd->parsed()) config.sweep.validate();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const auto out_path = output_path(src, config);
    Scenario scenario = config.scenario();
    try {
        if (presets_cmd->parsed()) {
            print_presets(out);
        } else if (sweep_cmd->parsed()) {
            const SweepResult result = run_sweep(config.sweep, threads);
            emit(out_path, out, [&](std::ostream& os) { write_csv(result, os); });
            print_sweep_summary(out_path ? out : err, result, config.output.observables);
        } else if (steady_cmd->parsed()) {
            scenario = sweep_point(scenario, probe_delta.value_or(scenario.delta_c2));
            const DensityMatrix rho = steady_state(build_liouvillian(scenario));
            emit(out_path, out, [&](std::ostream& os) { print_state(os, rho, csv); });
        } else if (evolve_cmd->parsed()) {
            scenario = sweep_point(scenario, probe_delta.value_or(scenario.delta_c2));
            const Trajectory traj = evolve(scenario, DensityMatrix::pure(Level::b), {t_final, dt, samples});
            emit(out_path, out, [&](std::ostream& os) {
                if (samples == 0) {
                    print_state(os, traj.final_state, csv);
                    return;
                }
                os << "t," << kCsvColumns << '\n';
                for (std::size_t k = 0; k < traj.states.size(); ++k)
                    os << format_number(traj.times[k]) << ',' << csv_fields(traj.states[k]) << '\n';
            });
        } else if (dressed_cmd->parsed()) {
            emit(out_path, out, [&](std::ostream& os) { print_dressed(os, scenario, csv); });
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        err << "parameters:\n" << render_config(RunConfig{SweepSpec{config.sweep.delta_min, config.sweep.delta_max, config.sweep.points, scenario}, config.output});
        return kExitComputation;
    }
    return kExitOk;
}

}  // namespace diamond
