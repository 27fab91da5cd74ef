// qrelax — command-line runner for spin-3/2 quadrupolar relaxation
// trajectories with time-dependent polarization normalization.

#include "qrelax/errors.hpp"
#include "qrelax/io.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

namespace {

using namespace qrelax;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParseIo = 2;

int parse_spin_arg(const std::string& s) {
    const auto slash = s.find('/');
    double spin = 0;
    try {
        spin = slash == std::string::npos
                   ? std::stod(s)
                   : std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    } catch (const std::exception&) {
        throw ParseError("--spin: cannot parse '" + s + "'");
    }
    const double doubled = 2.0 * spin;
    if (doubled < 1.0 || std::abs(doubled - std::round(doubled)) > 1e-9)
        throw ParseError("--spin: must be a positive half-integer");
    return static_cast<int>(std::round(doubled));
}

bool looks_like_series(const std::string& path) {
    // Series files have a "records" list; configs have "taus".
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string head((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return head.find("\"records\"") != std::string::npos;
}

int run_simulate(const std::string& config_path, const std::string& out, const std::string& format) {
    const scenario::ScenarioConfig cfg = io::load_config(config_path);
    const scenario::Trajectory traj = scenario::run_scenario(cfg);
    io::export_trajectory(traj, io::parse_format(format), out);
    std::cout << "wrote " << traj.samples.size() << " samples to " << out << "\n";
    return kExitOk;
}

int run_normalize(const std::string& series_path, double epsilon, const std::string& spin,
                  const std::string& out, const std::string& format) {
    const states::SpinSystem sys = states::make_spin_system(parse_spin_arg(spin), epsilon);
    const io::DeviationSeries series = io::ingest_deviation_series(series_path);
    scenario::Trajectory traj = scenario::normalize_series(
        series, sys, {scenario::OutputKind::populations, scenario::OutputKind::alpha_curve});
    io::export_trajectory(traj, io::parse_format(format), out);
    std::cout << "normalized " << traj.samples.size() << " records to " << out << "\n";
    return kExitOk;
}

int run_wigner(const std::string& input_path, double epsilon, const std::string& spin,
               const std::string& out, const std::string& format) {
    const std::vector<scenario::OutputKind> kinds = {scenario::OutputKind::wigner,
                                                     scenario::OutputKind::momentum_marginal};
    scenario::Trajectory traj;
    if (looks_like_series(input_path)) {
        const states::SpinSystem sys = states::make_spin_system(parse_spin_arg(spin), epsilon);
        traj = scenario::normalize_series(io::ingest_deviation_series(input_path), sys, kinds);
    } else {
        scenario::ScenarioConfig cfg = io::load_config(input_path);
        for (const auto kind : kinds)
            if (std::find(cfg.outputs.begin(), cfg.outputs.end(), kind) == cfg.outputs.end())
                cfg.outputs.push_back(kind);
        traj = scenario::run_scenario(cfg);
    }
    io::export_trajectory(traj, io::parse_format(format), out);
    std::cout << "wrote phase-space data for " << traj.samples.size() << " samples to " << out
              << "\n";
    return kExitOk;
}

int run_validate(const std::string& series_path) {
    const io::DeviationSeries series = io::ingest_deviation_series(series_path);
    std::cout << "ok: " << series.size() << " records";
    if (!series.empty())
        std::cout << ", t in [" << series.front().first << ", " << series.back().first << "] ms";
    std::cout << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-3/2 quadrupolar relaxation trajectories with time-dependent normalization"};
    app.require_subcommand(1);

    std::string config_path, series_path, input_path;
    std::string out = "trajectory.json";
    std::string format = "json";
    std::string spin = "3/2";
    double epsilon = 1e-5;

    auto* simulate = app.add_subcommand("simulate", "run a scenario config over its time grid");
    simulate->add_option("config", config_path, "scenario config (JSON)")->required();
    simulate->add_option("--out", out, "output path (file, or directory for multi-kind CSV)");
    simulate->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* normalize = app.add_subcommand("normalize", "alpha-normalize a deviation-matrix series");
    normalize->add_option("series", series_path, "deviation series (JSON)")->required();
    normalize->add_option("--epsilon", epsilon, "polarization parameter")->required();
    normalize->add_option("--spin", spin, "spin quantum number, e.g. 3/2");
    normalize->add_option("--out", out, "output path");
    normalize->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* wigner = app.add_subcommand("wigner", "discrete Wigner grids along a trajectory");
    wigner->add_option("input", input_path, "scenario config or deviation series (JSON)")->required();
    wigner->add_option("--epsilon", epsilon, "polarization parameter (series input)");
    wigner->add_option("--spin", spin, "spin quantum number (series input)");
    wigner->add_option("--out", out, "output path");
    wigner->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* validate = app.add_subcommand("validate", "check a deviation-matrix series file");
    validate->add_option("series", series_path, "deviation series (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitParseIo;
    }

    try {
        if (simulate->parsed()) return run_simulate(config_path, out, format);
        if (normalize->parsed()) return run_normalize(series_path, epsilon, spin, out, format);
        if (wigner->parsed()) return run_wigner(input_path, epsilon, spin, out, format);
        if (validate->parsed()) return run_validate(series_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseIo;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParseIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
