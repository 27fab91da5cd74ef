#include "qrelax/scenario.hpp"

#include "qrelax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrelax::scenario {

std::string to_string(InitialState s) {
    switch (s) {
        case InitialState::basis00: return "basis00";
        case InitialState::basis01: return "basis01";
        case InitialState::basis10: return "basis10";
        case InitialState::basis11: return "basis11";
        case InitialState::cat: return "cat";
        case InitialState::custom: return "custom";
    }
    return "?";
}

std::string to_string(Normalization n) {
    switch (n) {
        case Normalization::fixed_initial: return "fixed_initial";
        case Normalization::fixed_equilibrium: return "fixed_equilibrium";
        case Normalization::alpha: return "alpha";
    }
    return "?";
}

std::string to_string(OutputKind k) {
    switch (k) {
        case OutputKind::populations: return "populations";
        case OutputKind::alpha_curve: return "alpha_curve";
        case OutputKind::concurrence: return "concurrence";
        case OutputKind::wigner: return "wigner";
        case OutputKind::momentum_marginal: return "momentum_marginal";
    }
    return "?";
}

namespace {

bool wants(const ScenarioConfig& cfg, OutputKind k) {
    return std::find(cfg.outputs.begin(), cfg.outputs.end(), k) != cfg.outputs.end();
}

[[noreturn]] void rethrow_tagged(double t_ms, const Error& e) {
    std::ostringstream os;
    os << "t = " << t_ms << " ms: " << e.what();
    throw Error(os.str());
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
    states::make_spin_system(cfg.twice_spin, cfg.epsilon);
    redfield::validate(cfg.taus);
    if (cfg.t_start < 0.0) throw Error("ScenarioConfig: t_start must be >= 0");
    if (!(cfg.t_step > 0.0)) throw Error("ScenarioConfig: t_step must be > 0");
    if (!(cfg.t_end > cfg.t_start)) throw Error("ScenarioConfig: t_end must be > t_start");
    if (cfg.initial_state == InitialState::custom &&
        cfg.custom_ket.size() != static_cast<size_t>(cfg.twice_spin + 1))
        throw Error("ScenarioConfig: custom ket has wrong dimension");
    if (wants(cfg, OutputKind::alpha_curve) && cfg.normalization != Normalization::alpha)
        throw Error("ScenarioConfig: alpha_curve output requires alpha normalization");
}

states::PureKet initial_ket(const ScenarioConfig& cfg) {
    const int dim = cfg.twice_spin + 1;
    switch (cfg.initial_state) {
        case InitialState::basis00: return states::basis_ket(dim, 0);
        case InitialState::basis01: return states::basis_ket(dim, 1);
        case InitialState::basis10: return states::basis_ket(dim, 2);
        case InitialState::basis11: return states::basis_ket(dim, 3);
        case InitialState::cat: return states::cat_ket(dim);
        case InitialState::custom: {
            linalg::Vector v(static_cast<Eigen::Index>(cfg.custom_ket.size()));
            for (size_t i = 0; i < cfg.custom_ket.size(); ++i)
                v[static_cast<Eigen::Index>(i)] = cfg.custom_ket[i];
            return states::make_ket(std::move(v));
        }
    }
    throw Error("initial_ket: unknown initial state");
}

Trajectory run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    const states::SpinSystem sys = states::make_spin_system(cfg.twice_spin, cfg.epsilon);
    const states::PureKet psi = initial_ket(cfg);
    const states::DeviationMatrix sigma0 = states::initial_deviation(sys, psi);
    const states::DeviationMatrix sigma_inf = states::equilibrium_deviation(sys);

    const bool need_grid =
        wants(cfg, OutputKind::wigner) || wants(cfg, OutputKind::momentum_marginal);
    std::optional<observables::PhasePointGrid> grid;
    if (need_grid) grid = observables::build_phase_point_grid(sys.dim());

    const auto n_steps =
        static_cast<long>(std::floor((cfg.t_end - cfg.t_start) / cfg.t_step + 1e-9));

    Trajectory traj;
    traj.config = cfg;
    traj.samples.reserve(static_cast<size_t>(n_steps) + 1);
    for (long k = 0; k <= n_steps; ++k) {
        const double t = cfg.t_start + static_cast<double>(k) * cfg.t_step;
        Sample sample;
        sample.t_ms = t;
        try {
            const states::DeviationMatrix sigma = redfield::evolve_sigma(sigma0, sigma_inf, t, cfg.taus);
            sample.sigma = sigma.mat;
            switch (cfg.normalization) {
                case Normalization::fixed_initial: {
                    auto fm = normalize::fixed_normalize_initial(sigma, sys.epsilon);
                    sample.rho = std::move(fm.mat);
                    sample.valid = fm.valid;
                    break;
                }
                case Normalization::fixed_equilibrium: {
                    auto fm = normalize::fixed_normalize_equilibrium(sigma, sys.epsilon, sys.twice_spin);
                    sample.rho = std::move(fm.mat);
                    sample.valid = fm.valid;
                    break;
                }
                case Normalization::alpha: {
                    const double alpha = normalize::find_alpha(sigma, sys);
                    states::DensityMatrix rho =
                        normalize::normalize_time_dependent(sigma, sigma0, psi, sys, alpha);
                    sample.alpha = alpha;
                    sample.rho = std::move(rho.mat);
                    sample.valid = true;
                    break;
                }
            }
            if (wants(cfg, OutputKind::concurrence) || need_grid) {
                if (!sample.valid)
                    throw InvalidState("observables requested on an invalid normalized matrix");
                const states::DensityMatrix rho = states::make_density(sample.rho);
                if (wants(cfg, OutputKind::concurrence))
                    sample.concurrence = observables::concurrence_general(rho);
                if (need_grid) {
                    observables::WignerGrid w = observables::wigner(rho, *grid);
                    if (wants(cfg, OutputKind::momentum_marginal))
                        sample.momentum_marginal = observables::momentum_marginal(w);
                    if (wants(cfg, OutputKind::wigner)) sample.wigner = std::move(w);
                }
            }
        } catch (const Error& e) {
            rethrow_tagged(t, e);
        }
        traj.samples.push_back(std::move(sample));
    }
    return traj;
}

std::vector<std::pair<double, double>> concurrence_trajectory(const Trajectory& traj) {
    std::vector<std::pair<double, states::DensityMatrix>> samples;
    samples.reserve(traj.samples.size());
    for (const Sample& s : traj.samples) {
        if (!s.valid) throw InvalidState("concurrence_trajectory: invalid sample in trajectory");
        samples.emplace_back(s.t_ms, states::make_density(s.rho));
    }
    return observables::concurrence_trajectory(samples);
}

Trajectory normalize_series(const std::vector<std::pair<double, states::DeviationMatrix>>& series,
                            const states::SpinSystem& sys,
                            const std::vector<OutputKind>& outputs) {
    Trajectory traj;
    traj.config.epsilon = sys.epsilon;
    traj.config.twice_spin = sys.twice_spin;
    traj.config.normalization = Normalization::alpha;
    traj.config.outputs = outputs;
    const bool need_grid =
        wants(traj.config, OutputKind::wigner) || wants(traj.config, OutputKind::momentum_marginal);
    std::optional<observables::PhasePointGrid> grid;
    if (need_grid) grid = observables::build_phase_point_grid(sys.dim());

    for (const auto& [t, sigma] : series) {
        Sample sample;
        sample.t_ms = t;
        sample.sigma = sigma.mat;
        try {
            normalize::AlphaSample as = normalize::alpha_normalize(sigma, sys, t);
            sample.alpha = as.alpha;
            sample.valid = true;
            if (wants(traj.config, OutputKind::concurrence))
                sample.concurrence = observables::concurrence_general(as.rho_alpha);
            if (need_grid) {
                observables::WignerGrid w = observables::wigner(as.rho_alpha, *grid);
                if (wants(traj.config, OutputKind::momentum_marginal))
                    sample.momentum_marginal = observables::momentum_marginal(w);
                if (wants(traj.config, OutputKind::wigner)) sample.wigner = std::move(w);
            }
            sample.rho = std::move(as.rho_alpha.mat);
        } catch (const Error& e) {
            rethrow_tagged(t, e);
        }
        traj.samples.push_back(std::move(sample));
    }
    return traj;
}

}  // namespace qrelax::scenario
