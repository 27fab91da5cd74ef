// scenario.hpp — trajectory orchestration: evolve a deviation matrix over a
// time grid, apply the configured normalization, evaluate requested
// observables.

#pragma once

#include "qrelax/normalize.hpp"
#include "qrelax/observables.hpp"
#include "qrelax/redfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrelax::scenario {

using linalg::Complex;
using linalg::Matrix;

enum class InitialState { basis00, basis01, basis10, basis11, cat, custom };
enum class Normalization { fixed_initial, fixed_equilibrium, alpha };
enum class OutputKind { populations, alpha_curve, concurrence, wigner, momentum_marginal };

std::string to_string(InitialState s);
std::string to_string(Normalization n);
std::string to_string(OutputKind k);

struct ScenarioConfig {
    double epsilon = 1e-5;
    int twice_spin = 3;
    InitialState initial_state = InitialState::basis11;
    std::vector<Complex> custom_ket;  // used when initial_state == custom
    redfield::RelaxationTimes taus;
    double t_start = 0.0;  // ms
    double t_end = 0.0;    // ms
    double t_step = 0.0;   // ms
    Normalization normalization = Normalization::alpha;
    std::vector<OutputKind> outputs;
};

// Enforces grid invariants (t_start >= 0, t_step > 0, t_end > t_start), the
// spin-system constraints, and output/normalization compatibility
// (alpha_curve needs alpha normalization).
void validate(const ScenarioConfig& cfg);

states::PureKet initial_ket(const ScenarioConfig& cfg);

struct Sample {
    double t_ms = 0;
    Matrix sigma;
    std::optional<double> alpha;
    Matrix rho;  // normalized matrix; may be invalid under the fixed schemes
    bool valid = false;
    std::optional<double> concurrence;
    std::optional<observables::WignerGrid> wigner;
    std::optional<std::vector<double>> momentum_marginal;
};

struct Trajectory {
    ScenarioConfig config;
    std::vector<Sample> samples;  // strictly increasing t
};

// Deterministic for a fixed config. Module errors are rethrown tagged with
// the offending time.
Trajectory run_scenario(const ScenarioConfig& cfg);

std::vector<std::pair<double, double>> concurrence_trajectory(const Trajectory& traj);

// Alpha-normalizes an ingested (t, sigma) series; the trajectory carries the
// same outputs machinery as a simulated one.
Trajectory normalize_series(const std::vector<std::pair<double, states::DeviationMatrix>>& series,
                            const states::SpinSystem& sys,
                            const std::vector<OutputKind>& outputs);

}  // namespace qrelax::scenario
