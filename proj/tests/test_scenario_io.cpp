#include "qrelax/io.hpp"

#include "qrelax/errors.hpp"
#include "oracles.hpp"

#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

using namespace qrelax;
using linalg::Matrix;
using scenario::InitialState;
using scenario::Normalization;
using scenario::OutputKind;
using scenario::ScenarioConfig;

namespace {

const redfield::RelaxationTimes kTaus{4.6, 4.7, 11.1, 20.8, 23.8};

ScenarioConfig base_config() {
    ScenarioConfig cfg;
    cfg.epsilon = 1e-5;
    cfg.twice_spin = 3;
    cfg.taus = kTaus;
    cfg.t_start = 0.0;
    cfg.t_end = 50.0;
    cfg.t_step = 0.1;
    cfg.initial_state = InitialState::basis11;
    cfg.normalization = Normalization::alpha;
    cfg.outputs = {OutputKind::populations, OutputKind::alpha_curve};
    return cfg;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("fixed-initial trajectory flips its validity flag once and stays invalid") {
    ScenarioConfig cfg = base_config();
    cfg.normalization = Normalization::fixed_initial;
    cfg.outputs = {OutputKind::populations};
    const auto traj = scenario::run_scenario(cfg);
    REQUIRE(traj.samples.size() == 501);
    long first_invalid = -1;
    for (size_t k = 0; k < traj.samples.size(); ++k) {
        if (!traj.samples[k].valid) {
            first_invalid = static_cast<long>(k);
            break;
        }
    }
    CHECK(first_invalid == 210);  // t = 21.0 ms on this grid
    for (size_t k = static_cast<size_t>(first_invalid); k < traj.samples.size(); ++k)
        CHECK_FALSE(traj.samples[k].valid);
}

TEST_CASE("alpha trajectory is valid on every sample") {
    ScenarioConfig cfg = base_config();
    cfg.t_end = 100.0;
    const auto traj = scenario::run_scenario(cfg);
    REQUIRE(traj.samples.size() == 1001);
    for (const auto& s : traj.samples) {
        CHECK(s.valid);
        CHECK(s.alpha.has_value());
        CHECK(s.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(*traj.samples.front().alpha == doctest::Approx(1e-5).epsilon(1e-12));
    CHECK(*traj.samples.back().alpha / 1e-5 == doctest::Approx(2.9387554307043633).epsilon(1e-9));
}

TEST_CASE("cat concurrence trajectory dies at a finite time and stays dead") {
    ScenarioConfig cfg = base_config();
    cfg.initial_state = InitialState::cat;
    cfg.t_end = 100.0;
    cfg.outputs = {OutputKind::concurrence};
    const auto traj = scenario::run_scenario(cfg);
    REQUIRE(traj.samples.size() == 1001);
    // regression values frozen from the closed-form X-state route; the general
    // route carries ~1e-8 noise at the pinned zero eigenvalue
    CHECK(*traj.samples[0].concurrence == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(*traj.samples[20].concurrence == doctest::Approx(0.6977585398414784).epsilon(1e-7));
    CHECK(*traj.samples[50].concurrence == doctest::Approx(0.35260290232726821).epsilon(1e-7));
    long first_zero = -1;
    for (size_t k = 0; k < traj.samples.size(); ++k) {
        if (*traj.samples[k].concurrence == 0.0) {
            first_zero = static_cast<long>(k);
            break;
        }
    }
    CHECK(first_zero == 91);  // t = 9.1 ms on this grid
    for (size_t k = static_cast<size_t>(first_zero); k < traj.samples.size(); ++k)
        CHECK(*traj.samples[k].concurrence == 0.0);
}

TEST_CASE("concurrence_trajectory matches the per-sample values") {
    ScenarioConfig cfg = base_config();
    cfg.initial_state = InitialState::cat;
    cfg.t_end = 5.0;
    cfg.t_step = 1.0;
    cfg.outputs = {OutputKind::concurrence};
    const auto traj = scenario::run_scenario(cfg);
    const auto series = scenario::concurrence_trajectory(traj);
    REQUIRE(series.size() == traj.samples.size());
    for (size_t k = 0; k < series.size(); ++k)
        CHECK(series[k].second == doctest::Approx(*traj.samples[k].concurrence).epsilon(1e-14));
}

TEST_CASE("scenario errors carry the offending time") {
    // concurrence on a normalization that goes invalid: the module error is
    // rethrown tagged with the grid time at which it happened
    ScenarioConfig cfg = base_config();
    cfg.normalization = Normalization::fixed_initial;
    cfg.outputs = {OutputKind::concurrence};
    cfg.t_start = 21.0;
    cfg.t_end = 22.0;
    cfg.t_step = 0.5;
    try {
        scenario::run_scenario(cfg);
        FAIL("expected a tagged error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("t = 21") != std::string::npos);
    }
}

TEST_CASE("scenario validation rejects bad grids and output combinations") {
    ScenarioConfig cfg = base_config();
    cfg.t_step = 0.0;
    CHECK_THROWS_AS(scenario::validate(cfg), Error);
    cfg = base_config();
    cfg.t_end = cfg.t_start;
    CHECK_THROWS_AS(scenario::validate(cfg), Error);
    cfg = base_config();
    cfg.normalization = Normalization::fixed_initial;
    cfg.outputs = {OutputKind::alpha_curve};
    CHECK_THROWS_AS(scenario::validate(cfg), Error);
}

TEST_CASE("identical configs produce byte-identical exports") {
    ScenarioConfig cfg = base_config();
    cfg.t_end = 10.0;
    const auto a = io::to_json(scenario::run_scenario(cfg));
    const auto b = io::to_json(scenario::run_scenario(cfg));
    CHECK(a == b);
    const auto csv_a = io::to_csv(scenario::run_scenario(cfg), OutputKind::populations);
    const auto csv_b = io::to_csv(scenario::run_scenario(cfg), OutputKind::populations);
    CHECK(csv_a == csv_b);
}

TEST_CASE("CSV schemas") {
    ScenarioConfig cfg = base_config();
    cfg.t_end = 0.2;
    cfg.outputs = {OutputKind::populations, OutputKind::alpha_curve};
    const auto traj = scenario::run_scenario(cfg);
    const std::string pops = io::to_csv(traj, OutputKind::populations);
    CHECK(pops.substr(0, pops.find('\n')) == "t_ms,p0,p1,p2,p3,valid");
    const std::string alpha = io::to_csv(traj, OutputKind::alpha_curve);
    CHECK(alpha.substr(0, alpha.find('\n')) == "t_ms,alpha,alpha_over_epsilon");

    ScenarioConfig single = base_config();
    single.initial_state = InitialState::cat;
    single.t_end = 0.1;
    single.t_step = 0.2;  // one sample at t = 0
    single.outputs = {OutputKind::wigner, OutputKind::momentum_marginal};
    const auto wtraj = scenario::run_scenario(single);
    REQUIRE(wtraj.samples.size() == 1);
    const std::string wig = io::to_csv(wtraj, OutputKind::wigner);
    CHECK(wig.substr(0, wig.find('\n')) == "q,p,w");
    CHECK(std::count(wig.begin(), wig.end(), '\n') == 65);  // header + 8x8 rows
    const std::string marg = io::to_csv(wtraj, OutputKind::momentum_marginal);
    CHECK(marg.substr(0, marg.find('\n')) == "p,m");
}

TEST_CASE("deviation series export/ingest round trip is bit exact") {
    ScenarioConfig cfg = base_config();
    cfg.t_end = 5.0;
    cfg.t_step = 0.5;
    const auto traj = scenario::run_scenario(cfg);

    io::DeviationSeries series;
    for (const auto& s : traj.samples)
        series.emplace_back(s.t_ms, states::make_deviation(s.sigma));

    const auto path = temp_path("qrelax_series_roundtrip.json");
    io::export_deviation_series(series, path.string());
    const auto loaded = io::ingest_deviation_series(path.string());
    REQUIRE(loaded.size() == series.size());
    for (size_t k = 0; k < series.size(); ++k) {
        CHECK(loaded[k].first == series[k].first);
        const Matrix &a = series[k].second.mat, &b = loaded[k].second.mat;
        // bit-identical, not merely close
        CHECK(std::memcmp(a.data(), b.data(), sizeof(linalg::Complex) * 16) == 0);
    }

    const auto path2 = temp_path("qrelax_series_roundtrip2.json");
    io::export_deviation_series(loaded, path2.string());
    CHECK(slurp(path) == slurp(path2));
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("trajectory JSON doubles as a deviation series") {
    ScenarioConfig cfg = base_config();
    cfg.t_end = 2.0;
    cfg.t_step = 1.0;
    const auto traj = scenario::run_scenario(cfg);
    const auto path = temp_path("qrelax_traj_as_series.json");
    io::export_trajectory(traj, io::Format::json, path.string());
    const auto series = io::ingest_deviation_series(path.string());
    REQUIRE(series.size() == traj.samples.size());
    for (size_t k = 0; k < series.size(); ++k)
        CHECK(linalg::max_abs(series[k].second.mat - traj.samples[k].sigma) == 0.0);
    std::filesystem::remove(path);
}

TEST_CASE("single-record round trip through export") {
    const auto sys = states::make_spin_system(3, 1e-5);
    io::DeviationSeries series;
    series.emplace_back(0.0, states::initial_deviation(sys, states::basis_ket(4, 3)));
    const auto path = temp_path("qrelax_single_record.json");
    io::export_deviation_series(series, path.string());
    const auto loaded = io::ingest_deviation_series(path.string());
    REQUIRE(loaded.size() == 1);
    CHECK(linalg::max_abs(loaded[0].second.mat - series[0].second.mat) == 0.0);
    std::filesystem::remove(path);
}

TEST_CASE("ingestion rejections") {
    const auto path = temp_path("qrelax_bad_series.json");

    SUBCASE("missing file") {
        CHECK_THROWS_AS(io::ingest_deviation_series("/nonexistent/nope.json"), IoError);
    }
    SUBCASE("garbage json") {
        std::ofstream(path) << "this is not json";
        CHECK_THROWS_AS(io::ingest_deviation_series(path.string()), ParseError);
    }
    SUBCASE("record with significant trace") {
        std::ofstream(path) << R"({"records":[{"t_ms":0,"sigma":[
            [[0.1,0],[0,0],[0,0],[0,0]],
            [[0,0],[0,0],[0,0],[0,0]],
            [[0,0],[0,0],[0,0],[0,0]],
            [[0,0],[0,0],[0,0],[0,0]]]}]})";
        CHECK_THROWS_AS(io::ingest_deviation_series(path.string()), NonPhysicalRecord);
    }
    SUBCASE("non-increasing times") {
        std::ofstream(path) << R"({"records":[
            {"t_ms":1,"sigma":[[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],
                               [[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]},
            {"t_ms":1,"sigma":[[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],
                               [[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]}]})";
        CHECK_THROWS_AS(io::ingest_deviation_series(path.string()), NonPhysicalRecord);
    }
    SUBCASE("malformed record") {
        std::ofstream(path) << R"({"records":[{"t_ms":0}]})";
        CHECK_THROWS_AS(io::ingest_deviation_series(path.string()), ParseError);
    }
    std::filesystem::remove(path);
}

TEST_CASE("config loading") {
    const auto path = temp_path("qrelax_config.json");
    std::ofstream(path) << R"({
        "epsilon": 1e-5,
        "spin": "3/2",
        "initial_state": "cat",
        "taus": {"tau01": 4.6, "tau02": 4.7, "tau12": 11.1, "tau1": 20.8, "tau2": 23.8},
        "t_start": 0.0, "t_end": 30.0, "t_step": 0.5,
        "normalization": "alpha",
        "outputs": ["concurrence", "alpha_curve"]
    })";
    const auto cfg = io::load_config(path.string());
    CHECK(cfg.twice_spin == 3);
    CHECK(cfg.initial_state == InitialState::cat);
    CHECK(cfg.taus.tau2 == 23.8);
    CHECK(cfg.normalization == Normalization::alpha);
    REQUIRE(cfg.outputs.size() == 2);
    CHECK(cfg.outputs[0] == OutputKind::concurrence);
    std::filesystem::remove(path);
}

TEST_CASE("config loading rejects unknown enum values") {
    const auto path = temp_path("qrelax_config_bad.json");
    std::ofstream(path) << R"({
        "initial_state": "basis22",
        "taus": {"tau01": 4.6, "tau02": 4.7, "tau12": 11.1, "tau1": 20.8, "tau2": 23.8},
        "t_start": 0.0, "t_end": 30.0, "t_step": 0.5,
        "normalization": "alpha"
    })";
    CHECK_THROWS_AS(io::load_config(path.string()), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("config with explicit ket amplitudes") {
    const auto path = temp_path("qrelax_config_ket.json");
    const std::string r = io::format_double(1.0 / std::sqrt(2.0));
    std::ofstream(path) << R"({
        "initial_state": [[)" << r << R"(,0],[0,0],[0,0],[)" << r << R"(,0]],
        "taus": {"tau01": 4.6, "tau02": 4.7, "tau12": 11.1, "tau1": 20.8, "tau2": 23.8},
        "t_start": 0.0, "t_end": 1.0, "t_step": 0.5,
        "normalization": "alpha"
    })";
    const auto cfg = io::load_config(path.string());
    CHECK(cfg.initial_state == InitialState::custom);
    const auto psi = scenario::initial_ket(cfg);
    CHECK(linalg::max_abs(psi.amps - states::cat_ket(4).amps) < 1e-12);
    std::filesystem::remove(path);
}

TEST_CASE("normalize_series reproduces the simulated alphas") {
    ScenarioConfig cfg = base_config();
    cfg.t_end = 10.0;
    cfg.t_step = 1.0;
    const auto traj = scenario::run_scenario(cfg);
    io::DeviationSeries series;
    for (const auto& s : traj.samples) series.emplace_back(s.t_ms, states::make_deviation(s.sigma));
    const auto sys = states::make_spin_system(cfg.twice_spin, cfg.epsilon);
    const auto renorm = scenario::normalize_series(series, sys, {OutputKind::populations});
    REQUIRE(renorm.samples.size() == traj.samples.size());
    for (size_t k = 0; k < renorm.samples.size(); ++k) {
        CHECK(*renorm.samples[k].alpha == doctest::Approx(*traj.samples[k].alpha).epsilon(1e-14));
        CHECK(linalg::max_abs(renorm.samples[k].rho - traj.samples[k].rho) < 1e-14);
    }
}

TEST_CASE("format_double round trips") {
    for (double v : {0.0, 1.0, -0.5, 1e-5, 9.1, 0.6977585398414784, 1.0 / 3.0}) {
        const std::string s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
}
