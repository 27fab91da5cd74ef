#include "qrelax/io.hpp"

#include "qrelax/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qrelax::io {

using nlohmann::json;

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw ParseError("unknown format '" + s + "' (expected csv or json)");
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write to '" + path + "' failed");
}

json complex_to_json(const linalg::Complex& c) {
    return json::array({c.real(), c.imag()});
}

linalg::Complex json_to_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(where + ": complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const linalg::Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

linalg::Matrix json_to_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": matrix must be a nested list");
    const auto n = j.size();
    linalg::Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw ParseError(where + ": matrix rows must all have length " + std::to_string(n));
        for (size_t k = 0; k < n; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                json_to_complex(j[i][k], where);
    }
    return m;
}

int parse_spin(const json& j) {
    double spin = 1.5;
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                spin = std::stod(s);
            } else {
                spin = std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw ParseError("spin: cannot parse '" + s + "'");
        }
    } else if (j.is_number()) {
        spin = j.get<double>();
    } else {
        throw ParseError("spin: expected a number or a fraction string");
    }
    const double doubled = 2.0 * spin;
    if (std::abs(doubled - std::round(doubled)) > 1e-9 || doubled < 1.0)
        throw ParseError("spin: must be a positive half-integer");
    return static_cast<int>(std::round(doubled));
}

scenario::InitialState parse_initial_state(const json& j, scenario::ScenarioConfig& cfg) {
    if (j.is_array()) {
        cfg.custom_ket.clear();
        for (size_t i = 0; i < j.size(); ++i)
            cfg.custom_ket.push_back(json_to_complex(j[i], "initial_state"));
        return scenario::InitialState::custom;
    }
    if (!j.is_string()) throw ParseError("initial_state: expected a name or amplitude list");
    const std::string s = j.get<std::string>();
    if (s == "basis00") return scenario::InitialState::basis00;
    if (s == "basis01") return scenario::InitialState::basis01;
    if (s == "basis10") return scenario::InitialState::basis10;
    if (s == "basis11") return scenario::InitialState::basis11;
    if (s == "cat") return scenario::InitialState::cat;
    throw ParseError("initial_state: unknown value '" + s +
                     "' (expected basis00|basis01|basis10|basis11|cat or amplitudes)");
}

scenario::Normalization parse_normalization(const std::string& s) {
    if (s == "fixed_initial") return scenario::Normalization::fixed_initial;
    if (s == "fixed_equilibrium") return scenario::Normalization::fixed_equilibrium;
    if (s == "alpha") return scenario::Normalization::alpha;
    throw ParseError("normalization: unknown value '" + s +
                     "' (expected fixed_initial|fixed_equilibrium|alpha)");
}

scenario::OutputKind parse_output_kind(const std::string& s) {
    if (s == "populations") return scenario::OutputKind::populations;
    if (s == "alpha_curve") return scenario::OutputKind::alpha_curve;
    if (s == "concurrence") return scenario::OutputKind::concurrence;
    if (s == "wigner") return scenario::OutputKind::wigner;
    if (s == "momentum_marginal") return scenario::OutputKind::momentum_marginal;
    throw ParseError("outputs: unknown kind '" + s + "'");
}

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ParseError("config: missing or non-numeric '" + key + "'");
    return j.at(key).get<double>();
}

}  // namespace

scenario::ScenarioConfig load_config(const std::string& path) {
    const json j = read_json_file(path);
    if (!j.is_object()) throw ParseError(path + ": config must be a JSON object");
    scenario::ScenarioConfig cfg;
    try {
        if (j.contains("epsilon")) cfg.epsilon = require_number(j, "epsilon");
        if (j.contains("spin")) cfg.twice_spin = parse_spin(j.at("spin"));
        if (!j.contains("initial_state")) throw ParseError("config: missing 'initial_state'");
        cfg.initial_state = parse_initial_state(j.at("initial_state"), cfg);
        if (!j.contains("taus") || !j.at("taus").is_object())
            throw ParseError("config: missing 'taus' object");
        const json& taus = j.at("taus");
        cfg.taus.tau01 = require_number(taus, "tau01");
        cfg.taus.tau02 = require_number(taus, "tau02");
        cfg.taus.tau12 = require_number(taus, "tau12");
        cfg.taus.tau1 = require_number(taus, "tau1");
        cfg.taus.tau2 = require_number(taus, "tau2");
        cfg.t_start = require_number(j, "t_start");
        cfg.t_end = require_number(j, "t_end");
        cfg.t_step = require_number(j, "t_step");
        if (!j.contains("normalization") || !j.at("normalization").is_string())
            throw ParseError("config: missing 'normalization'");
        cfg.normalization = parse_normalization(j.at("normalization").get<std::string>());
        cfg.outputs.clear();
        if (j.contains("outputs")) {
            if (!j.at("outputs").is_array()) throw ParseError("config: 'outputs' must be a list");
            for (const json& o : j.at("outputs")) {
                if (!o.is_string()) throw ParseError("config: output kinds are strings");
                cfg.outputs.push_back(parse_output_kind(o.get<std::string>()));
            }
        } else {
            cfg.outputs.push_back(scenario::OutputKind::populations);
        }
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return cfg;
}

DeviationSeries ingest_deviation_series(const std::string& path) {
    const json root = read_json_file(path);
    const json* records = nullptr;
    if (root.is_object() && root.contains("records") && root.at("records").is_array())
        records = &root.at("records");
    else if (root.is_array())
        records = &root;
    else
        throw ParseError(path + ": expected a 'records' list");

    DeviationSeries series;
    series.reserve(records->size());
    size_t index = 0;
    for (const json& rec : *records) {
        const std::string where = "record " + std::to_string(index);
        if (!rec.is_object() || !rec.contains("t_ms") || !rec.at("t_ms").is_number())
            throw ParseError(where + ": missing numeric 't_ms'");
        if (!rec.contains("sigma")) throw ParseError(where + ": missing 'sigma'");
        const double t = rec.at("t_ms").get<double>();
        linalg::Matrix m = json_to_matrix(rec.at("sigma"), where);

        if (!linalg::all_finite(m)) throw NonPhysicalRecord(where + ": non-finite entries");
        const double defect = linalg::hermiticity_defect(m);
        if (defect > 1e-8)
            std::cerr << "warning: " << where << ": Hermiticity correction of " << defect
                      << " applied\n";
        m = linalg::symmetrized(m);
        const double tr = m.trace().real();
        if (std::abs(tr) >= 1e-8)
            throw NonPhysicalRecord(where + ": trace " + format_double(tr) + " is not ~0");
        // Remove the identity component unless it is already at roundoff level;
        // sub-roundoff corrections would spoil bit-exact round trips.
        if (std::abs(tr) > 1e-13 * std::max(1.0, linalg::max_abs(m)))
            m -= (tr / static_cast<double>(m.rows())) *
                 linalg::Matrix::Identity(m.rows(), m.cols());
        if (!series.empty() && !(t > series.back().first))
            throw NonPhysicalRecord(where + ": times must be strictly increasing");
        series.emplace_back(t, states::make_deviation(std::move(m)));
        ++index;
    }
    return series;
}

void export_deviation_series(const DeviationSeries& series, const std::string& path) {
    json records = json::array();
    for (const auto& [t, sigma] : series) {
        json rec;
        rec["t_ms"] = t;
        rec["sigma"] = matrix_to_json(sigma.mat);
        records.push_back(std::move(rec));
    }
    json root;
    root["records"] = std::move(records);
    write_file(path, root.dump(1) + "\n");
}

std::string to_csv(const scenario::Trajectory& traj, scenario::OutputKind kind) {
    using scenario::OutputKind;
    std::ostringstream os;
    const bool single = traj.samples.size() == 1;
    switch (kind) {
        case OutputKind::populations: {
            os << "t_ms,p0,p1,p2,p3,valid\n";
            for (const auto& s : traj.samples) {
                os << format_double(s.t_ms);
                for (int k = 0; k < 4; ++k) os << ',' << format_double(s.rho(k, k).real());
                os << ',' << (s.valid ? '1' : '0') << '\n';
            }
            break;
        }
        case OutputKind::alpha_curve: {
            os << "t_ms,alpha,alpha_over_epsilon\n";
            for (const auto& s : traj.samples) {
                if (!s.alpha) throw Error("to_csv: trajectory has no alpha data");
                os << format_double(s.t_ms) << ',' << format_double(*s.alpha) << ','
                   << format_double(*s.alpha / traj.config.epsilon) << '\n';
            }
            break;
        }
        case OutputKind::concurrence: {
            os << "t_ms,concurrence\n";
            for (const auto& s : traj.samples) {
                if (!s.concurrence) throw Error("to_csv: trajectory has no concurrence data");
                os << format_double(s.t_ms) << ',' << format_double(*s.concurrence) << '\n';
            }
            break;
        }
        case OutputKind::wigner: {
            os << (single ? "q,p,w\n" : "t_ms,q,p,w\n");
            for (const auto& s : traj.samples) {
                if (!s.wigner) throw Error("to_csv: trajectory has no wigner data");
                const int g = 2 * s.wigner->dim;
                for (int q = 0; q < g; ++q)
                    for (int p = 0; p < g; ++p) {
                        if (!single) os << format_double(s.t_ms) << ',';
                        os << q << ',' << p << ',' << format_double(s.wigner->values(q, p)) << '\n';
                    }
            }
            break;
        }
        case OutputKind::momentum_marginal: {
            os << (single ? "p,m\n" : "t_ms,p,m\n");
            for (const auto& s : traj.samples) {
                if (!s.momentum_marginal) throw Error("to_csv: trajectory has no marginal data");
                for (size_t p = 0; p < s.momentum_marginal->size(); ++p) {
                    if (!single) os << format_double(s.t_ms) << ',';
                    os << p << ',' << format_double((*s.momentum_marginal)[p]) << '\n';
                }
            }
            break;
        }
    }
    return os.str();
}

std::string to_json(const scenario::Trajectory& traj) {
    json records = json::array();
    for (const auto& s : traj.samples) {
        json rec;
        rec["t_ms"] = s.t_ms;
        rec["sigma"] = matrix_to_json(s.sigma);
        rec["rho"] = matrix_to_json(s.rho);
        rec["valid"] = s.valid;
        if (s.alpha) rec["alpha"] = *s.alpha;
        if (s.concurrence) rec["concurrence"] = *s.concurrence;
        if (s.wigner) {
            json rows = json::array();
            const int g = 2 * s.wigner->dim;
            for (int q = 0; q < g; ++q) {
                json row = json::array();
                for (int p = 0; p < g; ++p) row.push_back(s.wigner->values(q, p));
                rows.push_back(std::move(row));
            }
            rec["wigner"] = std::move(rows);
        }
        if (s.momentum_marginal) rec["momentum_marginal"] = *s.momentum_marginal;
        records.push_back(std::move(rec));
    }
    json root;
    root["records"] = std::move(records);
    return root.dump(1) + "\n";
}

void export_trajectory(const scenario::Trajectory& traj, Format format, const std::string& path) {
    if (traj.samples.empty()) throw Error("export_trajectory: trajectory is empty");
    if (format == Format::json) {
        write_file(path, to_json(traj));
        return;
    }
    const auto& kinds = traj.config.outputs;
    if (kinds.empty()) throw Error("export_trajectory: no outputs configured");
    if (kinds.size() == 1 && path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        write_file(path, to_csv(traj, kinds.front()));
        return;
    }
    std::filesystem::path dir(path);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + path + "': " + ec.message());
    for (const auto kind : kinds)
        write_file((dir / (scenario::to_string(kind) + ".csv")).string(), to_csv(traj, kind));
}

}  // namespace qrelax::io
