// io.hpp — file formats: JSON scenario configs, JSON deviation-matrix series,
// and CSV/JSON trajectory export. All floats are written as shortest
// round-trip decimals with '.' separator; files carry no timestamps, so equal
// inputs produce byte-identical outputs.

#pragma once

#include "qrelax/scenario.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qrelax::io {

enum class Format { csv, json };

Format parse_format(const std::string& s);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

scenario::ScenarioConfig load_config(const std::string& path);

using DeviationSeries = std::vector<std::pair<double, states::DeviationMatrix>>;

// Reads {"records": [{"t_ms": ..., "sigma": [[[re,im],...],...]}, ...]}.
// Each record is symmetrized ((m+m^dagger)/2, stderr warning if the correction
// exceeds 1e-8) and trace-checked: |trace| >= 1e-8 rejects the record, smaller
// traces are removed by subtracting the mean diagonal. Times must be strictly
// increasing. Throws ParseError (with record number) or NonPhysicalRecord
// (with the violated invariant).
DeviationSeries ingest_deviation_series(const std::string& path);

void export_deviation_series(const DeviationSeries& series, const std::string& path);

// CSV schemas per output kind:
//   populations:        t_ms,p0,p1,p2,p3,valid
//   alpha_curve:        t_ms,alpha,alpha_over_epsilon
//   concurrence:        t_ms,concurrence
//   wigner:             q,p,w            (single sample)  /  t_ms,q,p,w
//   momentum_marginal:  p,m              (single sample)  /  t_ms,p,m
std::string to_csv(const scenario::Trajectory& traj, scenario::OutputKind kind);

// Full record mirror of the trajectory, complex matrices included.
std::string to_json(const scenario::Trajectory& traj);

// json: writes one file at `path`. csv: with a single requested output kind
// and a path ending in .csv writes that file, otherwise treats `path` as a
// directory and writes one <kind>.csv per requested kind.
void export_trajectory(const scenario::Trajectory& traj, Format format, const std::string& path);

}  // namespace qrelax::io
