#pragma once

// Command-line front end: resolve a run specification from presets, config
// file, and flags (later sources override earlier ones), execute the sweeps,
// and write one CSV per curve plus a manifest and a gnuplot script into the
// output directory.  A manifest reloads into the same RunSpec, so reruns are
// byte-identical.

#include <optional>
#include <string>
#include <vector>

#include "coopsim/engine.hpp"

namespace coopsim::cli {

struct CurveSpec {
    dstc::CodeScheme scheme = dstc::CodeScheme::DAlamouti;
    engine::Alloc alloc = engine::Alloc::Jpa;
    std::size_t n_relays = 1;
};

struct RunSpec {
    engine::SystemConfig base;        // per-curve fields overridden per curve
    std::vector<CurveSpec> curves;
    std::vector<double> ebn0;
    std::string out_dir;
    std::string preset = "custom";
    std::string kernels;              // empty: auto-select
};

// Throws Usage on unknown flags, bad values, or a missing output directory.
// Returns nullopt when help was requested (help text already printed).
std::optional<RunSpec> parse_args(int argc, const char* const* argv);

// "start:step:stop" inclusive (step > 0), or a single value.
std::vector<double> parse_range(const std::string& text);

// Resolved spec as manifest JSON text, and back.
std::string manifest_text(const RunSpec& spec);
RunSpec parse_manifest(const std::string& text);

std::string curve_filename(const CurveSpec& curve);
std::string plot_script_text(const RunSpec& spec);

// Runs every curve and writes CSVs, manifest.json, and plot.gp atomically.
// Throws with the failing curve named; exit-code mapping is the caller's.
void run(const RunSpec& spec);

}  // namespace coopsim::cli
