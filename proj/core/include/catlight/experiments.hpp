#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "catlight/dicke.hpp"
#include "catlight/linalg.hpp"

namespace catlight {

enum class ExperimentKind { interference_dynamics, negativity_sweep, gamma_scaling, custom };
enum class LightKind { coherent, cat };
enum class RunMode { full, xfa_sg, xfa_gp };

std::string to_string(ExperimentKind kind);
std::string to_string(LightKind light);
std::string to_string(RunMode mode);

/// Batch experiment description. Field relevance depends on kind:
///   interference_dynamics: single alpha0 time series, cls/itf splits.
///   negativity_sweep: alpha0_sweep, negativity at t_max per amplitude.
///   gamma_scaling: gamma_sweep x lights, full-vs-ensemble trace distance at
///                  t_max plus fitted log-log slopes.
///   custom: single-run time series with per-trajectory columns.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::custom;
  DickeConfig physics;
  LightKind light = LightKind::cat;
  std::vector<LightKind> lights;       // gamma_scaling only
  Complex alpha0{0.5, 0.0};
  std::vector<double> alpha0_sweep;    // negativity_sweep only
  std::vector<double> gamma_sweep;     // gamma_scaling only
  std::vector<RunMode> modes;
  double fit_floor = 1e-12;
  std::size_t stride = 1;              // CSV sample thinning
  std::string output;                  // primary CSV name inside out_dir
  std::filesystem::path out_dir = ".";
  int threads = 0;                     // 0 = hardware concurrency
};

/// Defaults reproducing the reference experiments of each kind.
ExperimentSpec default_spec(ExperimentKind kind);

/// Checks ranges, grid monotonicity and mode availability. Throws one
/// ConfigError listing every violation. Non-fatal observations (such as a
/// light-state truncation deficit above 1e-12 at the configured cutoff) are
/// appended to *warnings when provided. Validating a valid spec returns it
/// unchanged, so the defaults merge is idempotent.
ExperimentSpec validate(const ExperimentSpec& spec,
                        std::vector<std::string>* warnings = nullptr);

/// Canonical one-line rendering stamped into every CSV this spec writes.
std::string resolved_config(const ExperimentSpec& spec);

/// Runs the experiment and returns the written CSV paths. Deterministic:
/// identical specs produce byte-identical files at any thread count.
/// Simulation guard errors are annotated with the failing grid point.
std::vector<std::filesystem::path> run(const ExperimentSpec& spec);

/// Reads the [<kind>] section of a flat key-value config file on top of the
/// kind's defaults. Unknown keys, bad values and a missing section are
/// ConfigErrors.
ExperimentSpec spec_from_file(ExperimentKind kind, const std::filesystem::path& path);
ExperimentSpec spec_from_string(ExperimentKind kind, const std::string& text);

}  // namespace catlight
