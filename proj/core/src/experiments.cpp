#include "catlight/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "catlight/analysis.hpp"
#include "catlight/errors.hpp"
#include "catlight/observables.hpp"
#include "catlight/photon.hpp"
#include "catlight/trajectory.hpp"

namespace catlight {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::interference_dynamics: return "interference_dynamics";
    case ExperimentKind::negativity_sweep: return "negativity_sweep";
    case ExperimentKind::gamma_scaling: return "gamma_scaling";
    case ExperimentKind::custom: return "custom";
  }
  return "?";
}

std::string to_string(LightKind light) {
  return light == LightKind::cat ? "cat" : "coherent";
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::full: return "full";
    case RunMode::xfa_sg: return "xfa_sg";
    case RunMode::xfa_gp: return "xfa_gp";
  }
  return "?";
}

namespace {

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = std::pow(10.0, llo + f * (lhi - llo));
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += fmt(xs[i]);
  }
  return s;
}

/// Runs fn(0..n-1) on `threads` workers (0 = hardware concurrency) and
/// returns results in index order; with any thread count the output is
/// identical. The lowest-index exception wins, for the same reason.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, int threads, Fn&& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(n, 1));

  std::vector<R> results(n);
  std::vector<std::exception_ptr> errors(n);

  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          results[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }
  return results;
}

std::string grid_tag(double gamma, Complex alpha0) {
  std::string s = "[gamma=" + fmt(gamma) + ", alpha0=" + fmt(alpha0.real());
  if (alpha0.imag() != 0.0) s += "+" + fmt(alpha0.imag()) + "i";
  return s + "] ";
}

/// Reruns guard exceptions with the failing grid point prepended, keeping
/// the concrete type so exit-code mapping still works.
template <class Fn>
auto annotate_grid(double gamma, Complex alpha0, Fn&& fn) {
  try {
    return fn();
  } catch (const NormDrift& e) {
    throw NormDrift(grid_tag(gamma, alpha0) + e.what());
  } catch (const TraceDrift& e) {
    throw TraceDrift(grid_tag(gamma, alpha0) + e.what());
  }
}

PDistribution make_light_p(LightKind light, Complex alpha0) {
  return light == LightKind::cat ? cat_p(alpha0) : coherent_p(alpha0);
}

FockVector make_light_fock(LightKind light, Complex alpha0, std::size_t cutoff) {
  return light == LightKind::cat ? cat_fock(alpha0, cutoff)
                                 : coherent_fock(alpha0, cutoff);
}

// Per-sample reduced matrices of one mode, on the common time grid.
struct ModeSeries {
  std::vector<double> times;
  std::vector<TwoBodyMatrix> rho2;
  std::vector<TwoBodyMatrix> cls;  // empty when the split is unavailable
  std::vector<TwoBodyMatrix> itf;
  std::vector<std::vector<TrajectoryState>> trajectories;  // xfa modes, on request
};

ModeSeries run_mode(RunMode mode, const ExperimentSpec& spec, LightKind light,
                    Complex alpha0, bool want_split, bool keep_trajectories) {
  const DickeConfig& cfg = spec.physics;
  ModeSeries out;
  if (mode == RunMode::full) {
    const FockVector photon0 = make_light_fock(light, alpha0, cfg.cutoff);
    const bool decompose = want_split && std::abs(alpha0) > 1e-12;
    evolve_full(cfg, photon0, [&](const FullState& s) {
      out.times.push_back(s.time);
      out.rho2.push_back(partial_trace_photon(s));
      if (decompose) {
        const Complex alpha0_t = alpha0 * std::exp(Complex{0.0, -cfg.omega * s.time});
        const InterferenceParts parts = decompose_interference(s, alpha0_t);
        out.cls.push_back(parts.classical());
        out.itf.push_back(parts.interference());
      }
    });
    return out;
  }

  const TheoryMode theory =
      mode == RunMode::xfa_sg ? TheoryMode::sudarshan_glauber : TheoryMode::generalized_p;
  EnsembleSeries ens =
      evolve_ensemble(make_light_p(light, alpha0), cfg, theory, keep_trajectories);
  out.times = std::move(ens.times);
  out.rho2 = std::move(ens.assembled);
  if (want_split) {
    out.cls = std::move(ens.classical_part);
    out.itf = std::move(ens.interference_part);
  }
  out.trajectories = std::move(ens.trajectories);
  return out;
}

std::vector<double> strided(const std::vector<double>& xs, std::size_t stride) {
  std::vector<double> out;
  out.reserve(xs.size() / stride + 1);
  for (std::size_t i = 0; i < xs.size(); i += stride) out.push_back(xs[i]);
  return out;
}

template <class T, class Fn>
std::vector<double> strided_map(const std::vector<T>& xs, std::size_t stride, Fn&& fn) {
  std::vector<double> out;
  out.reserve(xs.size() / stride + 1);
  for (std::size_t i = 0; i < xs.size(); i += stride) out.push_back(fn(xs[i]));
  return out;
}

double corner_abs(const TwoBodyMatrix& r) {
  return std::abs(r.m(basis::kUpUp, basis::kDownDown));
}

double single_excitation(const TwoBodyMatrix& r) {
  return std::real(r.m(basis::kUpDown, basis::kUpDown));
}

// generalized_p assemblies are not unit-trace (their trajectory traces follow
// <psi_bra|psi_ket>); state-level metrics need the normalized matrix.
TwoBodyMatrix as_state(TwoBodyMatrix r) {
  const double tr = std::real(r.m.trace());
  if (tr > 0.0 && std::abs(tr - 1.0) > 1e-12) r.m *= Complex{1.0 / tr, 0.0};
  return r;
}

std::filesystem::path ensure_out_path(const ExperimentSpec& spec,
                                      const std::string& name) {
  std::filesystem::create_directories(spec.out_dir);
  return spec.out_dir / name;
}

std::vector<std::filesystem::path> run_time_series(const ExperimentSpec& spec,
                                                   bool per_trajectory_columns) {
  const std::size_t n_modes = spec.modes.size();
  std::vector<ModeSeries> series = parallel_map<ModeSeries>(
      n_modes, spec.threads, [&spec, per_trajectory_columns](std::size_t i) {
        return annotate_grid(spec.physics.gamma, spec.alpha0, [&] {
          return run_mode(spec.modes[i], spec, spec.light, spec.alpha0,
                          /*want_split=*/true, per_trajectory_columns);
        });
      });

  const std::size_t stride = spec.stride;
  ObservableSeries table;
  table.time = strided(series.front().times, stride);

  const auto full_it = std::find(spec.modes.begin(), spec.modes.end(), RunMode::full);
  const ModeSeries* full =
      full_it == spec.modes.end() ? nullptr : &series[full_it - spec.modes.begin()];

  for (std::size_t i = 0; i < n_modes; ++i) {
    const std::string p = to_string(spec.modes[i]);
    const ModeSeries& s = series[i];
    table.add_column(p + "_corner_abs", strided_map(s.rho2, stride, corner_abs));
    table.add_column(p + "_single_exc", strided_map(s.rho2, stride, single_excitation));
    if (!s.cls.empty()) {
      table.add_column(p + "_single_exc_cls",
                       strided_map(s.cls, stride, single_excitation));
      table.add_column(p + "_single_exc_itf",
                       strided_map(s.itf, stride, single_excitation));
      table.add_column(p + "_corner_cls_abs", strided_map(s.cls, stride, corner_abs));
      table.add_column(p + "_corner_itf_abs", strided_map(s.itf, stride, corner_abs));
    }
    table.add_column(p + "_negativity", strided_map(s.rho2, stride, [](const TwoBodyMatrix& r) {
                       return negativity(as_state(r));
                     }));
    if (full != nullptr && spec.modes[i] != RunMode::full) {
      std::vector<double> dist, dev;
      for (std::size_t k = 0; k < s.rho2.size(); k += stride) {
        dist.push_back(trace_distance(as_state(s.rho2[k]), full->rho2[k]));
        dev.push_back(negativity(as_state(s.rho2[k])) - negativity(full->rho2[k]));
      }
      table.add_column(p + "_trace_distance", std::move(dist));
      table.add_column(p + "_negativity_dev", std::move(dev));
    }
    if (per_trajectory_columns) {
      for (std::size_t a = 0; a < s.trajectories.size(); ++a) {
        const auto& traj = s.trajectories[a];
        const std::string tp = p + "_traj" + std::to_string(a);
        std::vector<double> se_re, se_im, c_re, c_im;
        for (std::size_t k = 0; k < traj.size(); k += stride) {
          const Complex se = traj[k].rho(basis::kUpDown, basis::kUpDown);
          const Complex c = traj[k].rho(basis::kUpUp, basis::kDownDown);
          se_re.push_back(se.real());
          se_im.push_back(se.imag());
          c_re.push_back(c.real());
          c_im.push_back(c.imag());
        }
        table.add_column(tp + "_single_exc_re", std::move(se_re));
        table.add_column(tp + "_single_exc_im", std::move(se_im));
        table.add_column(tp + "_corner_re", std::move(c_re));
        table.add_column(tp + "_corner_im", std::move(c_im));
      }
    }
  }

  const auto path = ensure_out_path(spec, spec.output);
  write_csv(table, path.string(), resolved_config(spec));
  return {path};
}

std::vector<std::filesystem::path> run_negativity_sweep(const ExperimentSpec& spec) {
  struct Row {
    std::vector<double> negativities;  // per mode
  };
  const std::size_t n = spec.alpha0_sweep.size();
  std::vector<Row> rows = parallel_map<Row>(n, spec.threads, [&spec](std::size_t i) {
    const Complex alpha0{spec.alpha0_sweep[i], 0.0};
    return annotate_grid(spec.physics.gamma, alpha0, [&] {
      Row row;
      for (const RunMode mode : spec.modes) {
        const ModeSeries s = run_mode(mode, spec, spec.light, alpha0,
                                      /*want_split=*/false, /*keep_trajectories=*/false);
        row.negativities.push_back(negativity(as_state(s.rho2.back())));
      }
      return row;
    });
  });

  std::vector<std::pair<std::string, std::vector<double>>> columns;
  for (std::size_t m = 0; m < spec.modes.size(); ++m) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = rows[i].negativities[m];
    columns.emplace_back("negativity_" + to_string(spec.modes[m]), std::move(col));
  }

  const auto path = ensure_out_path(spec, spec.output);
  write_csv_table("alpha0", spec.alpha0_sweep, columns, path.string(),
                  resolved_config(spec));
  return {path};
}

std::vector<std::filesystem::path> run_gamma_scaling(const ExperimentSpec& spec) {
  const std::size_t n_gamma = spec.gamma_sweep.size();
  const std::size_t n_jobs = n_gamma * spec.lights.size();

  std::vector<double> distances = parallel_map<double>(
      n_jobs, spec.threads, [&spec, n_gamma](std::size_t job) {
        const LightKind light = spec.lights[job / n_gamma];
        DickeConfig cfg = spec.physics;
        cfg.gamma = spec.gamma_sweep[job % n_gamma];
        return annotate_grid(cfg.gamma, spec.alpha0, [&] {
          const FockVector photon0 = make_light_fock(light, spec.alpha0, cfg.cutoff);
          TwoBodyMatrix full_final;
          evolve_full(cfg, photon0, [&full_final](const FullState& s) {
            full_final = partial_trace_photon(s);
          });

          const PDistribution light_p = make_light_p(light, spec.alpha0);
          std::vector<TrajectoryState> finals;
          finals.reserve(light_p.atoms.size());
          for (const PAtom& atom : light_p.atoms) {
            TrajectoryState last;
            evolve_trajectory(atom, cfg, TheoryMode::sudarshan_glauber,
                              [&last](const TrajectoryState& s) { last = s; });
            finals.push_back(std::move(last));
          }
          const TwoBodyMatrix xfa_final = assemble_density(finals);
          return trace_distance(full_final, xfa_final);
        });
      });

  std::vector<std::pair<std::string, std::vector<double>>> columns;
  for (std::size_t l = 0; l < spec.lights.size(); ++l) {
    columns.emplace_back(
        "distance_" + to_string(spec.lights[l]),
        std::vector<double>(distances.begin() + l * n_gamma,
                            distances.begin() + (l + 1) * n_gamma));
  }

  const auto path = ensure_out_path(spec, spec.output);
  write_csv_table("gamma", spec.gamma_sweep, columns, path.string(),
                  resolved_config(spec));

  // Fitted log-log slopes, one row per light kind.
  std::string slopes_name = spec.output;
  const auto dot = slopes_name.rfind('.');
  slopes_name = slopes_name.substr(0, dot) + "_slopes.csv";
  const auto slopes_path = ensure_out_path(spec, slopes_name);
  std::ofstream out(slopes_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + slopes_path.string() + "' for writing");
  out << "# resolved-config: " << resolved_config(spec) << '\n';
  out << "light,slope,points_used,floor\n";
  for (std::size_t l = 0; l < spec.lights.size(); ++l) {
    std::vector<ScalingPoint> points;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n_gamma; ++i) {
      points.push_back({spec.gamma_sweep[i], columns[l].second[i]});
      if (columns[l].second[i] > spec.fit_floor) ++used;
    }
    const double slope = fit_loglog_slope(points, spec.fit_floor);
    out << to_string(spec.lights[l]) << ',' << fmt(slope) << ',' << used << ','
        << fmt(spec.fit_floor) << '\n';
  }
  return {path, slopes_path};
}

}  // namespace

ExperimentSpec default_spec(ExperimentKind kind) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.physics = DickeConfig{};  // delta = mu = omega = 1, gamma = 1e-3,
                                 // cutoff = 100, dt = 0.01, t_max = 100
  switch (kind) {
    case ExperimentKind::interference_dynamics:
      spec.light = LightKind::cat;
      spec.alpha0 = Complex{0.5, 0.0};
      spec.physics.rwa = false;
      spec.modes = {RunMode::full, RunMode::xfa_sg};
      spec.output = "interference_dynamics.csv";
      break;
    case ExperimentKind::negativity_sweep:
      spec.light = LightKind::cat;
      spec.physics.rwa = false;
      spec.modes = {RunMode::full, RunMode::xfa_sg, RunMode::xfa_gp};
      spec.alpha0_sweep.clear();
      for (int i = 0; i <= 15; ++i) spec.alpha0_sweep.push_back(0.1 * i);
      spec.output = "negativity_sweep.csv";
      break;
    case ExperimentKind::gamma_scaling:
      spec.alpha0 = Complex{0.8, 0.0};
      spec.physics.rwa = true;
      spec.lights = {LightKind::cat, LightKind::coherent};
      spec.gamma_sweep = logspace(1e-3, std::pow(10.0, -1.5), 13);
      spec.output = "gamma_scaling.csv";
      break;
    case ExperimentKind::custom:
      spec.light = LightKind::cat;
      spec.alpha0 = Complex{0.5, 0.0};
      spec.modes = {RunMode::full, RunMode::xfa_sg, RunMode::xfa_gp};
      spec.output = "custom.csv";
      break;
  }
  return spec;
}

ExperimentSpec validate(const ExperimentSpec& spec, std::vector<std::string>* warnings) {
  std::vector<std::string> issues;
  try {
    spec.physics.validate();
  } catch (const ConfigError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }

  const auto check_grid = [&issues](const std::vector<double>& grid,
                                    const std::string& name, bool positive) {
    if (grid.empty()) {
      issues.push_back(name + " must be nonempty");
      return;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (positive && !(grid[i] > 0.0)) {
        issues.push_back(name + " entries must be positive");
        return;
      }
      if (!positive && grid[i] < 0.0) {
        issues.push_back(name + " entries must be nonnegative");
        return;
      }
      if (i > 0 && !(grid[i] > grid[i - 1])) {
        issues.push_back(name + " must be strictly increasing");
        return;
      }
    }
  };

  const bool needs_modes = spec.kind != ExperimentKind::gamma_scaling;
  if (needs_modes) {
    if (spec.modes.empty()) issues.push_back("modes must be nonempty");
    std::set<RunMode> seen(spec.modes.begin(), spec.modes.end());
    if (seen.size() != spec.modes.size()) issues.push_back("modes must be unique");
  }

  double max_amp = std::abs(spec.alpha0);
  switch (spec.kind) {
    case ExperimentKind::interference_dynamics:
      if (std::abs(spec.alpha0) < 1e-9) {
        issues.push_back(
            "interference_dynamics needs a nonzero alpha0 (the moment extraction "
            "divides by the free-field value)");
      }
      break;
    case ExperimentKind::negativity_sweep:
      check_grid(spec.alpha0_sweep, "alpha0_list", /*positive=*/false);
      for (double a : spec.alpha0_sweep) max_amp = std::max(max_amp, a);
      break;
    case ExperimentKind::gamma_scaling: {
      check_grid(spec.gamma_sweep, "gamma_list", /*positive=*/true);
      if (spec.lights.empty()) issues.push_back("lights must be nonempty");
      std::set<LightKind> seen(spec.lights.begin(), spec.lights.end());
      if (seen.size() != spec.lights.size()) issues.push_back("lights must be unique");
      if (!(spec.fit_floor > 0.0)) issues.push_back("fit_floor must be positive");
      break;
    }
    case ExperimentKind::custom:
      break;
  }

  if (spec.stride < 1) issues.push_back("stride must be at least 1");
  if (spec.output.empty()) issues.push_back("output file name must be nonempty");
  if (spec.threads < 0) issues.push_back("threads must be nonnegative");

  if (!issues.empty()) throw ConfigError(issues);

  if (warnings != nullptr && spec.physics.cutoff >= 1) {
    const FockVector probe =
        make_light_fock(spec.kind == ExperimentKind::gamma_scaling ? LightKind::cat
                                                                   : spec.light,
                        Complex{max_amp, 0.0}, spec.physics.cutoff);
    if (probe.truncation_deficit > 1e-12) {
      warnings->push_back("light-state truncation deficit " +
                          fmt(probe.truncation_deficit) + " at cutoff " +
                          std::to_string(spec.physics.cutoff) +
                          " exceeds 1e-12; increase the cutoff");
    }
  }
  return spec;
}

std::string resolved_config(const ExperimentSpec& spec) {
  std::ostringstream s;
  s << "kind=" << to_string(spec.kind);
  s << ";delta=" << fmt(spec.physics.delta) << ";mu=" << fmt(spec.physics.mu)
    << ";omega=" << fmt(spec.physics.omega) << ";gamma=" << fmt(spec.physics.gamma)
    << ";cutoff=" << spec.physics.cutoff << ";dt=" << fmt(spec.physics.dt)
    << ";t_max=" << fmt(spec.physics.t_max)
    << ";rwa=" << (spec.physics.rwa ? "true" : "false");
  s << ";light=" << to_string(spec.light);
  s << ";alpha0=" << fmt(spec.alpha0.real());
  if (spec.alpha0.imag() != 0.0) s << ";alpha0_im=" << fmt(spec.alpha0.imag());
  if (!spec.alpha0_sweep.empty()) s << ";alpha0_list=" << fmt_list(spec.alpha0_sweep);
  if (!spec.gamma_sweep.empty()) s << ";gamma_list=" << fmt_list(spec.gamma_sweep);
  if (!spec.lights.empty()) {
    s << ";lights=";
    for (std::size_t i = 0; i < spec.lights.size(); ++i) {
      if (i) s << ',';
      s << to_string(spec.lights[i]);
    }
  }
  if (!spec.modes.empty()) {
    s << ";modes=";
    for (std::size_t i = 0; i < spec.modes.size(); ++i) {
      if (i) s << ',';
      s << to_string(spec.modes[i]);
    }
  }
  if (spec.kind == ExperimentKind::gamma_scaling) s << ";fit_floor=" << fmt(spec.fit_floor);
  s << ";stride=" << spec.stride;
  return s.str();
}

std::vector<std::filesystem::path> run(const ExperimentSpec& raw) {
  const ExperimentSpec spec = validate(raw);
  switch (spec.kind) {
    case ExperimentKind::interference_dynamics:
      return run_time_series(spec, /*per_trajectory_columns=*/false);
    case ExperimentKind::custom:
      return run_time_series(spec, /*per_trajectory_columns=*/true);
    case ExperimentKind::negativity_sweep:
      return run_negativity_sweep(spec);
    case ExperimentKind::gamma_scaling:
      return run_gamma_scaling(spec);
  }
  throw Error("run: unknown experiment kind");
}

}  // namespace catlight
