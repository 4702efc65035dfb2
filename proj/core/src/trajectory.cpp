#include "catlight/trajectory.hpp"

#include <cmath>
#include <string>

#include "catlight/errors.hpp"

namespace catlight {

namespace {

Complex phase(double angle) { return std::exp(Complex{0.0, angle}); }

ComplexMatrix free_electron_hamiltonian(const DickeConfig& cfg) {
  ComplexMatrix h(4, 4);
  for (std::size_t s = 0; s < 4; ++s) h(s, s) = cfg.delta * basis::sz_sum(s);
  return h;
}

// (S+1 + S+2) over the basis (uu, ud, du, dd).
ComplexMatrix raise_sum() {
  ComplexMatrix m(4, 4);
  m(basis::kUpUp, basis::kDownUp) = 1.0;    // S+1 on |du>
  m(basis::kUpDown, basis::kDownDown) = 1.0;
  m(basis::kUpUp, basis::kUpDown) = 1.0;    // S+2 on |ud>
  m(basis::kDownUp, basis::kDownDown) = 1.0;
  return m;
}

}  // namespace

Complex complex_field(const PAtom& atom, double t, const DickeConfig& cfg) {
  const Complex g = kI * cfg.gamma * cfg.omega;
  return g * (atom.ket_amp * phase(-cfg.omega * t) -
              std::conj(atom.bra_amp) * phase(cfg.omega * t));
}

FieldSample field_sample(const PAtom& atom, double t, const DickeConfig& cfg) {
  const PAtom ket_classical{1.0, atom.ket_amp, atom.ket_amp};
  const PAtom bra_classical{1.0, atom.bra_amp, atom.bra_amp};
  return FieldSample{complex_field(ket_classical, t, cfg),
                     complex_field(bra_classical, t, cfg), t};
}

RotatingField rotating_field(const PAtom& atom, double t, const DickeConfig& cfg) {
  const Complex g = kI * cfg.gamma * cfg.omega;
  return RotatingField{g * atom.ket_amp * phase(-cfg.omega * t),
                       -g * std::conj(atom.bra_amp) * phase(cfg.omega * t)};
}

ComplexMatrix trajectory_hamiltonian(Complex field, const DickeConfig& cfg) {
  ComplexMatrix h = free_electron_hamiltonian(cfg);
  const ComplexMatrix sp = raise_sum();
  const ComplexMatrix sx_sum = 0.5 * (sp + sp.adjoint());
  h += (-cfg.mu * field) * sx_sum;
  return h;
}

ComplexMatrix trajectory_hamiltonian(const RotatingField& field, const DickeConfig& cfg) {
  ComplexMatrix h = free_electron_hamiltonian(cfg);
  const ComplexMatrix sp = raise_sum();
  h += (-cfg.mu / 2.0) * (field.e_plus * sp + field.e_minus * sp.adjoint());
  return h;
}

namespace {

ComplexMatrix ground_projector() {
  ComplexMatrix rho(4, 4);
  rho(basis::kDownDown, basis::kDownDown) = 1.0;
  return rho;
}

// Left/right generators at time t for the selected mode.
struct Generators {
  ComplexMatrix left;
  ComplexMatrix right;
};

Generators generators_at(const PAtom& atom, double t, const DickeConfig& cfg,
                         TheoryMode mode) {
  if (mode == TheoryMode::sudarshan_glauber) {
    ComplexMatrix h = cfg.rwa ? trajectory_hamiltonian(rotating_field(atom, t, cfg), cfg)
                              : trajectory_hamiltonian(complex_field(atom, t, cfg), cfg);
    return Generators{h, h};
  }
  // generalized_p: both sides Hermitian, built from the classical fields of
  // the ket and bra amplitudes separately.
  const PAtom ket_cls{1.0, atom.ket_amp, atom.ket_amp};
  const PAtom bra_cls{1.0, atom.bra_amp, atom.bra_amp};
  if (cfg.rwa) {
    return Generators{trajectory_hamiltonian(rotating_field(ket_cls, t, cfg), cfg),
                      trajectory_hamiltonian(rotating_field(bra_cls, t, cfg), cfg)};
  }
  return Generators{trajectory_hamiltonian(complex_field(ket_cls, t, cfg), cfg),
                    trajectory_hamiltonian(complex_field(bra_cls, t, cfg), cfg)};
}

template <class Deriv>
void run_trajectory(const PAtom& atom, const DickeConfig& cfg, Deriv&& deriv,
                    bool guard_trace,
                    const std::function<void(const TrajectoryState&)>& on_sample) {
  cfg.validate();
  constexpr double kTraceBand = 1e-8;

  TrajectoryState state{ground_projector(), atom, 0.0};
  on_sample(state);
  const std::size_t steps = cfg.step_count();
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    state.rho = rk4_step(deriv, state.rho, t, cfg.dt);
    state.time = static_cast<double>(k + 1) * cfg.dt;
    if (guard_trace && std::abs(state.rho.trace() - Complex{1.0}) > kTraceBand) {
      throw TraceDrift("evolve_trajectory: trace drift beyond 1e-8 at t = " +
                       std::to_string(state.time));
    }
    on_sample(state);
  }
}

}  // namespace

void evolve_trajectory(const PAtom& atom, const DickeConfig& cfg, TheoryMode mode,
                       const std::function<void(const TrajectoryState&)>& on_sample) {
  const auto deriv = [&atom, &cfg, mode](double t, const ComplexMatrix& rho) {
    const Generators gen = generators_at(atom, t, cfg, mode);
    return Complex{0.0, -1.0} * (gen.left * rho - rho * gen.right);
  };
  // The commutator form conserves the trace exactly, so any drift there is an
  // integrator failure. The two-sided generalized_p form has
  // d tr(rho)/dt = -i tr[(H_ket - H_bra) rho], which is genuinely nonzero for
  // interference atoms: its trajectory traces evolve like <psi_bra|psi_ket>.
  const bool guard = mode == TheoryMode::sudarshan_glauber;
  run_trajectory(atom, cfg, deriv, guard, on_sample);
}

std::vector<TrajectoryState> evolve_trajectory(const PAtom& atom,
                                               const DickeConfig& cfg,
                                               TheoryMode mode) {
  std::vector<TrajectoryState> series;
  series.reserve(cfg.step_count() + 1);
  evolve_trajectory(atom, cfg, mode,
                    [&series](const TrajectoryState& s) { series.push_back(s); });
  return series;
}

void evolve_trajectory_dissipative(
    const PAtom& atom, const DickeConfig& cfg,
    const std::function<void(const TrajectoryState&)>& on_sample) {
  const auto deriv = [&atom, &cfg](double t, const ComplexMatrix& rho) {
    const ComplexMatrix h =
        cfg.rwa ? trajectory_hamiltonian(rotating_field(atom, t, cfg), cfg)
                : trajectory_hamiltonian(complex_field(atom, t, cfg), cfg);
    return Complex{0.0, -1.0} * (h * rho - rho * h.adjoint());
  };
  run_trajectory(atom, cfg, deriv, /*guard_trace=*/false, on_sample);
}

TwoBodyMatrix assemble_density(std::span<const TrajectoryState> trajectories) {
  constexpr double kHermitianBand = 1e-10;

  PDistribution atoms;
  atoms.atoms.reserve(trajectories.size());
  for (const TrajectoryState& t : trajectories) atoms.atoms.push_back(t.atom);
  if (!atoms.conjugate_closed()) {
    throw NonHermitianEnsemble(
        "assemble_density: atom set is not closed under conjugate pairing");
  }

  TwoBodyMatrix out;
  out.time = trajectories.empty() ? 0.0 : trajectories.front().time;
  out.hermitian = true;
  for (const TrajectoryState& t : trajectories) {
    out.m += t.atom.weight * t.rho;
  }
  if (out.m.hermitian_defect() > kHermitianBand) {
    throw NonHermitianEnsemble(
        "assemble_density: assembled matrix exceeds the Hermiticity band");
  }
  return out;
}

EnsembleSeries evolve_ensemble(const PDistribution& light, const DickeConfig& cfg,
                               TheoryMode mode, bool keep_trajectories) {
  EnsembleSeries series;
  const std::size_t samples = cfg.step_count() + 1;

  std::vector<std::vector<TrajectoryState>> all;
  all.reserve(light.atoms.size());
  for (const PAtom& atom : light.atoms) {
    all.push_back(evolve_trajectory(atom, cfg, mode));
  }

  series.times.resize(samples);
  series.assembled.resize(samples);
  series.classical_part.resize(samples);
  series.interference_part.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<TrajectoryState> at_time;
    at_time.reserve(all.size());
    for (const auto& traj : all) at_time.push_back(traj[k]);

    series.times[k] = at_time.front().time;
    series.assembled[k] = assemble_density(at_time);

    TwoBodyMatrix cls, itf;
    cls.time = itf.time = series.times[k];
    cls.hermitian = itf.hermitian = true;
    for (const TrajectoryState& t : at_time) {
      if (t.atom.is_classical()) {
        cls.m += t.atom.weight * t.rho;
      } else {
        itf.m += t.atom.weight * t.rho;
      }
    }
    series.classical_part[k] = std::move(cls);
    series.interference_part[k] = std::move(itf);
  }

  if (keep_trajectories) series.trajectories = std::move(all);
  return series;
}

}  // namespace catlight
