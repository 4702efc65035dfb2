#pragma once

#include <functional>
#include <span>
#include <vector>

#include "catlight/dicke.hpp"
#include "catlight/linalg.hpp"
#include "catlight/photon.hpp"

namespace catlight {

/// Which trajectory-ensemble evolution to run.
///
/// sudarshan_glauber: one (generally non-Hermitian) Hamiltonian built from
/// the complex-valued field of the atom, commutator form i drho = H rho - rho H.
/// generalized_p: two Hermitian Hamiltonians built from the classical fields
/// of the ket and bra amplitudes, i drho = H_ket rho - rho H_bra.
enum class TheoryMode { sudarshan_glauber, generalized_p };

/// One trajectory of the ensemble: a 4x4 (possibly non-Hermitian) electron
/// matrix tagged with the P-atom that drives it.
struct TrajectoryState {
  ComplexMatrix rho{4, 4};
  PAtom atom;
  double time = 0.0;
};

/// The two classical (real-valued) electric fields obtained by pairing each
/// amplitude of an atom with itself. For a classical atom e_ket == e_bra.
struct FieldSample {
  Complex e_ket;
  Complex e_bra;
  double time = 0.0;
};

/// Co- and counter-rotating components of the complex field of an atom:
/// e_plus = i gamma omega ket e^{-i w t}, e_minus = -i gamma omega conj(bra) e^{i w t}.
struct RotatingField {
  Complex e_plus;
  Complex e_minus;
};

/// Complex-valued electric field of an atom,
/// E(t) = i gamma omega [ket e^{-i w t} - conj(bra) e^{i w t}].
/// Real for classical atoms, complex otherwise.
Complex complex_field(const PAtom& atom, double t, const DickeConfig& cfg);

FieldSample field_sample(const PAtom& atom, double t, const DickeConfig& cfg);

RotatingField rotating_field(const PAtom& atom, double t, const DickeConfig& cfg);

/// H = delta (Sz1 + Sz2) - field * mu (Sx1 + Sx2). Non-Hermitian exactly
/// when the field has an imaginary part.
ComplexMatrix trajectory_hamiltonian(Complex field, const DickeConfig& cfg);

/// Rotating-wave form: the two rotating pieces are built separately,
/// H = delta (Sz1 + Sz2) - mu/2 [e_plus (S+1 + S+2) + e_minus (S-1 + S-2)].
ComplexMatrix trajectory_hamiltonian(const RotatingField& field, const DickeConfig& cfg);

/// Evolves one trajectory from |dd><dd| over the config time grid, invoking
/// on_sample at every grid time. The sudarshan_glauber commutator form
/// conserves the trace exactly and aborts with TraceDrift if |tr rho - 1|
/// exceeds 1e-8. The generalized_p form does not conserve per-trajectory
/// traces on interference atoms (tr rho follows <psi_bra|psi_ket>), so it
/// runs unguarded; normalize assembled results before treating them as
/// states.
void evolve_trajectory(const PAtom& atom, const DickeConfig& cfg, TheoryMode mode,
                       const std::function<void(const TrajectoryState&)>& on_sample);

std::vector<TrajectoryState> evolve_trajectory(const PAtom& atom,
                                               const DickeConfig& cfg,
                                               TheoryMode mode);

/// Negative control for tests and demonstrations: the dissipative form
/// i drho = H rho - rho H^dag with the same complex-field Hamiltonian.
/// This form does NOT conserve the trace for non-Hermitian H, which is
/// exactly what distinguishes it from the interferential form above, so it
/// deliberately runs without the trace guard.
void evolve_trajectory_dissipative(
    const PAtom& atom, const DickeConfig& cfg,
    const std::function<void(const TrajectoryState&)>& on_sample);

/// Weighted ensemble average sum_i w_i rho_i over trajectories sharing one
/// time stamp. The atom set must be conjugate-closed (NonHermitianEnsemble
/// otherwise); the result is then Hermitian. Trajectories from the
/// trace-conserving sudarshan_glauber mode assemble to unit trace.
TwoBodyMatrix assemble_density(std::span<const TrajectoryState> trajectories);

/// Time series of the assembled ensemble together with its classical and
/// interference parts (split by atom kind). Optionally keeps every
/// per-trajectory series.
struct EnsembleSeries {
  std::vector<double> times;
  std::vector<TwoBodyMatrix> assembled;
  std::vector<TwoBodyMatrix> classical_part;
  std::vector<TwoBodyMatrix> interference_part;
  std::vector<std::vector<TrajectoryState>> trajectories;  // per atom, if kept
};

EnsembleSeries evolve_ensemble(const PDistribution& light, const DickeConfig& cfg,
                               TheoryMode mode, bool keep_trajectories = false);

}  // namespace catlight
