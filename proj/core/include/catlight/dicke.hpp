#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "catlight/linalg.hpp"
#include "catlight/photon.hpp"

namespace catlight {

/// Physical and numerical parameters of the two-qubit/one-boson model.
/// delta is the two-level splitting and the energy unit, mu the dipole
/// moment, omega the photon frequency and gamma the light-matter coupling.
struct DickeConfig {
  double delta = 1.0;
  double mu = 1.0;
  double omega = 1.0;
  double gamma = 1e-3;
  std::size_t cutoff = 100;  // max photon number retained
  double dt = 0.01;
  double t_max = 100.0;
  bool rwa = false;

  std::size_t full_dim() const { return 4 * (cutoff + 1); }
  std::size_t step_count() const {
    return static_cast<std::size_t>(std::llround(t_max / dt));
  }

  /// Throws ConfigError listing every violated constraint.
  void validate() const;
};

// Fixed tensor ordering: qubit1 (x) qubit2 (x) photon, with qubit basis
// (up, down) and photon basis n = 0..cutoff. All basis-index arithmetic
// lives here and nowhere else.
namespace basis {

inline constexpr std::size_t kUpUp = 0;    // |up, up>
inline constexpr std::size_t kUpDown = 1;  // |up, down>
inline constexpr std::size_t kDownUp = 2;  // |down, up>
inline constexpr std::size_t kDownDown = 3;

/// Combined electron index sigma = 2*q1 + q2 with q = 0 for up, 1 for down.
inline std::size_t full_index(std::size_t sigma, std::size_t n, std::size_t cutoff) {
  return sigma * (cutoff + 1) + n;
}

/// s1 + s2 for Sz eigenvalues +-1/2.
inline double sz_sum(std::size_t sigma) {
  constexpr double table[4] = {1.0, 0.0, 0.0, -1.0};
  return table[sigma];
}

inline std::size_t flip_qubit1(std::size_t sigma) { return sigma ^ 2u; }
inline std::size_t flip_qubit2(std::size_t sigma) { return sigma ^ 1u; }
inline bool qubit1_down(std::size_t sigma) { return (sigma & 2u) != 0; }
inline bool qubit2_down(std::size_t sigma) { return (sigma & 1u) != 0; }

}  // namespace basis

/// Pure state of the coupled system at one instant.
struct FullState {
  ComplexVector psi;  // dim 4*(cutoff+1)
  double time = 0.0;
};

/// 4x4 electron density matrix (or a non-Hermitian component of one) over
/// the basis (|uu>, |ud>, |du>, |dd>), tagged with its sample time.
struct TwoBodyMatrix {
  ComplexMatrix m{4, 4};
  double time = 0.0;
  bool hermitian = false;
};

/// Dense Hamiltonian of dim 4*(cutoff+1), assembled from Kronecker products.
/// Used for assertions and small-cutoff oracles; evolution applies the same
/// operator sparsely.
ComplexMatrix build_full_hamiltonian(const DickeConfig& cfg);

/// y += H x exploiting the banded structure (at most 9 couplings per basis
/// state). `out` must already have the right size; it is overwritten.
void apply_full_hamiltonian(const DickeConfig& cfg, const ComplexVector& in,
                            ComplexVector& out);

/// Ground state of the zero-field electron Hamiltonian: |down, down> for
/// delta > 0. Throws DegenerateGroundState when delta <= 0.
ComplexVector ground_state_electrons(const DickeConfig& cfg);

/// ground_state_electrons (x) photon0 in the fixed tensor order.
ComplexVector initial_full_state(const DickeConfig& cfg, const FockVector& photon0);

/// <psi|H|psi> (real for Hermitian H).
double energy_expectation(const DickeConfig& cfg, const ComplexVector& psi);

/// Integrates i d/dt |psi> = H |psi> with RK4 from t=0 to t_max, invoking
/// on_sample at every grid time (including t=0). Throws NormDrift if the
/// norm leaves the 1e-6 band, which signals a time step too large for the
/// populated spectrum.
void evolve_full(const DickeConfig& cfg, const FockVector& photon0,
                 const std::function<void(const FullState&)>& on_sample);

/// Convenience overload collecting every sample. For long runs at large
/// cutoff prefer the observer form; this one holds the whole trajectory.
std::vector<FullState> evolve_full(const DickeConfig& cfg, const FockVector& photon0);

/// Reduced electron density matrix: rho2[s,s'] = sum_n psi[s,n] conj(psi[s',n]).
TwoBodyMatrix partial_trace_photon(const FullState& state);

/// The four photon-moment components of the reduced density matrix under a
/// symmetric two-branch drive. pp/mm are Hermitian, pm/mp are mutual
/// adjoints; the four sum to partial_trace_photon exactly.
struct InterferenceParts {
  TwoBodyMatrix pp, mm, pm, mp;

  TwoBodyMatrix classical() const;     // pp + mm
  TwoBodyMatrix interference() const;  // pm + mp
};

/// Extracts the branch components from the physical moments Tr_p[rho a],
/// Tr_p[rho a^dag] and Tr_p[rho a^dag a], each divided by the corresponding
/// power of the free-field value alpha0_t = alpha0 e^{-i omega t}. Throws
/// ZeroFieldAmplitude when |alpha0_t| < 1e-12.
InterferenceParts decompose_interference(const FullState& state, Complex alpha0_t);

}  // namespace catlight
