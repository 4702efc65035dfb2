#pragma once

#include <span>
#include <vector>

#include "catlight/dicke.hpp"
#include "catlight/linalg.hpp"

namespace catlight {

/// First-order driven amplitude in closed form,
///   A(a1, a2) = i mu Int_0^t dtau E_{a1,a2}(tau) e^{i delta tau}
///             = i mu i gamma omega [a1 I_- - conj(a2) I_+],
/// with I_-+ = (e^{i(delta -+ omega)t} - 1)/(i(delta -+ omega)) and the
/// resonant branch replaced by its analytic limit a1 * t. With cfg.rwa the
/// counter-rotating I_+ term is dropped, so at resonance A = -mu omega gamma a1 t.
Complex perturb_amplitude(Complex alpha1, Complex alpha2, double t,
                          const DickeConfig& cfg);

/// The two amplitudes entering the cat-state expansion: a drives the
/// classical branches, b the interference branches.
struct PerturbativeAmplitudes {
  Complex a;  // A(alpha0,  alpha0)
  Complex b;  // A(alpha0, -alpha0)
  double t = 0.0;
  DickeConfig cfg;
};

PerturbativeAmplitudes perturb_amplitudes(Complex alpha0, double t,
                                          const DickeConfig& cfg);

enum class PerturbPart { cls, itf, gene_p_itf };

/// Leading-order two-body density-matrix components under cat drive, in the
/// interaction picture, valid for gamma |alpha0| t << 1 (caller-asserted;
/// recommended <= 0.05). Emitted unnormalized with the prefactors 2/N and
/// 2 <-a0|a0>/N as printed; comparisons against simulations should normalize
/// both sides to unit trace first.
TwoBodyMatrix perturb_two_body(Complex alpha0, double t, const DickeConfig& cfg,
                               PerturbPart part);

/// Partial transpose on qubit 1: rho[(q1,q2),(q1',q2')] -> rho[(q1',q2),(q1,q2')].
ComplexMatrix partial_transpose_qubit1(const ComplexMatrix& rho);

/// Entanglement negativity (||rho^PT|| - 1)/2 of a Hermitian, trace-one
/// two-body matrix. Round-off in [-1e-10, 0] is clamped to zero; anything
/// more negative indicates a non-state input and raises Error.
double negativity(const TwoBodyMatrix& rho2);

/// Trace distance ||rho - sigma|| / 2 between Hermitian matrices.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double trace_distance(const TwoBodyMatrix& rho, const TwoBodyMatrix& sigma);

/// Conjugation by e^{i H0 t} with the zero-field electron Hamiltonian, i.e.
/// the frame in which the perturbative matrices above are written.
TwoBodyMatrix to_interaction_picture(const TwoBodyMatrix& rho, const DickeConfig& cfg);

/// One point of the coupling-strength sweep.
struct ScalingPoint {
  double gamma;
  double distance;
};

/// Least-squares slope of log(distance) vs log(gamma) over the points with
/// distance > floor (the floor excludes integrator-noise-dominated points).
/// Throws InsufficientPoints when fewer than 3 survive.
double fit_loglog_slope(std::span<const ScalingPoint> points, double floor = 1e-12);

}  // namespace catlight
