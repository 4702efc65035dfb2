#pragma once

#include <cstddef>
#include <vector>

#include "catlight/linalg.hpp"

namespace catlight {

/// One weighted atomic term of a photon quasiprobability function.
///
/// ket_amp is the value substituted for the annihilation operator; the
/// conjugate of bra_amp is substituted for the creation operator. A classical
/// atom pairs a coherent ket with the same bra (bra_amp == ket_amp); an
/// interference atom pairs distinct amplitudes, which is what makes the
/// resulting fields complex-valued.
struct PAtom {
  Complex weight;
  Complex ket_amp;
  Complex bra_amp;

  bool is_classical() const { return ket_amp == bra_amp; }
};

/// Finite atomic mixture representing a photon density matrix. Continuous
/// quasiprobability functions are out of scope; keeping the mixture atomic
/// makes the delta-function calculus exact instead of quadrature-approximated.
/// The atoms list accepts arbitrary (weight, ket, bra) triples as an
/// extension point.
struct PDistribution {
  std::vector<PAtom> atoms;

  Complex weight_sum() const;

  /// True when every atom (w, a, b) has exactly one partner (conj(w), b, a),
  /// possibly itself. This pairing is what guarantees Hermiticity of the
  /// reassembled electron density matrix.
  bool conjugate_closed() const;
};

/// Coherent state |alpha0>: a single classical atom of unit weight.
PDistribution coherent_p(Complex alpha0);

/// Even cat state (|alpha0> + |-alpha0>)/sqrt(N): two classical atoms plus
/// two interference atoms with weight <-alpha0|alpha0>/N, where
/// N = 2 [1 + exp(-2|alpha0|^2)] and <-alpha0|alpha0> = exp(-2|alpha0|^2).
PDistribution cat_p(Complex alpha0);

/// Photon state in the truncated number basis, n = 0..cutoff. The amplitude
/// tail beyond the cutoff is reported as truncation_deficit = 1 - ||v||^2
/// rather than silently dropped, so consumers can assert convergence.
struct FockVector {
  std::size_t cutoff = 0;
  std::vector<Complex> amplitudes;  // size cutoff + 1
  double truncation_deficit = 0.0;

  double squared_norm() const;
};

/// Coherent state amplitudes exp(-|a|^2/2) a^n / sqrt(n!), built with a
/// running ratio so large cutoffs never touch an explicit factorial.
FockVector coherent_fock(Complex alpha0, std::size_t cutoff);

/// Normalized even cat state; odd-n amplitudes vanish identically.
FockVector cat_fock(Complex alpha0, std::size_t cutoff);

/// Normal-ordered moment <a^dag^m a^n> evaluated on the atomic mixture:
/// sum_atoms w * conj(bra_amp)^m * ket_amp^n.
Complex atomic_moment(const PDistribution& p, unsigned m, unsigned n);

/// Normal-ordered moment <a^dag^m a^n> on a truncated Fock vector.
Complex fock_moment(const FockVector& v, unsigned m, unsigned n);

/// Mean photon number of a truncated Fock vector.
double mean_photon_number(const FockVector& v);

}  // namespace catlight
