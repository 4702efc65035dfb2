#include "catlight/photon.hpp"

#include <cmath>

namespace catlight {

Complex PDistribution::weight_sum() const {
  Complex s = 0.0;
  for (const PAtom& a : atoms) s += a.weight;
  return s;
}

bool PDistribution::conjugate_closed() const {
  std::vector<bool> used(atoms.size(), false);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (used[i]) continue;
    const PAtom& a = atoms[i];
    if (a.weight == std::conj(a.weight) && a.ket_amp == a.bra_amp) {
      used[i] = true;  // self-paired
      continue;
    }
    bool found = false;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (used[j] || j == i) continue;
      const PAtom& b = atoms[j];
      if (b.weight == std::conj(a.weight) && b.ket_amp == a.bra_amp &&
          b.bra_amp == a.ket_amp) {
        used[i] = used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

PDistribution coherent_p(Complex alpha0) {
  return PDistribution{{PAtom{1.0, alpha0, alpha0}}};
}

PDistribution cat_p(Complex alpha0) {
  const double overlap = std::exp(-2.0 * std::norm(alpha0));  // <-a0|a0>
  const double norm = 2.0 * (1.0 + overlap);
  const Complex w_cls = 1.0 / norm;
  const Complex w_itf = overlap / norm;
  return PDistribution{{
      PAtom{w_cls, alpha0, alpha0},
      PAtom{w_cls, -alpha0, -alpha0},
      PAtom{w_itf, alpha0, -alpha0},
      PAtom{w_itf, -alpha0, alpha0},
  }};
}

double FockVector::squared_norm() const {
  double s = 0.0;
  for (const Complex& a : amplitudes) s += std::norm(a);
  return s;
}

FockVector coherent_fock(Complex alpha0, std::size_t cutoff) {
  FockVector v;
  v.cutoff = cutoff;
  v.amplitudes.resize(cutoff + 1);
  Complex amp = std::exp(-0.5 * std::norm(alpha0));
  v.amplitudes[0] = amp;
  for (std::size_t n = 0; n < cutoff; ++n) {
    amp *= alpha0 / std::sqrt(static_cast<double>(n + 1));
    v.amplitudes[n + 1] = amp;
  }
  v.truncation_deficit = 1.0 - v.squared_norm();
  return v;
}

FockVector cat_fock(Complex alpha0, std::size_t cutoff) {
  const FockVector plus = coherent_fock(alpha0, cutoff);
  const FockVector minus = coherent_fock(-alpha0, cutoff);
  const double norm = 2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha0)));
  const double scale = 1.0 / std::sqrt(norm);

  FockVector v;
  v.cutoff = cutoff;
  v.amplitudes.resize(cutoff + 1);
  // (-alpha0)^n = -(alpha0^n) for odd n with identical magnitude, so the odd
  // amplitudes cancel exactly in floating point as well.
  for (std::size_t n = 0; n <= cutoff; ++n) {
    v.amplitudes[n] = scale * (plus.amplitudes[n] + minus.amplitudes[n]);
  }
  v.truncation_deficit = 1.0 - v.squared_norm();
  return v;
}

namespace {

Complex ipow(Complex z, unsigned k) {
  Complex r = 1.0;
  for (unsigned i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

Complex atomic_moment(const PDistribution& p, unsigned m, unsigned n) {
  Complex s = 0.0;
  for (const PAtom& a : p.atoms) {
    s += a.weight * ipow(std::conj(a.bra_amp), m) * ipow(a.ket_amp, n);
  }
  return s;
}

Complex fock_moment(const FockVector& v, unsigned m, unsigned n) {
  // <v| a^dag^m a^n |v> = sum_k conj(v[k - n + n ... ]) ... evaluate as
  // sum over k of conj(v[k + m - n]) * v[k] * sqrt(k!/(k-n)!) * sqrt((k+m-n)!/(k-n)!)
  Complex s = 0.0;
  const std::size_t size = v.amplitudes.size();
  for (std::size_t k = n; k < size; ++k) {
    const std::size_t bra_index = k - n + m;
    if (bra_index >= size) continue;
    double factor = 1.0;
    for (std::size_t j = k - n + 1; j <= k; ++j) factor *= static_cast<double>(j);
    for (std::size_t j = k - n + 1; j <= bra_index; ++j) factor *= static_cast<double>(j);
    s += std::conj(v.amplitudes[bra_index]) * v.amplitudes[k] * std::sqrt(factor);
  }
  return s;
}

double mean_photon_number(const FockVector& v) {
  double s = 0.0;
  for (std::size_t n = 0; n < v.amplitudes.size(); ++n) {
    s += static_cast<double>(n) * std::norm(v.amplitudes[n]);
  }
  return s;
}

}  // namespace catlight
