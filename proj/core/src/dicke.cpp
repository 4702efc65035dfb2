#include "catlight/dicke.hpp"

#include <cmath>
#include <string>

#include "catlight/errors.hpp"

namespace catlight {

void DickeConfig::validate() const {
  std::vector<std::string> issues;
  if (!(delta > 0.0)) issues.push_back("delta must be positive");
  if (!(omega > 0.0)) issues.push_back("omega must be positive");
  if (!(gamma >= 0.0)) issues.push_back("gamma must be nonnegative");
  if (cutoff < 1) issues.push_back("cutoff must be at least 1");
  if (!(dt > 0.0)) issues.push_back("dt must be positive");
  if (!(t_max >= 0.0)) issues.push_back("t_max must be nonnegative");
  if (!issues.empty()) throw ConfigError(issues);
}

namespace {

// Single-qubit and photon building blocks for the dense assembly.
ComplexMatrix pauli_sz_half() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = -0.5;
  return m;
}

ComplexMatrix spin_raise() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;  // |up><down|
  return m;
}

ComplexMatrix spin_lower() {
  ComplexMatrix m(2, 2);
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix spin_sx() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 0.5;
  m(1, 0) = 0.5;
  return m;
}

ComplexMatrix annihilation(std::size_t cutoff) {
  ComplexMatrix a(cutoff + 1, cutoff + 1);
  for (std::size_t n = 1; n <= cutoff; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

}  // namespace

ComplexMatrix build_full_hamiltonian(const DickeConfig& cfg) {
  const std::size_t p = cfg.cutoff + 1;
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  const ComplexMatrix ip = ComplexMatrix::identity(p);
  const ComplexMatrix sz = pauli_sz_half();
  const ComplexMatrix a = annihilation(cfg.cutoff);
  const ComplexMatrix adag = a.adjoint();

  ComplexMatrix h = cfg.delta * (kron(kron(sz, i2), ip) + kron(kron(i2, sz), ip));
  h += cfg.omega * kron(kron(i2, i2), adag * a);

  if (cfg.rwa) {
    // Keep only the co-rotating pairs a S+ and a^dag S-.
    const ComplexMatrix sp_sum = kron(spin_raise(), i2) + kron(i2, spin_raise());
    const ComplexMatrix sm_sum = kron(spin_lower(), i2) + kron(i2, spin_lower());
    const Complex g = kI * cfg.gamma * cfg.omega;
    h += (-cfg.mu / 2.0) * (g * kron(sp_sum, a) - g * kron(sm_sum, adag));
  } else {
    const ComplexMatrix e_field = kI * cfg.gamma * cfg.omega * (a - adag);
    const ComplexMatrix sx_sum = kron(spin_sx(), i2) + kron(i2, spin_sx());
    h += (-cfg.mu) * kron(sx_sum, e_field);
  }
  return h;
}

void apply_full_hamiltonian(const DickeConfig& cfg, const ComplexVector& in,
                            ComplexVector& out) {
  const std::size_t p = cfg.cutoff + 1;
  const Complex g = kI * cfg.gamma * cfg.omega;  // i gamma omega

  for (Complex& x : out) x = 0.0;

  for (std::size_t sigma = 0; sigma < 4; ++sigma) {
    const std::size_t base = sigma * p;
    const double diag_e = cfg.delta * basis::sz_sum(sigma);
    const std::size_t flips[2] = {basis::flip_qubit1(sigma), basis::flip_qubit2(sigma)};
    const bool down[2] = {basis::qubit1_down(sigma), basis::qubit2_down(sigma)};

    for (std::size_t n = 0; n < p; ++n) {
      const Complex amp = in[base + n];
      if (amp == Complex{}) continue;

      out[base + n] += (diag_e + cfg.omega * static_cast<double>(n)) * amp;

      for (int j = 0; j < 2; ++j) {
        const std::size_t fbase = flips[j] * p;
        if (cfg.rwa) {
          // -mu/2 [ (i g w) a S+_j + (-i g w) a^dag S-_j ]
          if (down[j] && n >= 1) {
            out[fbase + n - 1] +=
                (-cfg.mu / 2.0) * g * std::sqrt(static_cast<double>(n)) * amp;
          }
          if (!down[j] && n + 1 < p) {
            out[fbase + n + 1] +=
                (cfg.mu / 2.0) * g * std::sqrt(static_cast<double>(n + 1)) * amp;
          }
        } else {
          // -mu Sx_j E with E = i g w (a - a^dag); Sx flips with weight 1/2.
          if (n >= 1) {
            out[fbase + n - 1] +=
                (-cfg.mu / 2.0) * g * std::sqrt(static_cast<double>(n)) * amp;
          }
          if (n + 1 < p) {
            out[fbase + n + 1] +=
                (cfg.mu / 2.0) * g * std::sqrt(static_cast<double>(n + 1)) * amp;
          }
        }
      }
    }
  }
}

ComplexVector ground_state_electrons(const DickeConfig& cfg) {
  if (!(cfg.delta > 0.0)) {
    throw DegenerateGroundState(
        "ground_state_electrons: zero-field electron Hamiltonian has no unique "
        "ground state for delta <= 0");
  }
  return ComplexVector::basis(4, basis::kDownDown);
}

ComplexVector initial_full_state(const DickeConfig& cfg, const FockVector& photon0) {
  const ComplexVector g = ground_state_electrons(cfg);
  const std::size_t p = cfg.cutoff + 1;
  ComplexVector psi(cfg.full_dim());
  for (std::size_t sigma = 0; sigma < 4; ++sigma) {
    if (g[sigma] == Complex{}) continue;
    for (std::size_t n = 0; n < p; ++n) {
      psi[basis::full_index(sigma, n, cfg.cutoff)] = g[sigma] * photon0.amplitudes[n];
    }
  }
  return psi;
}

double energy_expectation(const DickeConfig& cfg, const ComplexVector& psi) {
  ComplexVector hpsi(psi.size());
  apply_full_hamiltonian(cfg, psi, hpsi);
  return std::real(dot(psi, hpsi));
}

void evolve_full(const DickeConfig& cfg, const FockVector& photon0,
                 const std::function<void(const FullState&)>& on_sample) {
  cfg.validate();
  if (photon0.cutoff != cfg.cutoff) {
    throw ConfigError("evolve_full: photon state cutoff does not match config");
  }

  constexpr double kNormBand = 1e-6;

  FullState state{initial_full_state(cfg, photon0), 0.0};
  ComplexVector scratch(state.psi.size());
  const auto deriv = [&cfg, &scratch](double, const ComplexVector& y) {
    apply_full_hamiltonian(cfg, y, scratch);
    return Complex{0.0, -1.0} * scratch;
  };

  on_sample(state);
  const std::size_t steps = cfg.step_count();
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    state.psi = rk4_step(deriv, state.psi, t, cfg.dt);
    state.time = static_cast<double>(k + 1) * cfg.dt;
    if (std::abs(state.psi.norm() - 1.0) > kNormBand) {
      throw NormDrift("evolve_full: norm drift beyond 1e-6 at t = " +
                      std::to_string(state.time));
    }
    on_sample(state);
  }
}

std::vector<FullState> evolve_full(const DickeConfig& cfg, const FockVector& photon0) {
  std::vector<FullState> series;
  series.reserve(cfg.step_count() + 1);
  evolve_full(cfg, photon0, [&series](const FullState& s) { series.push_back(s); });
  return series;
}

TwoBodyMatrix partial_trace_photon(const FullState& state) {
  const std::size_t p = state.psi.size() / 4;
  TwoBodyMatrix rho;
  rho.time = state.time;
  rho.hermitian = true;
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t sp = 0; sp < 4; ++sp) {
      Complex sum = 0.0;
      for (std::size_t n = 0; n < p; ++n) {
        sum += state.psi[s * p + n] * std::conj(state.psi[sp * p + n]);
      }
      rho.m(s, sp) = sum;
    }
  }
  return rho;
}

TwoBodyMatrix InterferenceParts::classical() const {
  TwoBodyMatrix out;
  out.time = pp.time;
  out.hermitian = true;
  out.m = pp.m + mm.m;
  return out;
}

TwoBodyMatrix InterferenceParts::interference() const {
  TwoBodyMatrix out;
  out.time = pm.time;
  out.hermitian = true;
  out.m = pm.m + mp.m;
  return out;
}

InterferenceParts decompose_interference(const FullState& state, Complex alpha0_t) {
  if (std::abs(alpha0_t) < 1e-12) {
    throw ZeroFieldAmplitude("decompose_interference: free-field value vanishes");
  }
  const std::size_t p = state.psi.size() / 4;

  // S0 = Tr_p[rho],            S1 = Tr_p[rho a] / alpha0(t),
  // S2 = Tr_p[rho a^dag] / conj(alpha0(t)),  S3 = Tr_p[rho a^dag a] / |alpha0(t)|^2.
  ComplexMatrix s0(4, 4), s1(4, 4), s2(4, 4), s3(4, 4);
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t sp = 0; sp < 4; ++sp) {
      Complex m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
      for (std::size_t n = 0; n < p; ++n) {
        const Complex ket = state.psi[s * p + n];
        const Complex bra = std::conj(state.psi[sp * p + n]);
        m0 += ket * bra;
        m3 += static_cast<double>(n) * ket * bra;
        if (n >= 1) {
          m1 += std::sqrt(static_cast<double>(n)) * ket *
                std::conj(state.psi[sp * p + n - 1]);
        }
        if (n + 1 < p) {
          m2 += std::sqrt(static_cast<double>(n + 1)) * ket *
                std::conj(state.psi[sp * p + n + 1]);
        }
      }
      s0(s, sp) = m0;
      s1(s, sp) = m1 / alpha0_t;
      s2(s, sp) = m2 / std::conj(alpha0_t);
      s3(s, sp) = m3 / std::norm(alpha0_t);
    }
  }

  InterferenceParts parts;
  for (TwoBodyMatrix* t : {&parts.pp, &parts.mm, &parts.pm, &parts.mp}) {
    t->time = state.time;
  }
  parts.pp.hermitian = parts.mm.hermitian = true;
  parts.pp.m = 0.25 * (s0 + s1 + s2 + s3);
  parts.mm.m = 0.25 * (s0 - s1 - s2 + s3);
  parts.pm.m = 0.25 * (s0 + s1 - s2 - s3);
  parts.mp.m = 0.25 * (s0 - s1 + s2 - s3);
  return parts;
}

}  // namespace catlight
