#include "catlight/analysis.hpp"

#include <cmath>
#include <string>

#include "catlight/errors.hpp"

namespace catlight {

namespace {

// Dipole matrix element <up|Sx|down> of the spin-1/2 coupling; this is the
// factor by which the closed-form A(a1,a2) enters the actual one-body
// amplitudes of the model.
constexpr double kSxFlipElement = 0.5;

Complex phase(double angle) { return std::exp(Complex{0.0, angle}); }

// (e^{i w t} - 1) / (i w), with the w -> 0 limit t.
Complex phase_integral(double w, double t) {
  if (std::abs(w) < 1e-9) return Complex{t, 0.0};
  return (phase(w * t) - 1.0) / (kI * w);
}

}  // namespace

Complex perturb_amplitude(Complex alpha1, Complex alpha2, double t,
                          const DickeConfig& cfg) {
  const Complex co = alpha1 * phase_integral(cfg.delta - cfg.omega, t);
  const Complex counter =
      cfg.rwa ? Complex{0.0, 0.0}
              : std::conj(alpha2) * phase_integral(cfg.delta + cfg.omega, t);
  // i mu * i gamma omega * [...] = -mu gamma omega [...]
  return -cfg.mu * cfg.gamma * cfg.omega * (co - counter);
}

PerturbativeAmplitudes perturb_amplitudes(Complex alpha0, double t,
                                          const DickeConfig& cfg) {
  return PerturbativeAmplitudes{perturb_amplitude(alpha0, alpha0, t, cfg),
                                perturb_amplitude(alpha0, -alpha0, t, cfg), t, cfg};
}

namespace {

// [[|c|^4, 0, 0, c^2], [0, s, s, 0], [0, s, s, 0], [conj(c)^2, 0, 0, 1]]
// with s = +|c|^2 for the classical part and -|c|^2 for the interference
// part; equals (|psi_+><psi_-+| + |psi_-><psi_+-|)/2 for psi_+- = (c^2, +-c, +-c, 1).
ComplexMatrix branch_matrix(Complex c, double diag_sign) {
  ComplexMatrix m(4, 4);
  const double c2 = std::norm(c);
  m(0, 0) = c2 * c2;
  m(0, 3) = c * c;
  m(3, 0) = std::conj(c) * std::conj(c);
  m(3, 3) = 1.0;
  m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = diag_sign * c2;
  return m;
}

}  // namespace

TwoBodyMatrix perturb_two_body(Complex alpha0, double t, const DickeConfig& cfg,
                               PerturbPart part) {
  const double overlap = std::exp(-2.0 * std::norm(alpha0));
  const double norm = 2.0 * (1.0 + overlap);
  const PerturbativeAmplitudes amps = perturb_amplitudes(alpha0, t, cfg);
  const Complex a = kSxFlipElement * amps.a;
  const Complex b = kSxFlipElement * amps.b;

  TwoBodyMatrix out;
  out.time = t;
  switch (part) {
    case PerturbPart::cls:
      out.hermitian = true;
      out.m = (2.0 / norm) * branch_matrix(a, +1.0);
      break;
    case PerturbPart::itf:
      out.hermitian = true;
      out.m = (2.0 * overlap / norm) * branch_matrix(b, -1.0);
      break;
    case PerturbPart::gene_p_itf:
      out.hermitian = true;
      out.m = (2.0 * overlap / norm) * branch_matrix(a, -1.0);
      break;
  }
  return out;
}

ComplexMatrix partial_transpose_qubit1(const ComplexMatrix& rho) {
  ComplexMatrix pt(4, 4);
  for (std::size_t q1 = 0; q1 < 2; ++q1)
    for (std::size_t q2 = 0; q2 < 2; ++q2)
      for (std::size_t p1 = 0; p1 < 2; ++p1)
        for (std::size_t p2 = 0; p2 < 2; ++p2)
          pt(2 * q1 + q2, 2 * p1 + p2) = rho(2 * p1 + q2, 2 * q1 + p2);
  return pt;
}

double negativity(const TwoBodyMatrix& rho2) {
  const double n = 0.5 * (trace_norm_hermitian(partial_transpose_qubit1(rho2.m)) - 1.0);
  if (n >= 0.0) return n;
  if (n >= -1e-10) return 0.0;
  throw Error("negativity: value " + std::to_string(n) +
              " below round-off band; input is not a unit-trace state");
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  return 0.5 * trace_norm_hermitian(rho - sigma);
}

double trace_distance(const TwoBodyMatrix& rho, const TwoBodyMatrix& sigma) {
  return trace_distance(rho.m, sigma.m);
}

TwoBodyMatrix to_interaction_picture(const TwoBodyMatrix& rho, const DickeConfig& cfg) {
  TwoBodyMatrix out = rho;
  for (std::size_t s = 0; s < 4; ++s) {
    const double es = cfg.delta * basis::sz_sum(s);
    for (std::size_t sp = 0; sp < 4; ++sp) {
      const double esp = cfg.delta * basis::sz_sum(sp);
      out.m(s, sp) = phase((es - esp) * rho.time) * rho.m(s, sp);
    }
  }
  return out;
}

double fit_loglog_slope(std::span<const ScalingPoint> points, double floor) {
  std::vector<double> x, y;
  for (const ScalingPoint& p : points) {
    if (p.distance > floor && p.gamma > 0.0) {
      x.push_back(std::log(p.gamma));
      y.push_back(std::log(p.distance));
    }
  }
  if (x.size() < 3) {
    throw InsufficientPoints("fit_loglog_slope: fewer than 3 points above the floor");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace catlight
