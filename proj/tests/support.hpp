#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <cmath>
#include <random>
#include <vector>

#include "catlight/linalg.hpp"

namespace testsupport {

using catlight::Complex;
using catlight::ComplexMatrix;

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

// Matrix exponential by scaling-and-squaring with a plain Taylor series.
inline ComplexMatrix expm(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  int squarings = 0;
  double scale = a.frobenius_norm();
  while (scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const double factor = std::pow(0.5, squarings);
  ComplexMatrix x = factor * a;
  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = (1.0 / k) * (term * x);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

// Composite Simpson quadrature of a complex integrand over [0, t].
template <class F>
Complex simpson(F&& f, double t, int intervals = 2000) {
  if (intervals % 2 != 0) ++intervals;
  const double h = t / intervals;
  Complex sum = f(0.0) + f(t);
  for (int k = 1; k < intervals; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * f(k * h);
  }
  return (h / 3.0) * sum;
}

inline ComplexMatrix random_hermitian(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = Complex{u(rng), u(rng)};
  return 0.5 * (b + b.adjoint());
}

// Random unitary from a random Hermitian generator.
inline ComplexMatrix random_unitary(std::size_t n, unsigned seed) {
  return expm(catlight::kI * random_hermitian(n, seed));
}

// Eigenvalues of a Hermitian matrix via its characteristic polynomial:
// power sums p_k = tr(A^k) -> Newton's identities -> bisection on the sign
// changes of the polynomial over the Gershgorin interval. Assumes distinct
// roots (true with probability one for random samples).
inline std::vector<double> charpoly_eigenvalues(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> p(n + 1, 0.0);  // power sums, p[k] = tr(A^k)
  ComplexMatrix power = ComplexMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * a;
    p[k] = std::real(power.trace());
  }
  std::vector<double> e(n + 1, 0.0);  // elementary symmetric polynomials
  e[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      s += (j % 2 == 1 ? 1.0 : -1.0) * e[k - j] * p[j];
    }
    e[k] = s / static_cast<double>(k);
  }
  const auto poly = [&](double x) {
    // prod (x - lambda_i) = sum_k (-1)^k e_k x^{n-k}
    double v = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      v = v * x + (k % 2 == 0 ? 1.0 : -1.0) * e[k];
    }
    return v;
  };

  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
    radius = std::max(radius, row);
  }
  const double lo = -radius - 1.0, hi = radius + 1.0;

  std::vector<double> roots;
  const int grid = 20000;
  double prev_x = lo, prev_v = poly(lo);
  for (int g = 1; g <= grid; ++g) {
    const double x = lo + (hi - lo) * g / grid;
    const double v = poly(x);
    if (prev_v == 0.0) roots.push_back(prev_x);
    if (prev_v * v < 0.0) {
      double a0 = prev_x, b0 = x;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a0 + b0);
        if (poly(a0) * poly(m) <= 0.0) {
          b0 = m;
        } else {
          a0 = m;
        }
      }
      roots.push_back(0.5 * (a0 + b0));
    }
    prev_x = x;
    prev_v = v;
  }
  return roots;
}

}  // namespace testsupport
