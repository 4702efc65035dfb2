#include "catlight/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "catlight/errors.hpp"

namespace catlight {

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t k) {
  ComplexVector e(dim);
  e[k] = 1.0;
  return e;
}

double ComplexVector::squared_norm() const {
  double s = 0.0;
  for (const Complex& x : v_) s += std::norm(x);
  return s;
}

double ComplexVector::norm() const { return std::sqrt(squared_norm()); }

ComplexVector& ComplexVector::operator+=(const ComplexVector& o) {
  assert(size() == o.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& o) {
  assert(size() == o.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex s) {
  for (Complex& x : v_) x *= s;
  return *this;
}

ComplexVector operator+(ComplexVector a, const ComplexVector& b) {
  a += b;
  return a;
}

ComplexVector operator-(ComplexVector a, const ComplexVector& b) {
  a -= b;
  return a;
}

ComplexVector operator*(Complex s, ComplexVector v) {
  v *= s;
  return v;
}

ComplexVector operator*(double s, ComplexVector v) {
  v *= Complex{s, 0.0};
  return v;
}

Complex dot(const ComplexVector& a, const ComplexVector& b) {
  assert(a.size() == b.size());
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex ComplexMatrix::trace() const {
  assert(is_square());
  Complex s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::hermitian_defect() const {
  assert(is_square());
  double d = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& x : a_) m = std::max(m, std::abs(x));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (Complex& x : a_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) {
  m *= s;
  return m;
}

ComplexMatrix operator*(double s, ComplexMatrix m) {
  m *= Complex{s, 0.0};
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.cols() == b.rows());
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  assert(m.cols() == v.size());
  ComplexVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  assert(a.rows() > 0 && b.rows() > 0);
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kOffDiagonalThreshold = 1e-13;
constexpr int kSweepBudget = 100;

double off_diagonal_frobenius(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() == 0) {
    throw NonHermitianInput("hermitian_eigenvalues: matrix must be square and non-empty");
  }
  if (m.hermitian_defect() > kHermitianTol) {
    throw NonHermitianInput("hermitian_eigenvalues: input exceeds Hermiticity tolerance");
  }

  const std::size_t n = m.rows();
  // Work on the Hermitian part so round-off asymmetry cannot bias rotations.
  ComplexMatrix a = 0.5 * (m + m.adjoint());

  bool converged = off_diagonal_frobenius(a) <= kOffDiagonalThreshold;
  for (int sweep = 0; sweep < kSweepBudget && !converged; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;

        // Unitary plane rotation J (columns p,q):
        //   J = [[c e^{i phi}, s e^{i phi}], [-s, c]],  phi = arg(a_pq),
        // chosen so (J^H A J)(p,q) = 0.
        const Complex phase = apq / b;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const Complex aip = a(i, p);
          const Complex aiq = a(i, q);
          a(i, p) = c * phase * aip - s * aiq;
          a(i, q) = s * phase * aip + c * aiq;
          a(p, i) = std::conj(a(i, p));
          a(q, i) = std::conj(a(i, q));
        }
        a(p, p) = app - t * b;
        a(q, q) = aqq + t * b;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    converged = off_diagonal_frobenius(a) <= kOffDiagonalThreshold;
  }
  if (!converged) {
    throw NoConvergence("hermitian_eigenvalues: Jacobi sweep budget exhausted");
  }

  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = std::real(a(i, i));
  std::sort(lambda.begin(), lambda.end());
  return lambda;
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(m)) s += std::abs(lambda);
  return s;
}

}  // namespace catlight
