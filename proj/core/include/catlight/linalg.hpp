#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace catlight {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Dense complex vector. Values are plain data; all operations are pure, so
/// instances can be shared freely across threads.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : v_(dim) {}

  /// Standard basis vector e_k in dimension dim.
  static ComplexVector basis(std::size_t dim, std::size_t k);

  std::size_t size() const { return v_.size(); }
  Complex& operator[](std::size_t i) { return v_[i]; }
  const Complex& operator[](std::size_t i) const { return v_[i]; }

  Complex* data() { return v_.data(); }
  const Complex* data() const { return v_.data(); }
  auto begin() { return v_.begin(); }
  auto end() { return v_.end(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  double squared_norm() const;
  double norm() const;

  ComplexVector& operator+=(const ComplexVector& o);
  ComplexVector& operator-=(const ComplexVector& o);
  ComplexVector& operator*=(Complex s);

 private:
  std::vector<Complex> v_;
};

ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);
ComplexVector operator*(Complex s, ComplexVector v);
ComplexVector operator*(double s, ComplexVector v);

/// Inner product, conjugate-linear in the first argument.
Complex dot(const ComplexVector& a, const ComplexVector& b);

/// Dense complex matrix in row-major order.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  Complex* data() { return a_.data(); }
  const Complex* data() const { return a_.data(); }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// max_ij |a(i,j) - conj(a(j,i))|; requires a square matrix.
  double hermitian_defect() const;
  /// Largest entry magnitude.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(double s, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

/// Kronecker product: entry (i*b.rows+k, j*b.cols+l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// All eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi rotations
/// with off-diagonal Frobenius threshold 1e-13 and a 100-sweep budget; every
/// spectrum this project needs is tiny, so robustness wins over asymptotics.
///
/// Throws NonHermitianInput if the Hermiticity defect exceeds 1e-10 and
/// NoConvergence if the sweep budget is exhausted.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Trace norm sum_i |lambda_i| of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& m);

/// One classical fourth-order Runge-Kutta step for dy/dt = f(t, y).
/// State needs value semantics plus operator+ and scalar multiplication;
/// works for Complex, ComplexVector and ComplexMatrix alike.
template <class State, class F>
State rk4_step(F&& f, const State& y, double t, double dt) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * dt, y + (0.5 * dt) * k1);
  const State k3 = f(t + 0.5 * dt, y + (0.5 * dt) * k2);
  const State k4 = f(t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace catlight
