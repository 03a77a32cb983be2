// Copyright 2026 The spinsync developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace spinsync {

using Complex = std::complex<double>;

/// Dense complex vector. dot() is the conjugate-linear inner product
/// <this|other>.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : entries_(dim) {}
  ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {}

  std::size_t size() const noexcept { return entries_.size(); }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  double norm() const;
  /// Unit vector in the same direction; throws on (near-)zero input.
  ComplexVector normalized() const;
  /// <this|other> = sum_i conj(this_i) * other_i.
  Complex dot(const ComplexVector& other) const;

  ComplexVector& operator+=(const ComplexVector& other);
  ComplexVector& operator-=(const ComplexVector& other);
  ComplexVector& operator*=(Complex s);

 private:
  std::vector<Complex> entries_;
};

ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);
ComplexVector operator*(ComplexVector a, Complex s);
ComplexVector operator*(Complex s, ComplexVector a);

/// Dense row-major complex matrix. Shape mismatches throw
/// std::invalid_argument naming both shapes.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<Complex>& d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::string shape() const;

  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  /// max_ij |A(i,j) - conj(A(j,i))|, zero for exactly Hermitian matrices.
  double hermiticity_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

/// Standard matrix product; requires a.cols == b.rows.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, row-major block layout.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v);

/// Rotates v by a global phase so its first significant component is real
/// and positive. A zero vector is returned unchanged.
ComplexVector normalize_global_phase(const ComplexVector& v);

struct EigenResult {
  std::vector<double> eigenvalues;          // ascending
  std::vector<ComplexVector> eigenvectors;  // orthonormal, same order
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. The input must be Hermitian within 1e-10 in max-norm.
EigenResult hermitian_eigen(const ComplexMatrix& a);

/// Orthonormal basis of the null space of a square matrix, obtained from the
/// eigenvectors of A^dagger A below tol^2 * ||A||_F^2. A zero matrix yields
/// the full standard basis.
std::vector<ComplexVector> kernel(const ComplexMatrix& a, double tol = 1e-10);

struct TrajectoryPoint {
  double t;
  std::vector<double> y;
};

using VectorField =
    std::function<std::vector<double>(double, const std::vector<double>&)>;

/// Fixed-step classical fourth-order Runge-Kutta. The last step is shortened
/// so the trajectory ends exactly at t_span.second; both endpoints are
/// included. Throws std::runtime_error naming the first time at which a
/// non-finite state appears.
std::vector<TrajectoryPoint> integrate_rk4(const VectorField& f,
                                           const std::vector<double>& y0,
                                           std::pair<double, double> t_span,
                                           double dt);

}  // namespace spinsync
