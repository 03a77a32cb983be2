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

#include "spinsync/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spinsync {

namespace {

[[noreturn]] void throw_shape_mismatch(const char* op, const std::string& a,
                                       const std::string& b) {
  throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + a +
                              " vs " + b + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexVector

double ComplexVector::norm() const {
  double s = 0.0;
  for (const Complex& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

ComplexVector ComplexVector::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw std::invalid_argument("cannot normalize zero vector");
  ComplexVector out = *this;
  for (Complex& e : out.entries_) e /= n;
  return out;
}

Complex ComplexVector::dot(const ComplexVector& other) const {
  if (size() != other.size())
    throw_shape_mismatch("dot", std::to_string(size()),
                         std::to_string(other.size()));
  Complex s = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    s += std::conj(entries_[i]) * other.entries_[i];
  return s;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
  if (size() != other.size())
    throw_shape_mismatch("vector add", std::to_string(size()),
                         std::to_string(other.size()));
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
  if (size() != other.size())
    throw_shape_mismatch("vector sub", std::to_string(size()),
                         std::to_string(other.size()));
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex s) {
  for (Complex& e : entries_) e *= s;
  return *this;
}

ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
ComplexVector operator*(ComplexVector a, Complex s) { return a *= s; }
ComplexVector operator*(Complex s, ComplexVector a) { return a *= s; }

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_)
      throw std::invalid_argument("matrix literal rows have unequal lengths");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::string ComplexMatrix::shape() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(i, j) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) return frobenius_norm();
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw_shape_mismatch("matrix add", shape(), other.shape());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw_shape_mismatch("matrix sub", shape(), other.shape());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (Complex& e : entries_) e *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw_shape_mismatch("matmul", a.shape(), b.shape());
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.size())
    throw_shape_mismatch("matvec", a.shape(), std::to_string(v.size()));
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexVector normalize_global_phase(const ComplexVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > 1e-12) {
      const Complex factor = std::conj(v[i]) / a;
      ComplexVector out = v;
      out *= factor;
      out[i] = Complex(a, 0.0);  // kill rounding residue in the pivot
      return out;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver (cyclic complex Jacobi)

EigenResult hermitian_eigen(const ComplexMatrix& a) {
  if (!a.is_square())
    throw std::invalid_argument("hermitian_eigen: matrix is not square (" +
                                a.shape() + ")");
  const double defect = a.hermiticity_defect();
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "hermitian_eigen: matrix is not Hermitian (asymmetry max-norm "
        << defect << ")";
    throw std::invalid_argument(msg.str());
  }

  const std::size_t n = a.rows();
  ComplexMatrix m = a;
  // Fold onto an exactly Hermitian matrix before rotating.
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = m.frobenius_norm();
  const auto offdiag = [&m, n] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(m(i, j));
    return std::sqrt(2.0 * s);
  };

  if (scale > 0.0) {
    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
      if (offdiag() <= 1e-15 * scale) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = std::abs(m(p, q));
          if (apq <= 1e-18 * scale) {
            m(p, q) = 0.0;
            m(q, p) = 0.0;
            continue;
          }
          const Complex phase = m(p, q) / apq;
          const Complex phase_conj = std::conj(phase);
          const double app = m(p, p).real();
          const double aqq = m(q, q).real();
          const double tau = (aqq - app) / (2.0 * apq);
          const double t =
              (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          // Unitary U differing from identity at (p,p)=c, (p,q)=s,
          // (q,p)=-s*conj(phase), (q,q)=c*conj(phase); apply m <- U^H m U.
          for (std::size_t r = 0; r < n; ++r) {
            const Complex mrp = m(r, p), mrq = m(r, q);
            m(r, p) = c * mrp - s * phase_conj * mrq;
            m(r, q) = s * mrp + c * phase_conj * mrq;
            const Complex vrp = v(r, p), vrq = v(r, q);
            v(r, p) = c * vrp - s * phase_conj * vrq;
            v(r, q) = s * vrp + c * phase_conj * vrq;
          }
          for (std::size_t col = 0; col < n; ++col) {
            const Complex mpc = m(p, col), mqc = m(q, col);
            m(p, col) = c * mpc - s * phase * mqc;
            m(q, col) = s * mpc + c * phase * mqc;
          }
          m(p, q) = 0.0;
          m(q, p) = 0.0;
          m(p, p) = Complex(m(p, p).real(), 0.0);
          m(q, q) = Complex(m(q, q).real(), 0.0);
        }
      }
    }
    if (!converged && offdiag() > 1e-13 * scale)
      throw std::runtime_error("hermitian_eigen: Jacobi sweep did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&m](std::size_t i, std::size_t j) {
    return m(i, i).real() < m(j, j).real();
  });

  EigenResult result;
  result.eigenvalues.reserve(n);
  result.eigenvectors.reserve(n);
  for (std::size_t k : order) {
    result.eigenvalues.push_back(m(k, k).real());
    ComplexVector col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v(r, k);
    result.eigenvectors.push_back(col.normalized());
  }
  return result;
}

std::vector<ComplexVector> kernel(const ComplexMatrix& a, double tol) {
  if (!a.is_square())
    throw std::invalid_argument("kernel: matrix is not square (" + a.shape() +
                                ")");
  if (!(tol > 0.0)) throw std::invalid_argument("kernel: tol must be positive");

  const double fro2 = a.frobenius_norm() * a.frobenius_norm();
  const EigenResult eig = hermitian_eigen(matmul(a.adjoint(), a));
  const double threshold = tol * tol * fro2;

  std::vector<ComplexVector> basis;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    // A zero matrix annihilates everything; the strict threshold test would
    // miss that case since 0 < 0 is false.
    if (fro2 == 0.0) {
      basis.push_back(eig.eigenvectors[k]);
      continue;
    }
    // The Jacobi diagonal carries absolute noise ~eps*||A||_F^2, which would
    // mask thresholds below machine precision; the Rayleigh quotient
    // ||A v||^2 of the computed vector resolves the eigenvalue much finer.
    const double rayleigh_value = [&] {
      const ComplexVector av = matvec(a, eig.eigenvectors[k]);
      return av.norm() * av.norm();
    }();
    if (rayleigh_value < threshold) basis.push_back(eig.eigenvectors[k]);
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Fixed-step RK4

namespace {

void check_finite(const std::vector<double>& y, double t) {
  for (double x : y)
    if (!std::isfinite(x)) {
      std::ostringstream msg;
      msg << "integrate_rk4: non-finite state at t=" << t;
      throw std::runtime_error(msg.str());
    }
}

std::vector<double> rk4_step(const VectorField& f, double t,
                             const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> k1 = f(t, y);
  std::vector<double> tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  std::vector<double> k2 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  std::vector<double> k3 = f(t + 0.5 * h, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
  std::vector<double> k4 = f(t + h, tmp);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  return out;
}

}  // namespace

std::vector<TrajectoryPoint> integrate_rk4(const VectorField& f,
                                           const std::vector<double>& y0,
                                           std::pair<double, double> t_span,
                                           double dt) {
  const double t0 = t_span.first, t1 = t_span.second;
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_rk4: dt must be positive");
  if (!(t1 > t0))
    throw std::invalid_argument("integrate_rk4: t_span must be increasing");

  std::vector<TrajectoryPoint> traj;
  std::vector<double> y = y0;
  check_finite(y, t0);
  traj.push_back({t0, y});

  double t = t0;
  long step = 0;
  while (t < t1) {
    const double remaining = t1 - t;
    // Snap near-full final steps to the exact remainder so the trajectory
    // ends at t1 without a stray micro-step.
    const bool final_step = remaining <= dt * (1.0 + 1e-12);
    const double h = final_step ? remaining : dt;
    y = rk4_step(f, t, y, h);
    if (final_step) {
      t = t1;
    } else {
      ++step;
      t = t0 + static_cast<double>(step) * dt;
    }
    check_finite(y, t);
    traj.push_back({t, y});
  }
  return traj;
}

}  // namespace spinsync
