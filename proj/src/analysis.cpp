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

#include "spinsync/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinsync {

namespace {

void require_unit_norm(const PureState& psi, const char* op) {
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(op) + ": state is not unit-norm (|psi| = " +
                                std::to_string(psi.norm()) + ")");
}

}  // namespace

double concurrence(const PureState& psi) {
  if (psi.size() != 4)
    throw std::invalid_argument("concurrence: needs a two-qubit state (dim 4), got dim " +
                                std::to_string(psi.size()));
  require_unit_norm(psi, "concurrence");
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

ProductFactors is_product(const PureState& psi, double tol) {
  ProductFactors out;
  if (concurrence(psi) > tol) return out;
  out.is_product = true;

  // Reshape row-major into M with the first qubit as row index; a product
  // state has M = first * second^T.
  const Complex m00 = psi[0], m01 = psi[1], m10 = psi[2], m11 = psi[3];
  const double col0 = std::norm(m00) + std::norm(m10);
  const double col1 = std::norm(m01) + std::norm(m11);
  if (col1 > col0) {
    const double n = std::sqrt(col1);
    out.first = {m01 / n, m11 / n};
  } else {
    const double n = std::sqrt(col0);
    out.first = {m00 / n, m10 / n};
  }
  const Complex a0 = std::conj(out.first[0]), a1 = std::conj(out.first[1]);
  out.second = {a0 * m00 + a1 * m10, a0 * m01 + a1 * m11};
  return out;
}

Complex PhaseDecomposition::coefficient(Complex eigenvalue) const {
  for (std::size_t k = 0; k < eigenvalues.size(); ++k)
    if (std::abs(eigenvalues[k] - eigenvalue) < 1e-6) return coefficients[k];
  throw std::invalid_argument("phase decomposition has no eigenvalue near (" +
                              std::to_string(eigenvalue.real()) + ", " +
                              std::to_string(eigenvalue.imag()) + ")");
}

double PhaseDecomposition::weight(Complex eigenvalue) const {
  return std::norm(coefficient(eigenvalue));
}

double PhaseDecomposition::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double PhaseDecomposition::zero_phase_weight() const {
  return weight(Complex(1.0, 0.0)) / total_weight();
}

PhaseDecomposition phase_decompose(const PureState& psi, const PhaseOperator& ph) {
  if (psi.size() != ph.dim)
    throw std::invalid_argument("phase_decompose: dimension mismatch (state " +
                                std::to_string(psi.size()) + " vs operator " +
                                std::to_string(ph.dim) + ")");
  PhaseDecomposition d;
  d.eigenvalues = ph.eigenvalues;
  d.coefficients.reserve(ph.dim);
  d.weights.reserve(ph.dim);
  for (std::size_t k = 0; k < ph.dim; ++k) {
    const Complex c = ph.eigenvectors[k].dot(psi);
    d.coefficients.push_back(c);
    d.weights.push_back(std::norm(c));
  }
  return d;
}

bool conjugate_pair_check(const PhaseDecomposition& d, double tol) {
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
    const Complex partner = d.coefficient(std::conj(d.eigenvalues[k]));
    if (std::abs(partner - std::conj(d.coefficients[k])) > tol) return false;
  }
  return true;
}

}  // namespace spinsync
