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

#include "spinsync/spin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinsync {

namespace {

constexpr Complex kImag{0.0, 1.0};

// exp(2*pi*i*num/den) with quarter-turn angles produced exactly.
Complex root_of_unity(std::size_t num, std::size_t den) {
  num %= den;
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

SpinRepresentation build_spin(double j) {
  const double two_j_real = 2.0 * j;
  const int two_j = static_cast<int>(std::lround(two_j_real));
  if (two_j < 1 || std::abs(two_j_real - two_j) > 1e-9)
    throw std::invalid_argument("build_spin: j must be a positive half-integer, got " +
                                std::to_string(j));

  SpinRepresentation rep;
  rep.j = two_j / 2.0;
  rep.two_j = two_j;
  rep.dim = static_cast<std::size_t>(two_j) + 1;
  const std::size_t n = rep.dim;

  rep.lplus = ComplexMatrix(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // row i has m = j - i; element <j,m|l_+|j,m-1> = sqrt((i+1)(2j-i)).
    const double s = std::sqrt(static_cast<double>((i + 1) * (two_j - static_cast<int>(i))));
    rep.lplus(i, i + 1) = s;
  }
  rep.lminus = rep.lplus.adjoint();

  rep.lz = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    rep.lz(i, i) = (two_j - 2.0 * static_cast<double>(i)) / 2.0;

  rep.lx = 0.5 * (rep.lplus + rep.lminus);
  rep.ly = (-0.5 * kImag) * (rep.lplus - rep.lminus);
  return rep;
}

ComplexMatrix jump_operator(const SpinRepresentation& rep) {
  return rep.lz - kImag * rep.ly;
}

PhaseOperator phase_operator_for_dimension(std::size_t n) {
  if (n < 2) throw std::invalid_argument("phase operator needs dimension >= 2");

  PhaseOperator ph;
  ph.dim = n;
  ph.unitary = ComplexMatrix(n, n);
  for (std::size_t k = 0; k + 1 < n; ++k) ph.unitary(k, k + 1) = 1.0;
  ph.unitary(n - 1, 0) = 1.0;  // the corner entry makes the shift unitary

  ph.eigenvalues.reserve(n);
  ph.eigenvectors.reserve(n);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    ph.eigenvalues.push_back(root_of_unity(k, n));
    ComplexVector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = inv_sqrt_n * root_of_unity(k * r, n);
    ph.eigenvectors.push_back(v);
  }
  return ph;
}

PhaseOperator phase_operator(const SpinRepresentation& rep) {
  return phase_operator_for_dimension(rep.dim);
}

}  // namespace spinsync
