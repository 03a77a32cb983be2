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

#include <cstddef>
#include <vector>

#include "spinsync/numerics.hpp"

namespace spinsync {

/// su(2) generators for spin j in the standard ladder basis, ordered by
/// descending magnetic quantum number m = j, j-1, ..., -j.
struct SpinRepresentation {
  double j = 0.0;
  int two_j = 0;
  std::size_t dim = 0;  // N = 2j + 1
  ComplexMatrix lx, ly, lz, lplus, lminus;
};

/// Builds the spin-j representation from the ladder matrix elements
/// <j,m|l_+|j,m-1> = sqrt((j-m+1)(j+m)). Requires 2j to be a positive
/// integer.
SpinRepresentation build_spin(double j);

/// The model's single jump operator R = l_z - i*l_y. Satisfies the ladder
/// identity [l_x, R] = R, so its kernel is the highest-weight state along x.
ComplexMatrix jump_operator(const SpinRepresentation& rep);

/// Unitary factor of the polar decomposition l_+ = sqrt(l_+ l_-) * U,
/// fixed as the cyclic shift with a corner 1 (l_+ is singular, so the
/// factor is not unique a priori). Eigenvalues are the N-th roots of unity
/// exp(2*pi*i*k/N); eigenvectors are the Fourier vectors with first
/// component 1/sqrt(N).
struct PhaseOperator {
  std::size_t dim = 0;
  ComplexMatrix unitary;
  std::vector<Complex> eigenvalues;
  std::vector<ComplexVector> eigenvectors;
};

PhaseOperator phase_operator(const SpinRepresentation& rep);

/// Same construction for a bare dimension, without a spin representation.
PhaseOperator phase_operator_for_dimension(std::size_t n);

}  // namespace spinsync
