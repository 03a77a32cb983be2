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

#include <array>
#include <vector>

#include "spinsync/numerics.hpp"
#include "spinsync/spin.hpp"

namespace spinsync {

/// A pure state is a unit-norm amplitude vector; operations taking one
/// validate the norm on entry.
using PureState = ComplexVector;

/// Pure two-qubit concurrence C = 2|psi_1 psi_4 - psi_2 psi_3| for the
/// amplitude order (psi_1, psi_2, psi_3, psi_4). Zero exactly for product
/// states, one for Bell states.
double concurrence(const PureState& psi);

struct ProductFactors {
  bool is_product = false;
  std::array<Complex, 2> first{};   // valid only when is_product
  std::array<Complex, 2> second{};
};

/// Tests whether a two-qubit state factorizes as first (x) second, using the
/// dominant column of the 2x2 amplitude reshape (first qubit = row index).
ProductFactors is_product(const PureState& psi, double tol = 1e-9);

/// Coefficients of a state over the phase-operator eigenbasis, keyed by
/// eigenvalue (an N-th root of unity).
struct PhaseDecomposition {
  std::vector<Complex> eigenvalues;
  std::vector<Complex> coefficients;  // c_k = <v_k|psi>
  std::vector<double> weights;        // |c_k|^2

  Complex coefficient(Complex eigenvalue) const;
  double weight(Complex eigenvalue) const;
  double total_weight() const;
  /// Relative weight w of the zero-phase (eigenvalue 1) component.
  double zero_phase_weight() const;
};

PhaseDecomposition phase_decompose(const PureState& psi, const PhaseOperator& ph);

/// For a decomposition of a globally-phase-normalized real-amplitude state:
/// true iff c(conj(lambda)) = conj(c(lambda)) for every eigenvalue, which for
/// N = 4 means c(1), c(-1) real and c(-i) = conj(c(i)).
bool conjugate_pair_check(const PhaseDecomposition& d, double tol = 1e-12);

}  // namespace spinsync
