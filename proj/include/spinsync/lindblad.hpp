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
#include <optional>
#include <vector>

#include "spinsync/analysis.hpp"
#include "spinsync/numerics.hpp"
#include "spinsync/spin.hpp"

namespace spinsync {

/// N x N operator state: Hermitian, unit trace, positive semidefinite
/// (within the tolerances validate() enforces).
struct DensityMatrix {
  ComplexMatrix rho;

  std::size_t dim() const { return rho.rows(); }

  static DensityMatrix maximally_mixed(std::size_t n);
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis_state(std::size_t n, std::size_t index);

  /// Throws std::invalid_argument naming the violated invariant:
  /// hermiticity within 1e-10, trace within 1e-10 of one, minimum
  /// eigenvalue >= -1e-9.
  void validate() const;
};

/// Master-equation model
///   drho/dt = -i[H, rho] + sum_k ([R_k rho, R_k^+] + [R_k, rho R_k^+]),
/// i.e. the dissipator 2 R rho R^+ - {R^+ R, rho} (twice the common
/// convention); all relaxation times are in these units.
struct LindbladModel {
  ComplexMatrix hamiltonian;  // zero matrix for purely dissipative models
  std::vector<ComplexMatrix> jumps;

  std::size_t dim() const {
    return hamiltonian.rows() > 0 ? hamiltonian.rows()
           : jumps.empty()        ? 0
                                  : jumps.front().rows();
  }
  bool has_hamiltonian() const { return hamiltonian.max_abs() > 0.0; }
};

enum class ModelHamiltonian {
  zero,     // the quantized model carries no Hamiltonian term
  casimir,  // H = j(j+1) * I; commutes with everything, dynamics unchanged
};

/// The quantum counterpart of the classical model: single jump operator
/// R = l_z - i*l_y.
LindbladModel spin_model(const SpinRepresentation& rep,
                         ModelHamiltonian h = ModelHamiltonian::zero);

/// Right-hand side of the master equation at rho; output is traceless and
/// Hermitian within rounding.
ComplexMatrix generator(const LindbladModel& model, const DensityMatrix& rho);

/// Same flow on an arbitrary (not necessarily valid-state) matrix; used to
/// assemble the superoperator column by column against matrix units.
ComplexMatrix apply_generator(const LindbladModel& model, const ComplexMatrix& rho);

struct QuantumSample {
  double t = 0.0;
  DensityMatrix state;
  double exp_lx = 0.0, exp_ly = 0.0, exp_lz = 0.0;
  double purity = 0.0;
  double trace_err = 0.0;
  std::optional<double> fidelity;  // <ref|rho|ref> when a reference is given
};

/// RK4 evolution of the full density matrix. Every sample is validated;
/// a breach raises std::runtime_error naming the first bad time and the
/// violated invariant.
std::vector<QuantumSample> evolve(const LindbladModel& model,
                                  const SpinRepresentation& rep,
                                  const DensityMatrix& rho0, double t_end,
                                  double dt,
                                  const std::optional<ComplexVector>& reference =
                                      std::nullopt);

/// Orthonormal basis of the joint kernel of all jump operators (the pure
/// stationary states of the purely dissipative model), each normalized with
/// first significant component real positive. Requires H = 0.
std::vector<PureState> dark_state(const LindbladModel& model, double tol = 1e-10);

/// N^2 x N^2 matrix acting on column-stacked density matrices.
struct Superoperator {
  std::size_t dim = 0;  // N^2
  ComplexMatrix matrix;

  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

/// Column-stacking vectorization, vec(M)[c*N + r] = M(r, c).
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, std::size_t n);

Superoperator liouvillian(const LindbladModel& model);

/// Stationary density matrices from the Liouvillian kernel: each kernel
/// vector is phase-rotated to a positive trace, Hermitized and normalized;
/// traceless kernel elements are rejected. Throws "no stationary state at
/// tolerance" on an empty kernel and "degenerate model" when the kernel is
/// all of state space.
std::vector<DensityMatrix> steady_states(const LindbladModel& model,
                                         double tol = 1e-10);

}  // namespace spinsync
