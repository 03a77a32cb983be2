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
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "spinsync/numerics.hpp"

namespace spinsync {

/// Dimensionless angular-momentum triple (l_x, l_y, l_z).
struct ClassicalState {
  double lx = 0.0;
  double ly = 0.0;
  double lz = 0.0;

  double l2() const { return lx * lx + ly * ly + lz * lz; }
};

/// Two complex oscillator amplitudes z_i = r_i * exp(i*phi_i).
struct OscillatorPair {
  Complex z1{};
  Complex z2{};

  double r1() const { return std::abs(z1); }
  double r2() const { return std::abs(z2); }
  double phi1() const;  // in (-pi, pi], defined only for r1 > 0
  double phi2() const;
};

/// A scalar function of the classical state together with its gradient.
/// Built-in factories supply exact gradients; from_value() falls back to
/// central finite differences.
struct StateFunction {
  std::function<Complex(const ClassicalState&)> value;
  std::function<std::array<Complex, 3>(const ClassicalState&)> gradient;

  static StateFunction from_value(std::function<Complex(const ClassicalState&)> value,
                                  double step = 1e-6);
};

StateFunction l2_function();    // L^2 = lx^2 + ly^2 + lz^2, gradient 2*l
StateFunction lx_function();    // lx, gradient (1, 0, 0)
StateFunction lz_function();    // lz, gradient (0, 0, 1)
StateFunction jump_function();  // lz - i*ly, gradient (0, -i, 1)

/// The model flow: dl/dt = (2(ly^2+lz^2), -2*lx*ly, -2*lx*lz).
ClassicalState rhs_eq1(const ClassicalState& s);

/// Quasithermodynamic flow dl_i/dt = (1/2) eps_ikl (dH/dl_k) A_l with
/// A_l = (1/2) eps_lmn (dS/dl_m) (dL^2/dl_n). H and S must be real-valued.
ClassicalState rhs_quasithermo(const StateFunction& h, const StateFunction& s,
                               const ClassicalState& state);

/// General dissipative flow
/// dl/dt = -(l x dH/dl) + i sum_k R_k (l x dR_k*/dl) + c.c. of the
/// dissipative term. Throws if the imaginary residue exceeds 1e-9 (gradients
/// inconsistent with values).
ClassicalState rhs_dissipative(const StateFunction& h,
                               const std::vector<StateFunction>& jumps,
                               const ClassicalState& state);

/// Angular-momentum variables of an oscillator pair:
/// lx = r1 r2 cos(phi1-phi2), ly = r1 r2 sin(phi1-phi2),
/// lz = (|z1|^2 - |z2|^2)/2.
ClassicalState schwinger_map(const OscillatorPair& p);

/// atan2(ly, lx) in (-pi, pi]. Throws std::domain_error when lx = ly = 0
/// (one oscillator has zero amplitude).
double phase_difference(const ClassicalState& s);

struct ClassicalSample {
  double t = 0.0;
  ClassicalState state;
  double l2 = 0.0;
  double entropy = 0.0;  // S = lx
  std::optional<double> phase;
};

/// RK4 trajectory of rhs_eq1 with per-sample diagnostics.
std::vector<ClassicalSample> integrate_classical(const ClassicalState& s0,
                                                 double t_end, double dt);

}  // namespace spinsync
