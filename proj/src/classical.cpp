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

#include "spinsync/classical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spinsync {

namespace {

constexpr Complex kImag{0.0, 1.0};

using CVec3 = std::array<Complex, 3>;

CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

CVec3 state_vec(const ClassicalState& s) {
  return {Complex(s.lx), Complex(s.ly), Complex(s.lz)};
}

double wrap_upper_pi(double phi) {
  // atan2 can return -pi for arguments on the negative real axis; the
  // convention here is (-pi, pi].
  if (phi == -std::numbers::pi) return std::numbers::pi;
  return phi;
}

}  // namespace

double OscillatorPair::phi1() const {
  if (r1() <= 0.0) throw std::domain_error("phi1 undefined: zero amplitude");
  return wrap_upper_pi(std::arg(z1));
}

double OscillatorPair::phi2() const {
  if (r2() <= 0.0) throw std::domain_error("phi2 undefined: zero amplitude");
  return wrap_upper_pi(std::arg(z2));
}

StateFunction StateFunction::from_value(
    std::function<Complex(const ClassicalState&)> value, double step) {
  StateFunction f;
  f.value = value;
  f.gradient = [value, step](const ClassicalState& s) -> CVec3 {
    const auto diff = [&](ClassicalState lo, ClassicalState hi) {
      return (value(hi) - value(lo)) / (2.0 * step);
    };
    ClassicalState xm = s, xp = s, ym = s, yp = s, zm = s, zp = s;
    xm.lx -= step; xp.lx += step;
    ym.ly -= step; yp.ly += step;
    zm.lz -= step; zp.lz += step;
    return {diff(xm, xp), diff(ym, yp), diff(zm, zp)};
  };
  return f;
}

StateFunction l2_function() {
  StateFunction f;
  f.value = [](const ClassicalState& s) { return Complex(s.l2()); };
  f.gradient = [](const ClassicalState& s) -> CVec3 {
    return {Complex(2.0 * s.lx), Complex(2.0 * s.ly), Complex(2.0 * s.lz)};
  };
  return f;
}

StateFunction lx_function() {
  StateFunction f;
  f.value = [](const ClassicalState& s) { return Complex(s.lx); };
  f.gradient = [](const ClassicalState&) -> CVec3 {
    return {Complex(1.0), Complex(0.0), Complex(0.0)};
  };
  return f;
}

StateFunction lz_function() {
  StateFunction f;
  f.value = [](const ClassicalState& s) { return Complex(s.lz); };
  f.gradient = [](const ClassicalState&) -> CVec3 {
    return {Complex(0.0), Complex(0.0), Complex(1.0)};
  };
  return f;
}

StateFunction jump_function() {
  StateFunction f;
  f.value = [](const ClassicalState& s) { return Complex(s.lz, -s.ly); };
  f.gradient = [](const ClassicalState&) -> CVec3 {
    return {Complex(0.0), -kImag, Complex(1.0)};
  };
  return f;
}

ClassicalState rhs_eq1(const ClassicalState& s) {
  return {2.0 * (s.ly * s.ly + s.lz * s.lz), -2.0 * s.lx * s.ly,
          -2.0 * s.lx * s.lz};
}

ClassicalState rhs_quasithermo(const StateFunction& h, const StateFunction& s,
                               const ClassicalState& state) {
  const CVec3 grad_h = h.gradient(state);
  const CVec3 grad_s = s.gradient(state);
  const CVec3 grad_l2 = {Complex(2.0 * state.lx), Complex(2.0 * state.ly),
                         Complex(2.0 * state.lz)};
  CVec3 a = cross(grad_s, grad_l2);
  for (Complex& c : a) c *= 0.5;
  CVec3 rhs = cross(grad_h, a);
  // H and S are real-valued by contract, so only the real parts survive.
  return {0.5 * rhs[0].real(), 0.5 * rhs[1].real(), 0.5 * rhs[2].real()};
}

ClassicalState rhs_dissipative(const StateFunction& h,
                               const std::vector<StateFunction>& jumps,
                               const ClassicalState& state) {
  const CVec3 l = state_vec(state);

  CVec3 total = cross(l, h.gradient(state));
  for (Complex& c : total) c = -c;

  for (const StateFunction& r : jumps) {
    const Complex rv = r.value(state);
    CVec3 grad_conj = r.gradient(state);
    for (Complex& c : grad_conj) c = std::conj(c);
    const CVec3 lxg = cross(l, grad_conj);
    for (std::size_t i = 0; i < 3; ++i) {
      const Complex term = kImag * rv * lxg[i];
      total[i] += term + std::conj(term);
    }
  }

  double max_imag = 0.0;
  for (const Complex& c : total) max_imag = std::max(max_imag, std::abs(c.imag()));
  if (max_imag > 1e-9) {
    std::ostringstream msg;
    msg << "rhs_dissipative: imaginary residue " << max_imag
        << " exceeds 1e-9 (inconsistent gradients)";
    throw std::runtime_error(msg.str());
  }
  return {total[0].real(), total[1].real(), total[2].real()};
}

ClassicalState schwinger_map(const OscillatorPair& p) {
  // u = z1 * conj(z2) = r1 r2 exp(i(phi1-phi2)), so lx = Re u, ly = Im u.
  const Complex u = p.z1 * std::conj(p.z2);
  return {u.real(), u.imag(), 0.5 * (std::norm(p.z1) - std::norm(p.z2))};
}

double phase_difference(const ClassicalState& s) {
  if (s.lx == 0.0 && s.ly == 0.0)
    throw std::domain_error("phase difference undefined: lx = ly = 0");
  return wrap_upper_pi(std::atan2(s.ly, s.lx));
}

std::vector<ClassicalSample> integrate_classical(const ClassicalState& s0,
                                                 double t_end, double dt) {
  if (!(t_end > 0.0))
    throw std::invalid_argument("integrate_classical: t_end must be positive");

  const VectorField field = [](double, const std::vector<double>& y) {
    const ClassicalState d = rhs_eq1({y[0], y[1], y[2]});
    return std::vector<double>{d.lx, d.ly, d.lz};
  };
  const auto traj =
      integrate_rk4(field, {s0.lx, s0.ly, s0.lz}, {0.0, t_end}, dt);

  std::vector<ClassicalSample> samples;
  samples.reserve(traj.size());
  for (const TrajectoryPoint& pt : traj) {
    ClassicalSample sample;
    sample.t = pt.t;
    sample.state = {pt.y[0], pt.y[1], pt.y[2]};
    sample.l2 = sample.state.l2();
    sample.entropy = sample.state.lx;
    if (!(sample.state.lx == 0.0 && sample.state.ly == 0.0))
      sample.phase = phase_difference(sample.state);
    samples.push_back(std::move(sample));
  }
  return samples;
}

}  // namespace spinsync
