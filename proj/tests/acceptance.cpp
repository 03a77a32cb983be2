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

// End-to-end acceptance checks for the library: every headline result of the
// model is verified at a pinned tolerance, one line of output per criterion.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "spinsync/analysis.hpp"
#include "spinsync/classical.hpp"
#include "spinsync/lindblad.hpp"
#include "spinsync/numerics.hpp"
#include "spinsync/spin.hpp"

using namespace spinsync;

namespace {

int failures = 0;

void criterion(int number, const std::string& name,
               const std::function<bool()>& check) {
  bool ok = false;
  std::string detail;
  try {
    ok = check();
  } catch (const std::exception& e) {
    detail = std::string(" (") + e.what() + ")";
  }
  std::printf("%s %2d  %s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

const double kSqrt3 = std::sqrt(3.0);
const Complex kI{0.0, 1.0};

PureState reference_dark_state() {
  const double c = 1.0 / (2.0 * std::sqrt(2.0));
  return PureState{c, kSqrt3 * c, kSqrt3 * c, c};
}

}  // namespace

int main() {
  const SpinRepresentation rep32 = build_spin(1.5);
  const LindbladModel model32 = spin_model(rep32);

  criterion(1, "stationary state equals (1,sqrt3,sqrt3,1)/(2*sqrt2)", [&] {
    const auto darks = dark_state(model32, 1e-10);
    if (darks.size() != 1) return false;
    const PureState expected = reference_dark_state();
    for (int i = 0; i < 4; ++i)
      if (std::abs(darks.front()[i] - expected[i]) > 1e-10) return false;
    return true;
  });

  criterion(2, "concurrence of the stationary state is 0.5", [&] {
    const auto darks = dark_state(model32, 1e-10);
    return std::abs(concurrence(darks.front()) - 0.5) <= 1e-12;
  });

  criterion(3, "phase content: a, z, missing |-1>, and w", [&] {
    const auto darks = dark_state(model32, 1e-10);
    const PhaseDecomposition d =
        phase_decompose(darks.front(), phase_operator(rep32));
    const double a_ref = (1.0 + kSqrt3) / (2.0 * std::sqrt(2.0));
    const double z_part = (1.0 - kSqrt3) / (4.0 * std::sqrt(2.0));
    const double w_ref = (2.0 + kSqrt3) / 4.0;
    return std::abs(d.coefficient({1, 0}) - Complex(a_ref)) <= 1e-12 &&
           std::abs(d.coefficient({-1, 0})) <= 1e-12 &&
           std::abs(d.coefficient({0, 1}) - Complex(z_part, z_part)) <= 1e-12 &&
           std::abs(d.zero_phase_weight() - w_ref) <= 1e-12;
  });

  criterion(4, "classical trajectory synchronizes on the tanh solution", [&] {
    const auto samples = integrate_classical({0.0, 0.6, 0.8}, 10.0, 1e-3);
    const double l2_ref = samples.front().l2;
    double prev_lx = samples.front().state.lx;
    for (const ClassicalSample& s : samples) {
      if (std::abs(s.l2 - l2_ref) > 1e-9 * l2_ref) return false;
      if (s.state.lx < prev_lx - 1e-12) return false;
      prev_lx = s.state.lx;
      if (std::abs(s.state.lx - std::tanh(2.0 * s.t)) > 1e-6) return false;
    }
    const ClassicalSample& last = samples.back();
    return std::abs(last.state.lx - 1.0) <= 1e-6 && last.phase.has_value() &&
           std::abs(*last.phase) <= 1e-5;
  });

  criterion(5, "dissipative and quasithermodynamic forms match the flow", [&] {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    StateFunction zero_h;
    zero_h.value = [](const ClassicalState&) { return Complex(0.0); };
    zero_h.gradient = [](const ClassicalState&) {
      return std::array<Complex, 3>{Complex(0.0), Complex(0.0), Complex(0.0)};
    };
    for (int k = 0; k < 1000; ++k) {
      const ClassicalState s{dist(rng), dist(rng), dist(rng)};
      const ClassicalState flow = rhs_eq1(s);
      const ClassicalState diss = rhs_dissipative(zero_h, {jump_function()}, s);
      if (std::abs(diss.lx - flow.lx) > 1e-12 ||
          std::abs(diss.ly - flow.ly) > 1e-12 ||
          std::abs(diss.lz - flow.lz) > 1e-12)
        return false;
      const ClassicalState quasi = rhs_quasithermo(l2_function(), lx_function(), s);
      if (std::abs(quasi.lx - 0.5 * flow.lx) > 1e-14 * std::max(1.0, std::abs(flow.lx)) ||
          std::abs(quasi.ly - 0.5 * flow.ly) > 1e-14 * std::max(1.0, std::abs(flow.ly)) ||
          std::abs(quasi.lz - 0.5 * flow.lz) > 1e-14 * std::max(1.0, std::abs(flow.lz)))
        return false;
    }
    return true;
  });

  criterion(6, "master equation preserves structure and reaches the dark state", [&] {
    std::mt19937 rng(73);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      ComplexMatrix a(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
      ComplexMatrix rho = matmul(a, a.adjoint());
      rho *= Complex(1.0 / rho.trace().real());
      const ComplexMatrix g = generator(model32, DensityMatrix{rho});
      if (std::abs(g.trace()) > 1e-12 || g.hermiticity_defect() > 1e-12)
        return false;
    }
    const auto samples = evolve(model32, rep32, DensityMatrix::maximally_mixed(4),
                                10.0, 1e-3, reference_dark_state());
    for (const QuantumSample& s : samples)
      if (s.trace_err > 1e-9) return false;
    for (std::size_t i = 0; i < samples.size(); i += 250)
      if (hermitian_eigen(samples[i].state.rho).eigenvalues.front() < -1e-9)
        return false;
    return samples.back().fidelity.has_value() &&
           *samples.back().fidelity > 1.0 - 1e-6;
  });

  criterion(7, "Liouvillian kernel is one-dimensional and gives the projector", [&] {
    const Superoperator sup = liouvillian(model32);
    if (sup.dim != 16) return false;
    if (kernel(sup.matrix, 1e-10).size() != 1) return false;
    const auto states = steady_states(model32, 1e-10);
    if (states.size() != 1) return false;
    const ComplexMatrix projector = DensityMatrix::pure(reference_dark_state()).rho;
    return (states.front().rho - projector).frobenius_norm() <= 1e-8;
  });

  criterion(8, "phase operator: unitarity, roots of unity, polar identity", [&] {
    for (std::size_t n = 2; n <= 8; ++n) {
      const PhaseOperator ph = phase_operator_for_dimension(n);
      const ComplexMatrix id = ComplexMatrix::identity(n);
      if ((matmul(ph.unitary.adjoint(), ph.unitary) - id).max_abs() > 1e-12)
        return false;
      for (const Complex& lambda : ph.eigenvalues) {
        Complex power = 1.0;
        for (std::size_t p = 0; p < n; ++p) power *= lambda;
        if (std::abs(power - Complex(1.0)) > 1e-12) return false;
      }
      const SpinRepresentation rep = build_spin((static_cast<double>(n) - 1.0) / 2.0);
      const ComplexMatrix modulus_sq = matmul(rep.lplus, rep.lminus);
      ComplexMatrix root(n, n);
      for (std::size_t i = 0; i < n; ++i)
        root(i, i) = std::sqrt(modulus_sq(i, i).real());
      if ((matmul(root, ph.unitary) - rep.lplus).max_abs() > 1e-12) return false;
    }
    const PhaseOperator ph4 = phase_operator_for_dimension(4);
    const ComplexMatrix shift{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}};
    if ((ph4.unitary - shift).max_abs() > 1e-15) return false;
    const Complex lambdas[4] = {Complex(1, 0), kI, Complex(-1, 0), -kI};
    for (int k = 0; k < 4; ++k) {
      if (std::abs(ph4.eigenvalues[k] - lambdas[k]) > 1e-15) return false;
      for (int r = 0; r < 4; ++r) {
        Complex expected = 0.5;
        for (int p = 0; p < r; ++p) expected *= lambdas[k];
        if (std::abs(ph4.eigenvectors[k][r] - expected) > 1e-15) return false;
      }
      if (concurrence(ph4.eigenvectors[k]) > 1e-12) return false;
    }
    return true;
  });

  criterion(9, "sweep: unique dark state is the top lx eigenvector", [&] {
    for (double j : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
      const SpinRepresentation rep = build_spin(j);
      const LindbladModel model = spin_model(rep);
      const ComplexMatrix r = jump_operator(rep);
      if ((matmul(rep.lx, r) - matmul(r, rep.lx) - r).max_abs() > 1e-12)
        return false;
      const auto darks = dark_state(model, 1e-10);
      if (darks.size() != 1) return false;
      const EigenResult lx_eig = hermitian_eigen(rep.lx);
      const double overlap = std::norm(lx_eig.eigenvectors.back().dot(darks.front()));
      if (std::abs(overlap - 1.0) > 1e-9) return false;
      if (kernel(liouvillian(model).matrix, 1e-10).size() != 1) return false;
    }
    return true;
  });

  criterion(10, "RK4 converges at fourth order; eigensolver reconstructs", [&] {
    const VectorField decay = [](double, const std::vector<double>& y) {
      return std::vector<double>{-y[0]};
    };
    const auto err = [&](double dt) {
      return std::abs(integrate_rk4(decay, {1.0}, {0.0, 1.0}, dt).back().y[0] -
                      std::exp(-1.0));
    };
    const double r1 = err(0.02) / err(0.01);
    const double r2 = err(0.01) / err(0.005);
    if (r1 < 12.0 || r1 > 20.0 || r2 < 12.0 || r2 > 20.0) return false;

    std::mt19937 rng(79);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
      ComplexMatrix a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
      const ComplexMatrix h = 0.5 * (a + a.adjoint());
      const EigenResult eig = hermitian_eigen(h);
      ComplexMatrix recon(n, n);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            recon(i, j) += eig.eigenvalues[k] * eig.eigenvectors[k][i] *
                           std::conj(eig.eigenvectors[k][j]);
      if ((recon - h).frobenius_norm() > 1e-8 * h.frobenius_norm()) return false;
    }
    return true;
  });

  if (failures == 0) std::printf("all acceptance criteria passed\n");
  return failures;
}
