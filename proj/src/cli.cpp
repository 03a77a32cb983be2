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

#include "spinsync/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "spinsync/analysis.hpp"
#include "spinsync/classical.hpp"
#include "spinsync/lindblad.hpp"
#include "spinsync/numerics.hpp"
#include "spinsync/spin.hpp"

namespace spinsync {

namespace {

using nlohmann::ordered_json;

struct Options {
  double j = 1.5;
  double t_end = 10.0;
  double dt = 1e-3;
  double tol = 1e-10;
  std::string initial;
  std::string output;
  std::string format;
  int stride = 10;
  bool verify = false;
};

// ---------------------------------------------------------------------------
// Formatting. CSV fields are fixed 6-decimal; JSON numbers are rounded to 12
// significant digits so identical configs produce byte-identical files.

std::string fmt_fixed(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_general(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

double round_sig(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
  const int exp10 = static_cast<int>(std::floor(std::log10(std::abs(v))));
  const double scale = std::pow(10.0, 11 - exp10);
  return std::round(v * scale) / scale;
}

ordered_json json_complex(Complex c) {
  return ordered_json::array({round_sig(c.real()), round_sig(c.imag())});
}

ordered_json json_vector(const ComplexVector& v) {
  ordered_json arr = ordered_json::array();
  for (const Complex& c : v) arr.push_back(json_complex(c));
  return arr;
}

ordered_json json_matrix(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_complex(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_output(const std::string& path, const std::string& content,
                  std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << content;
  if (!file) throw std::runtime_error("failed writing output file: " + path);
}

std::vector<std::size_t> stride_indices(std::size_t n, int stride) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(stride))
    idx.push_back(i);
  if (idx.empty() || idx.back() != n - 1) idx.push_back(n - 1);
  return idx;
}

// ---------------------------------------------------------------------------
// Config validation

double validated_j(double j) {
  const int two_j = static_cast<int>(std::lround(2.0 * j));
  if (std::abs(2.0 * j - two_j) > 1e-9 || two_j < 1 || two_j > 16)
    throw std::invalid_argument(
        "--j must be a half-integer in [1/2, 8], got " + std::to_string(j));
  return two_j / 2.0;
}

void validate_time(const Options& opt) {
  if (!(opt.t_end > 0.0)) throw std::invalid_argument("--t-end must be positive");
  if (!(opt.dt > 0.0)) throw std::invalid_argument("--dt must be positive");
  if (!(opt.dt < opt.t_end))
    throw std::invalid_argument("--dt must be smaller than --t-end");
  if (opt.stride < 1) throw std::invalid_argument("--stride must be at least 1");
}

void validate_tol(const Options& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
}

void validate_format(const Options& opt, const char* required) {
  if (opt.format != required)
    throw std::invalid_argument("this command emits " + std::string(required) +
                                " output; got --format " + opt.format);
}

ClassicalState parse_vector3(const std::string& text) {
  std::array<double, 3> v{};
  std::stringstream ss(text);
  std::string item;
  std::size_t count = 0;
  while (std::getline(ss, item, ',')) {
    if (count == 3)
      throw std::invalid_argument("--initial expects lx,ly,lz, got '" + text + "'");
    std::size_t pos = 0;
    try {
      v[count] = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || item.empty() || !std::isfinite(v[count]))
      throw std::invalid_argument("--initial: bad component '" + item + "'");
    ++count;
  }
  if (count != 3)
    throw std::invalid_argument("--initial expects lx,ly,lz, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

DensityMatrix parse_quantum_initial(const std::string& text,
                                    const SpinRepresentation& rep,
                                    const std::vector<PureState>& darks) {
  if (text == "maximally-mixed") return DensityMatrix::maximally_mixed(rep.dim);
  if (text == "dark") {
    if (darks.empty())
      throw std::runtime_error("no dark state available for --initial dark");
    return DensityMatrix::pure(darks.front());
  }
  if (text.rfind("basis:", 0) == 0) {
    const std::string num = text.substr(6);
    std::size_t pos = 0;
    long k = 0;
    try {
      k = std::stol(num, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != num.size() || num.empty())
      throw std::invalid_argument("--initial basis:k needs an integer, got '" + num + "'");
    if (k < 1 || static_cast<std::size_t>(k) > rep.dim)
      throw std::invalid_argument("--initial basis:" + std::to_string(k) +
                                  " out of range 1.." + std::to_string(rep.dim));
    return DensityMatrix::basis_state(rep.dim, static_cast<std::size_t>(k - 1));
  }
  throw std::invalid_argument(
      "--initial must be maximally-mixed, dark or basis:k, got '" + text + "'");
}

// ---------------------------------------------------------------------------
// Invariant re-checks behind --verify

void verify_classical(const std::vector<ClassicalSample>& samples) {
  const double l2_ref = samples.front().l2;
  double prev_entropy = samples.front().entropy;
  for (const ClassicalSample& s : samples) {
    if (std::abs(s.l2 - l2_ref) > 1e-9 * std::max(l2_ref, 1e-12))
      throw std::runtime_error("verify: L2 not conserved at t=" + std::to_string(s.t));
    if (s.entropy < prev_entropy - 1e-12)
      throw std::runtime_error("verify: S=lx decreased at t=" + std::to_string(s.t));
    prev_entropy = s.entropy;
  }
}

void verify_quantum(const std::vector<QuantumSample>& samples) {
  for (const QuantumSample& s : samples) {
    if (s.trace_err > 1e-9)
      throw std::runtime_error("verify: trace error " + std::to_string(s.trace_err) +
                               " at t=" + std::to_string(s.t));
    if (s.purity > 1.0 + 1e-9 || s.purity < -1e-12)
      throw std::runtime_error("verify: purity out of range at t=" + std::to_string(s.t));
    if (s.fidelity && (*s.fidelity > 1.0 + 1e-9 || *s.fidelity < -1e-12))
      throw std::runtime_error("verify: fidelity out of range at t=" + std::to_string(s.t));
  }
}

void verify_dark(const ComplexMatrix& jump, const PureState& dark) {
  const double residual = matvec(jump, dark).norm();
  if (residual > 1e-8 * jump.frobenius_norm())
    throw std::runtime_error("verify: dark state residual " + std::to_string(residual));
}

// ---------------------------------------------------------------------------
// Commands

int cmd_classical(const Options& opt, std::ostream& out) {
  validate_time(opt);
  validate_format(opt, "csv");
  const ClassicalState s0 = parse_vector3(opt.initial);

  const auto samples = integrate_classical(s0, opt.t_end, opt.dt);
  if (opt.verify) verify_classical(samples);

  std::string csv = "t,lx,ly,lz,L2,phase_diff,S\n";
  for (std::size_t i : stride_indices(samples.size(), opt.stride)) {
    const ClassicalSample& s = samples[i];
    csv += fmt_fixed(s.t) + "," + fmt_fixed(s.state.lx) + "," +
           fmt_fixed(s.state.ly) + "," + fmt_fixed(s.state.lz) + "," +
           fmt_fixed(s.l2) + ",";
    if (s.phase) csv += fmt_fixed(*s.phase);
    csv += "," + fmt_fixed(s.entropy) + "\n";
  }
  write_output(opt.output, csv, out);
  return 0;
}

int cmd_quantum(const Options& opt, std::ostream& out) {
  validate_time(opt);
  validate_tol(opt);
  validate_format(opt, "csv");
  const SpinRepresentation rep = build_spin(validated_j(opt.j));
  const LindbladModel model = spin_model(rep);

  const std::vector<PureState> darks = dark_state(model, opt.tol);
  if (darks.empty())
    throw std::runtime_error("no dark state at tolerance " + fmt_general(opt.tol));
  const DensityMatrix rho0 = parse_quantum_initial(opt.initial, rep, darks);

  const auto samples = evolve(model, rep, rho0, opt.t_end, opt.dt, darks.front());
  if (opt.verify) verify_quantum(samples);

  std::string csv = "t,exp_lx,exp_ly,exp_lz,purity,trace_err,fidelity_dark\n";
  for (std::size_t i : stride_indices(samples.size(), opt.stride)) {
    const QuantumSample& s = samples[i];
    csv += fmt_fixed(s.t) + "," + fmt_fixed(s.exp_lx) + "," + fmt_fixed(s.exp_ly) +
           "," + fmt_fixed(s.exp_lz) + "," + fmt_fixed(s.purity) + "," +
           fmt_fixed(s.trace_err) + "," + fmt_fixed(s.fidelity.value_or(0.0)) + "\n";
  }
  write_output(opt.output, csv, out);
  return 0;
}

int cmd_steady(const Options& opt, std::ostream& out) {
  validate_tol(opt);
  validate_format(opt, "json");
  const SpinRepresentation rep = build_spin(validated_j(opt.j));
  const LindbladModel model = spin_model(rep);

  const Superoperator sup = liouvillian(model);
  const std::vector<ComplexVector> null_basis = kernel(sup.matrix, opt.tol);
  if (null_basis.empty())
    throw std::runtime_error("no stationary state at tolerance " +
                             fmt_general(opt.tol));
  const std::vector<PureState> darks = dark_state(model, opt.tol);
  if (darks.empty())
    throw std::runtime_error("no stationary state at tolerance " +
                             fmt_general(opt.tol));

  const PhaseOperator ph = phase_operator(rep);
  const PhaseDecomposition decomp = phase_decompose(darks.front(), ph);

  if (opt.verify) {
    verify_dark(model.jumps.front(), darks.front());
    if (std::abs(decomp.total_weight() - 1.0) > 1e-12)
      throw std::runtime_error("verify: phase weights do not sum to 1");
    const DensityMatrix projector = DensityMatrix::pure(darks.front());
    const std::vector<DensityMatrix> steady = steady_states(model, opt.tol);
    if ((steady.front().rho - projector.rho).frobenius_norm() > 1e-8)
      throw std::runtime_error(
          "verify: Liouvillian steady state disagrees with the dark state");
  }

  ordered_json report;
  report["j"] = round_sig(rep.j);
  ordered_json dark_list = ordered_json::array();
  for (const PureState& d : darks) dark_list.push_back(json_vector(d));
  report["dark_states"] = std::move(dark_list);
  report["liouvillian_kernel_dim"] = null_basis.size();
  if (rep.dim == 4) report["concurrence"] = round_sig(concurrence(darks.front()));
  ordered_json decomposition = ordered_json::array();
  for (std::size_t k = 0; k < decomp.eigenvalues.size(); ++k) {
    ordered_json entry;
    entry["eigenvalue"] = json_complex(decomp.eigenvalues[k]);
    entry["coefficient"] = json_complex(decomp.coefficients[k]);
    entry["weight"] = round_sig(decomp.weights[k]);
    decomposition.push_back(std::move(entry));
  }
  report["phase_decomposition"] = std::move(decomposition);
  report["w"] = round_sig(decomp.zero_phase_weight());

  write_output(opt.output, report.dump(2) + "\n", out);
  return 0;
}

int cmd_phase_op(const Options& opt, std::ostream& out) {
  validate_format(opt, "json");
  const SpinRepresentation rep = build_spin(validated_j(opt.j));
  const PhaseOperator ph = phase_operator(rep);

  if (opt.verify) {
    const ComplexMatrix gram =
        matmul(ph.unitary.adjoint(), ph.unitary) - ComplexMatrix::identity(ph.dim);
    if (gram.max_abs() > 1e-12)
      throw std::runtime_error("verify: phase operator is not unitary");
    for (const Complex& lambda : ph.eigenvalues) {
      if (std::abs(std::pow(lambda, static_cast<double>(ph.dim)) - Complex(1.0)) > 1e-12)
        throw std::runtime_error("verify: eigenvalue is not an N-th root of unity");
    }
    const ComplexMatrix modulus = matmul(rep.lplus, rep.lminus);
    ComplexMatrix root(ph.dim, ph.dim);
    for (std::size_t i = 0; i < ph.dim; ++i)
      root(i, i) = std::sqrt(modulus(i, i).real());
    if ((matmul(root, ph.unitary) - rep.lplus).max_abs() > 1e-12)
      throw std::runtime_error("verify: polar decomposition identity failed");
  }

  ordered_json report;
  report["j"] = round_sig(rep.j);
  report["dim"] = ph.dim;
  report["unitary"] = json_matrix(ph.unitary);
  ordered_json values = ordered_json::array();
  for (const Complex& lambda : ph.eigenvalues) values.push_back(json_complex(lambda));
  report["eigenvalues"] = std::move(values);
  ordered_json vectors = ordered_json::array();
  for (const ComplexVector& v : ph.eigenvectors) vectors.push_back(json_vector(v));
  report["eigenvectors"] = std::move(vectors);

  write_output(opt.output, report.dump(2) + "\n", out);
  return 0;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  validate_tol(opt);
  validate_format(opt, "csv");
  const double j_max = validated_j(opt.j);
  const int two_j_max = static_cast<int>(std::lround(2.0 * j_max));

  std::string csv = "j,N,kernel_dim,top_lx_overlap,w\n";
  for (int two_j = 1; two_j <= two_j_max; ++two_j) {
    const SpinRepresentation rep = build_spin(two_j / 2.0);
    const LindbladModel model = spin_model(rep);

    const std::vector<PureState> darks = dark_state(model, opt.tol);
    if (darks.empty())
      throw std::runtime_error("no dark state at tolerance for j=" +
                               std::to_string(rep.j));
    const std::size_t kernel_dim = kernel(liouvillian(model).matrix, opt.tol).size();

    const EigenResult lx_eig = hermitian_eigen(rep.lx);
    const double overlap = std::norm(lx_eig.eigenvectors.back().dot(darks.front()));
    const double w =
        phase_decompose(darks.front(), phase_operator(rep)).zero_phase_weight();

    if (opt.verify) {
      verify_dark(model.jumps.front(), darks.front());
      if (overlap > 1.0 + 1e-9)
        throw std::runtime_error("verify: overlap exceeds 1 for j=" +
                                 std::to_string(rep.j));
    }

    csv += fmt_fixed(rep.j) + "," + std::to_string(rep.dim) + "," +
           std::to_string(kernel_dim) + "," + fmt_fixed(overlap) + "," +
           fmt_fixed(w) + "\n";
  }
  write_output(opt.output, csv, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Simulator for a dissipative angular-momentum model of complete phase "
      "synchronization and its quantum (Lindblad) counterpart."};
  app.require_subcommand(1);

  Options classical_opt;
  classical_opt.initial = "0,0.6,0.8";
  classical_opt.format = "csv";
  CLI::App* classical_cmd = app.add_subcommand(
      "classical", "Integrate the classical flow and write a CSV trajectory");
  classical_cmd->add_option("--initial", classical_opt.initial,
                            "Initial state lx,ly,lz");
  classical_cmd->add_option("--t-end", classical_opt.t_end, "Integration horizon");
  classical_cmd->add_option("--dt", classical_opt.dt, "RK4 step");
  classical_cmd->add_option("--stride", classical_opt.stride, "Output stride");
  classical_cmd->add_option("--output", classical_opt.output, "Output path");
  classical_cmd->add_option("--format", classical_opt.format, "Output format (csv)");
  classical_cmd->add_flag("--verify", classical_opt.verify,
                          "Re-run invariant checks on the result");

  Options quantum_opt;
  quantum_opt.initial = "maximally-mixed";
  quantum_opt.format = "csv";
  CLI::App* quantum_cmd = app.add_subcommand(
      "quantum", "Integrate the master equation and write a CSV trajectory");
  quantum_cmd->add_option("--j", quantum_opt.j, "Spin j (half-integer)");
  quantum_cmd->add_option("--initial", quantum_opt.initial,
                          "maximally-mixed, dark or basis:k (1-based)");
  quantum_cmd->add_option("--t-end", quantum_opt.t_end, "Integration horizon");
  quantum_cmd->add_option("--dt", quantum_opt.dt, "RK4 step");
  quantum_cmd->add_option("--tol", quantum_opt.tol, "Kernel tolerance");
  quantum_cmd->add_option("--stride", quantum_opt.stride, "Output stride");
  quantum_cmd->add_option("--output", quantum_opt.output, "Output path");
  quantum_cmd->add_option("--format", quantum_opt.format, "Output format (csv)");
  quantum_cmd->add_flag("--verify", quantum_opt.verify,
                        "Re-run invariant checks on the result");

  Options steady_opt;
  steady_opt.format = "json";
  CLI::App* steady_cmd = app.add_subcommand(
      "steady", "Stationary-state report (dark state, concurrence, phase content)");
  steady_cmd->add_option("--j", steady_opt.j, "Spin j (half-integer)");
  steady_cmd->add_option("--tol", steady_opt.tol, "Kernel tolerance");
  steady_cmd->add_option("--output", steady_opt.output, "Output path");
  steady_cmd->add_option("--format", steady_opt.format, "Output format (json)");
  steady_cmd->add_flag("--verify", steady_opt.verify,
                       "Re-run invariant checks on the result");

  Options phase_opt;
  phase_opt.format = "json";
  CLI::App* phase_cmd =
      app.add_subcommand("phase-op", "Dump the phase operator as JSON");
  phase_cmd->add_option("--j", phase_opt.j, "Spin j (half-integer)");
  phase_cmd->add_option("--output", phase_opt.output, "Output path");
  phase_cmd->add_option("--format", phase_opt.format, "Output format (json)");
  phase_cmd->add_flag("--verify", phase_opt.verify,
                      "Re-run invariant checks on the result");

  Options sweep_opt;
  sweep_opt.format = "csv";
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Tabulate kernel dimension, top-lx overlap and w over j");
  sweep_cmd->add_option("--j", sweep_opt.j, "Largest j of the sweep");
  sweep_cmd->add_option("--tol", sweep_opt.tol, "Kernel tolerance");
  sweep_cmd->add_option("--output", sweep_opt.output, "Output path");
  sweep_cmd->add_option("--format", sweep_opt.format, "Output format (csv)");
  sweep_cmd->add_flag("--verify", sweep_opt.verify,
                      "Re-run invariant checks on the result");

  std::vector<const char*> argv;
  argv.push_back("spinsync");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classical_cmd) return cmd_classical(classical_opt, out);
    if (*quantum_cmd) return cmd_quantum(quantum_opt, out);
    if (*steady_cmd) return cmd_steady(steady_opt, out);
    if (*phase_cmd) return cmd_phase_op(phase_opt, out);
    if (*sweep_cmd) return cmd_sweep(sweep_opt, out);
    err << "error: no command given\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace spinsync
