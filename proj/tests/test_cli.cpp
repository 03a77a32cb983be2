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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "spinsync/cli.hpp"

using namespace spinsync;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "spinsync_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("classical run emits the synchronized trajectory") {
  const fs::path path = temp_file("classical.csv");
  const CliResult r = run({"classical", "--output", path.string()});
  REQUIRE(r.code == 0);

  const auto lines = lines_of(read_file(path));
  REQUIRE(lines.size() >= 2);
  CHECK(lines.front() == "t,lx,ly,lz,L2,phase_diff,S");

  const auto last = fields_of(lines.back());
  REQUIRE(last.size() == 7);
  CHECK(last[0] == "10.000000");
  CHECK(last[1] == "1.000000");
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(fields_of(lines[i])[4] == "1.000000");
}

TEST_CASE("classical run is deterministic") {
  const fs::path a = temp_file("det_a.csv");
  const fs::path b = temp_file("det_b.csv");
  REQUIRE(run({"classical", "--output", a.string()}).code == 0);
  REQUIRE(run({"classical", "--output", b.string()}).code == 0);
  CHECK(read_file(a) == read_file(b));
}

TEST_CASE("classical fixed point yields identical rows") {
  const fs::path path = temp_file("fixed.csv");
  REQUIRE(run({"classical", "--initial", "1,0,0", "--output", path.string()})
              .code == 0);
  const auto lines = lines_of(read_file(path));
  for (std::size_t i = 2; i < lines.size(); ++i)
    CHECK(fields_of(lines[i])[1] == fields_of(lines[1])[1]);
}

TEST_CASE("classical phase difference decays from pi/2") {
  const fs::path path = temp_file("phase.csv");
  REQUIRE(run({"classical", "--initial", "0,1,0", "--output", path.string()})
              .code == 0);
  const auto lines = lines_of(read_file(path));
  CHECK(fields_of(lines[1])[5] == "1.570796");
  double prev = 10.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double phase = std::stod(fields_of(lines[i])[5]);
    CHECK(phase <= prev + 1e-6);
    prev = phase;
  }
  CHECK(std::stod(fields_of(lines.back())[5]) <= 1e-5);
}

TEST_CASE("classical emits an empty field where the phase is undefined") {
  const fs::path path = temp_file("undef_phase.csv");
  REQUIRE(run({"classical", "--initial", "0,0,1", "--output", path.string()})
              .code == 0);
  const auto lines = lines_of(read_file(path));
  CHECK(fields_of(lines[1])[5].empty());     // on the z-axis at t=0
  CHECK(!fields_of(lines[2])[5].empty());    // lx grows immediately
}

TEST_CASE("quantum run converges to the dark state") {
  const fs::path path = temp_file("quantum.csv");
  const CliResult r = run({"quantum", "--output", path.string(), "--verify"});
  REQUIRE(r.code == 0);

  const auto lines = lines_of(read_file(path));
  CHECK(lines.front() == "t,exp_lx,exp_ly,exp_lz,purity,trace_err,fidelity_dark");
  const auto last = fields_of(lines.back());
  REQUIRE(last.size() == 7);
  CHECK(std::stod(last[6]) >= 0.999999);
  CHECK(std::abs(std::stod(last[1]) - 1.5) <= 2e-5);
  CHECK(std::stod(last[4]) >= 0.999999);
}

TEST_CASE("quantum run from the dark state stays there") {
  const fs::path path = temp_file("quantum_dark.csv");
  REQUIRE(run({"quantum", "--initial", "dark", "--t-end", "2", "--output",
               path.string()})
              .code == 0);
  const auto lines = lines_of(read_file(path));
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(fields_of(lines[i])[6] == "1.000000");
}

TEST_CASE("quantum run for a single qubit from a basis state") {
  const fs::path path = temp_file("quantum_half.csv");
  REQUIRE(run({"quantum", "--j", "0.5", "--initial", "basis:2", "--output",
               path.string()})
              .code == 0);
  const auto last = fields_of(lines_of(read_file(path)).back());
  CHECK(std::abs(std::stod(last[1]) - 0.5) <= 2e-5);
}

TEST_CASE("steady report for the two-qubit model") {
  const fs::path path = temp_file("steady.json");
  const CliResult r = run({"steady", "--output", path.string(), "--verify"});
  REQUIRE(r.code == 0);

  const auto report = nlohmann::json::parse(read_file(path));
  CHECK(report["j"].get<double>() == 1.5);
  CHECK(report["liouvillian_kernel_dim"].get<int>() == 1);
  CHECK(std::abs(report["concurrence"].get<double>() - 0.5) <= 1e-9);
  CHECK(std::abs(report["w"].get<double>() - 0.933012701892) <= 1e-9);

  const auto dark = report["dark_states"][0];
  REQUIRE(dark.size() == 4);
  const double expected[] = {0.353553390593, 0.612372435696, 0.612372435696,
                             0.353553390593};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(dark[i][0].get<double>() - expected[i]) <= 1e-9);
    CHECK(std::abs(dark[i][1].get<double>()) <= 1e-9);
  }

  double weight_sum = 0.0;
  for (const auto& entry : report["phase_decomposition"])
    weight_sum += entry["weight"].get<double>();
  CHECK(std::abs(weight_sum - 1.0) <= 1e-9);
}

TEST_CASE("steady report for a single qubit omits the concurrence") {
  const fs::path path = temp_file("steady_half.json");
  REQUIRE(run({"steady", "--j", "0.5", "--output", path.string()}).code == 0);
  const auto report = nlohmann::json::parse(read_file(path));
  CHECK(!report.contains("concurrence"));
  CHECK(std::abs(report["w"].get<double>() - 1.0) <= 1e-9);
}

TEST_CASE("steady with an unattainable tolerance exits 3") {
  const CliResult r = run({"steady", "--tol", "1e-30"});
  CHECK(r.code == 3);
  CHECK(r.err.find("no stationary state") != std::string::npos);
}

TEST_CASE("sweep table up to j=3") {
  const fs::path path = temp_file("sweep.csv");
  REQUIRE(run({"sweep", "--j", "3", "--output", path.string(), "--verify"})
              .code == 0);
  const auto lines = lines_of(read_file(path));
  CHECK(lines.front() == "j,N,kernel_dim,top_lx_overlap,w");
  REQUIRE(lines.size() == 7);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = fields_of(lines[i]);
    REQUIRE(fields.size() == 5);
    CHECK(fields[2] == "1");
    CHECK(fields[3] == "1.000000");
  }
  CHECK(fields_of(lines[1])[0] == "0.500000");
  CHECK(fields_of(lines[1])[4] == "1.000000");
  CHECK(fields_of(lines[3])[0] == "1.500000");
  CHECK(fields_of(lines[3])[4] == "0.933013");
}

TEST_CASE("phase operator dump") {
  const fs::path path = temp_file("phase_op.json");
  REQUIRE(run({"phase-op", "--output", path.string(), "--verify"}).code == 0);
  const auto report = nlohmann::json::parse(read_file(path));
  CHECK(report["dim"].get<int>() == 4);
  CHECK(report["unitary"][0][1][0].get<double>() == 1.0);
  CHECK(report["unitary"][3][0][0].get<double>() == 1.0);
  REQUIRE(report["eigenvalues"].size() == 4);
  CHECK(report["eigenvalues"][1][1].get<double>() == 1.0);  // lambda = i
  REQUIRE(report["eigenvectors"].size() == 4);
}

TEST_CASE("output defaults to the provided stream") {
  const CliResult r = run({"classical", "--t-end", "1", "--stride", "1000"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,lx", 0) == 0);
}

TEST_CASE("configuration errors exit with code 2") {
  CHECK(run({"quantum", "--j", "0.3"}).code == 2);
  CHECK(run({"quantum", "--j", "9"}).code == 2);
  CHECK(run({"classical", "--dt", "2", "--t-end", "1"}).code == 2);
  CHECK(run({"steady", "--tol", "-1"}).code == 2);
  CHECK(run({"classical", "--initial", "foo"}).code == 2);
  CHECK(run({"classical", "--initial", "1,2"}).code == 2);
  CHECK(run({"classical", "--initial", "1,2,3,4"}).code == 2);
  CHECK(run({"quantum", "--initial", "basis:9"}).code == 2);
  CHECK(run({"quantum", "--initial", "nonsense"}).code == 2);
  CHECK(run({"classical", "--format", "json"}).code == 2);
  CHECK(run({"steady", "--format", "csv"}).code == 2);
  CHECK(run({"bogus-command"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const CliResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("classical") != std::string::npos);
}

TEST_CASE("verify passes on every command") {
  const fs::path path = temp_file("verify_all");
  CHECK(run({"classical", "--verify", "--output", path.string()}).code == 0);
  CHECK(run({"quantum", "--t-end", "1", "--verify", "--output", path.string()})
            .code == 0);
  CHECK(run({"steady", "--verify", "--output", path.string()}).code == 0);
  CHECK(run({"phase-op", "--verify", "--output", path.string()}).code == 0);
  CHECK(run({"sweep", "--verify", "--output", path.string()}).code == 0);
}

}  // TEST_SUITE
