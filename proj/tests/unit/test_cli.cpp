// Copyright 2026 The Vibronic Authors
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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"

using namespace vibronic;
using namespace vibronic::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vibronic_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

RunConfig small_run(const fs::path& out) {
  RunConfig cfg;
  cfg.modes = 2;
  cfg.n = 3;
  cfg.nt = 256;
  cfg.total_fs = 66.0;
  cfg.stride = 4;
  cfg.out = out;
  return cfg;
}

}  // namespace

TEST_CASE("reduced models keep the coupling mode") {
  const VibronicModel m = preset("pyrazine-4d");
  const VibronicModel r2 = reduced_model(m, 2);
  REQUIRE(r2.mode_count() == 2);
  CHECK(r2.mode(0).label == "nu6a");
  CHECK(r2.mode(1).label == "nu10a");
  CHECK(r2.lambda() == m.lambda());
  const VibronicModel r1 = reduced_model(m, 1);
  CHECK(r1.mode(0).label == "nu6a");
  CHECK(r1.lambda() == 0.0);
  CHECK(reduced_model(m, 3).mode_count() == 3);
  CHECK(reduced_model(m, 0) == m);
  CHECK(reduced_model(m, 9) == m);
}

TEST_CASE("engine names") {
  CHECK(parse_engine("circuit") == Engine::Circuit);
  CHECK(parse_engine("soft") == Engine::Soft);
  CHECK_THROWS_AS(parse_engine("gpu"), std::invalid_argument);
}

TEST_CASE("runs are reproducible byte for byte") {
  const fs::path a = scratch("rerun_a");
  const fs::path b = scratch("rerun_b");
  std::ostringstream log;
  CHECK(cmd_propagate(small_run(a), log) == 0);
  CHECK(cmd_propagate(small_run(b), log) == 0);
  CHECK(cmd_spectrum(small_run(a), log) == 0);
  CHECK(cmd_spectrum(small_run(b), log) == 0);
  for (const char* f : {"autocorr.csv", "populations.csv", "boundary.csv", "spectrum.csv"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(slurp(a / "autocorr.csv").rfind("t_fs,re,im,abs\n", 0) == 0);
  CHECK(line_count(a / "autocorr.csv") == 65 + 1);
  CHECK(slurp(a / "spectrum.csv").rfind("E_eV,intensity\n", 0) == 0);

  RunConfig circ = small_run(scratch("rerun_circuit"));
  circ.engine = Engine::Circuit;
  CHECK(cmd_propagate(circ, log) == 0);
  CHECK_FALSE(fs::exists(circ.out / "boundary.csv"));
  CHECK(line_count(circ.out / "autocorr.csv") == 65 + 1);
}

TEST_CASE("unwritable output directory") {
  RunConfig cfg = small_run("/proc/vibronic-no-such-dir");
  std::ostringstream log;
  CHECK_THROWS(cfg.prepare_out());
  CHECK_THROWS(cmd_spectrum(cfg, log));
}

TEST_CASE("zero-point energy scan") {
  const fs::path out = scratch("zpe");
  RunConfig cfg;
  cfg.out = out;
  const GridConvention conv[] = {GridConvention::Endpoint};
  std::ostringstream log;
  CHECK(cmd_zpe_scan(cfg, conv, {}, log) == 0);
  CHECK(line_count(out / "zpe_scan.csv") == 1 + 9);
  const auto rows = zpe_tables(preset("pyrazine-4d"), conv);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].table == "fixed-spacing");
  CHECK(rows[0].points == 8);
  CHECK(std::abs(rows[0].zpe - 0.2254839449) < 1e-9);
  CHECK(rows[4].table == "fixed-range");
  CHECK(rows[4].points == 4);
  CHECK(std::abs(rows[4].zpe - 0.6524371769) < 1e-9);
  const int bad[] = {12};
  CHECK_THROWS_AS(cmd_zpe_scan(cfg, conv, bad, log), std::invalid_argument);
}

TEST_CASE("resources command") {
  const fs::path out = scratch("resources");
  fs::create_directories(out);
  const Variant both[] = {Variant::A, Variant::B};
  std::ostringstream log;
  CHECK(cmd_resources(ModelClass::Linear4D, 4, 4, 512, both, true, out, log) == 0);
  CHECK(log.str().find("46021") != std::string::npos);
  CHECK(log.str().find("46068") != std::string::npos);
  CHECK(line_count(out / "resources.csv") == 3);
}

TEST_CASE("phase estimation demo") {
  const GridSpec g{4, -5.0, 5.0};
  const QpeDemo d = qpe_demo(preset("pyrazine-4d"), "nu6a", g, 6, 0.5, 10000, 1);
  CHECK(d.analytic == doctest::Approx(0.0740 / 2 + 0.4617).epsilon(1e-12));
  CHECK(d.bin_width == doctest::Approx(0.12924).epsilon(1e-4));
  CHECK(std::abs(d.gaussian_peak_energy - d.analytic) <= d.bin_width);
  CHECK(std::abs(d.eigen_peak_energy - d.analytic) <= d.bin_width);
  CHECK(d.eigen_peak_mass > 0.9);
  CHECK(d.energies.size() == 64);
  std::uint64_t total = 0;
  for (auto c : d.counts) total += c;
  CHECK(total == 10000);
  CHECK_THROWS_AS(qpe_demo(preset("pyrazine-4d"), "nu99", g, 6, 0.5, 10, 1), std::invalid_argument);
}

TEST_CASE("engine cross-check") {
  RunConfig cfg = small_run(scratch("verify"));
  cfg.nt = 64;
  cfg.total_fs = 16.5;
  cfg.stride = 8;
  const VerifyResult r = verify_engines(cfg);
  CHECK(r.final_fidelity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.max_autocorr_error < 1e-10);
  CHECK(r.depth_per_step == 57);
  std::ostringstream log;
  CHECK(cmd_verify(cfg, 0.999, log) == 0);
  CHECK(fs::exists(cfg.out / "verify.csv"));
}

TEST_CASE("shot scans over seeds") {
  RunConfig cfg = small_run(scratch("shots"));
  cfg.stride = 1;
  cfg.nt = 128;
  ShotsConfig sc;
  sc.seeds = 3;
  sc.step = 5000;
  sc.max_shots = 50000;
  const AutocorrSeries a = run_autocorr(cfg);
  const auto r1 = shots_scan_all(a, sc, 7, cfg.spectrum_options());
  const auto r2 = shots_scan_all(a, sc, 7, cfg.spectrum_options());
  REQUIRE(r1.size() == 2);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].scans.size() == 3);
    CHECK(r1[i].median.size() == 4);
    CHECK(r1[i].scans[0].tvd == r2[i].scans[0].tvd);
    CHECK(r1[i].scans[0].shots.back() == 50000);
  }
  std::ostringstream log;
  CHECK(cmd_shots_scan(cfg, sc, log) == 0);
  CHECK(fs::exists(cfg.out / "shots_scan_direct.csv"));
  CHECK(fs::exists(cfg.out / "shots_scan_autocorr.csv"));
  CHECK(line_count(cfg.out / "shots_crossings.csv") > 1);
  sc.seeds = 0;
  CHECK_THROWS_AS(shots_scan_all(a, sc, 7, cfg.spectrum_options()), std::invalid_argument);
}
