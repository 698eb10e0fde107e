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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vibronic/grid.hpp"
#include "vibronic/model.hpp"
#include "vibronic/resources.hpp"
#include "vibronic/signals.hpp"
#include "vibronic/soft.hpp"

namespace vibronic::cli {

enum class Engine { Soft, Circuit };
Engine parse_engine(std::string_view text);

/// Settings shared by the subcommands. Defaults are the production run.
struct RunConfig {
  std::string model = "pyrazine-4d";
  int modes = 0;  // keep this many modes (0 = all), see reduced_model()
  int n = 4;
  double q_min = -5.0;
  double q_max = 5.0;
  GridConvention convention = GridConvention::Endpoint;
  int nt = 2048;
  double total_fs = 264.0;
  int stride = 16;
  SplitOrder order = SplitOrder::PotentialFirst;
  Engine engine = Engine::Soft;
  std::uint64_t seed = 1;
  std::filesystem::path out = ".";
  double tau_fs = 30.0;  // <= 0 disables B(t)
  bool damp_d = false;
  std::optional<std::pair<double, double>> window;

  GridSpec grid() const;
  TimeGrid time() const;
  VibronicModel load() const;
  SpectrumOptions spectrum_options() const;
  /// Creates the output directory; throws if it cannot be written.
  std::filesystem::path prepare_out() const;
};

/// Keeps `count` modes: the coupling mode (if any, and count >= 2) plus the
/// leading other modes in file order. count <= 0 or >= d returns the model.
VibronicModel reduced_model(const VibronicModel& model, int count);

// --- zpe-scan ----------------------------------------------------------------

struct ZpeRow {
  std::string table;
  int points = 0;
  double q_min = 0.0;
  double q_max = 0.0;
  GridConvention convention = GridConvention::Endpoint;
  double spacing = 0.0;
  double zpe = 0.0;
};

/// "fixed-spacing": (8,[-2.5,2.5]) (16,[-5,5]) (32,[-10,10]) (64,[-20,20]).
/// "fixed-range": N = 4..64 on [-5,5].
std::vector<ZpeRow> zpe_tables(const VibronicModel& model, std::span<const GridConvention> conventions);
int cmd_zpe_scan(const RunConfig& cfg, std::span<const GridConvention> conventions,
                 std::span<const int> custom_points, std::ostream& log);

// --- propagate / spectrum ----------------------------------------------------

Propagation run_soft(const RunConfig& cfg);
AutocorrSeries run_autocorr(const RunConfig& cfg);
int cmd_propagate(const RunConfig& cfg, std::ostream& log);
int cmd_spectrum(const RunConfig& cfg, std::ostream& log);

// --- shots-scan --------------------------------------------------------------

struct ShotsConfig {
  std::vector<SamplingMode> modes{SamplingMode::Direct, SamplingMode::Autocorr};
  std::vector<double> thresholds_pct{4.0, 3.0, 2.0, 1.0};
  int seeds = 10;
  int sustain = 5;
  std::uint64_t step = 1000;
  /// Upper end of the shot grid; defaults to 300k (autocorr) / 200k (direct).
  std::optional<std::uint64_t> max_shots;
};

struct ShotsResult {
  SamplingMode mode = SamplingMode::Direct;
  std::vector<ShotScan> scans;  // one per seed, seeds cfg.seed, cfg.seed + 1, ...
  std::vector<std::optional<std::uint64_t>> median;
};

std::vector<ShotsResult> shots_scan_all(const AutocorrSeries& a, const ShotsConfig& shots,
                                        std::uint64_t seed, const SpectrumOptions& options);
int cmd_shots_scan(const RunConfig& cfg, const ShotsConfig& shots, std::ostream& log);

// --- resources ---------------------------------------------------------------

int cmd_resources(ModelClass model_class, int d, int n, std::uint64_t nt,
                  std::span<const Variant> variants, bool check_builder,
                  const std::optional<std::filesystem::path>& out, std::ostream& log);

// --- qpe-demo ----------------------------------------------------------------

struct QpeDemo {
  std::string mode;
  int n = 0;
  int m = 0;
  double dt = 0.0;
  double analytic = 0.0;   // omega / 2 + delta, the S2 harmonic ground level
  double bin_width = 0.0;
  std::vector<double> energies;     // bin energies folded into [0, 2 pi hbar / dt)
  std::vector<double> p_gaussian;   // readout distribution, sampled Gaussian input
  std::vector<double> p_eigen;      // readout distribution, Trotter-step eigenvector input
  double gaussian_peak_energy = 0.0;
  double eigen_peak_energy = 0.0;
  double eigen_peak_mass = 0.0;
  std::vector<std::uint64_t> counts;  // sampled readouts of the Gaussian input
};

/// Canonical phase estimation on one uncoupled mode sitting on S2.
QpeDemo qpe_demo(const VibronicModel& source, const std::string& mode, const GridSpec& grid, int m,
                 double dt_fs, std::uint64_t shots, std::uint64_t seed);
int cmd_qpe_demo(const RunConfig& cfg, const std::string& mode, int m, double dt_fs,
                 std::uint64_t shots, std::ostream& log);

// --- verify ------------------------------------------------------------------

struct VerifyResult {
  std::vector<double> times;
  std::vector<cplx> soft;
  std::vector<cplx> circuit;
  double final_fidelity = 0.0;
  double max_autocorr_error = 0.0;
  int depth_per_step = 0;
};

/// Runs the soft propagator and the circuit emulator side by side.
VerifyResult verify_engines(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg, double min_fidelity, std::ostream& log);

}  // namespace vibronic::cli
