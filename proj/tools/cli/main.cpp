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

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "vibronic/emulator.hpp"
#include "vibronic/threads.hpp"

using namespace vibronic;

namespace {

std::pair<double, double> parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--range", "expected lo,hi");
  try {
    std::size_t pos = 0;
    const double lo = std::stod(text.substr(0, comma), &pos);
    const double hi = std::stod(text.substr(comma + 1));
    if (!(lo < hi)) throw CLI::ValidationError("--range", "lo must be below hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--range", "expected two numbers lo,hi");
  }
}

struct Flags {
  cli::RunConfig cfg;
  std::string range;
  std::string convention = "endpoint";
  std::string order = "potential-first";
  std::string engine = "soft";
  std::string window;
};

// Grid, time and model flags shared by the dynamics subcommands.
void add_run_flags(CLI::App* app, Flags& f) {
  app->add_option("--model", f.cfg.model, "preset name or JSON model file")->capture_default_str();
  app->add_option("--modes", f.cfg.modes, "keep this many modes (0 = all)")->capture_default_str();
  app->add_option("--n", f.cfg.n, "qubits per mode")->capture_default_str();
  app->add_option("--range", f.range, "grid bounds lo,hi (default -5,5)");
  app->add_option("--convention", f.convention, "endpoint or periodic")->capture_default_str();
  app->add_option("--nt", f.cfg.nt, "time steps")->capture_default_str();
  app->add_option("--total-fs", f.cfg.total_fs, "total time in fs")->capture_default_str();
  app->add_option("--stride", f.cfg.stride, "record every stride-th step")->capture_default_str();
  app->add_option("--order", f.order, "potential-first or kinetic-first")->capture_default_str();
  app->add_option("--engine", f.engine, "soft or circuit")->capture_default_str();
  app->add_option("--seed", f.cfg.seed, "base RNG seed")->capture_default_str();
  app->add_option("--out", f.cfg.out, "output directory")->capture_default_str();
}

void add_spectrum_flags(CLI::App* app, Flags& f) {
  app->add_option("--tau-fs", f.cfg.tau_fs, "damping time of B(t); <= 0 disables")->capture_default_str();
  app->add_flag("--damp-d", f.cfg.damp_d, "apply the cosine taper D(t)");
  app->add_option("--window", f.window, "energy window lo,hi in eV (default [0, pi hbar/dt))");
}

void finish(Flags& f) {
  if (!f.range.empty()) std::tie(f.cfg.q_min, f.cfg.q_max) = parse_range(f.range);
  if (!f.window.empty()) f.cfg.window = parse_range(f.window);
  f.cfg.convention = parse_convention(f.convention);
  f.cfg.order = parse_split_order(f.order);
  f.cfg.engine = cli::parse_engine(f.engine);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("VIBRONIC_THREADS")) {
    try {
      set_thread_count(std::stoi(t));
    } catch (const std::exception&) {
      std::cerr << "error: VIBRONIC_THREADS must be a positive integer\n";
      return 2;
    }
  }

  CLI::App app{"Grid-based vibronic dynamics: split-operator reference, circuit emulation, resource assays"};
  app.require_subcommand(1);
  Flags f;
  int rc = 0;

  auto* zpe = app.add_subcommand("zpe-scan", "ZPE of the initial state over grid sizes and ranges");
  std::vector<std::string> conventions{"endpoint", "periodic"};
  std::vector<int> points;
  zpe->add_option("--model", f.cfg.model, "preset name or JSON model file")->capture_default_str();
  zpe->add_option("--convention", conventions, "grid conventions to scan")->capture_default_str();
  zpe->add_option("--points", points, "custom point counts on --range instead of the two tables");
  zpe->add_option("--range", f.range, "grid bounds lo,hi for --points");
  zpe->add_option("--out", f.cfg.out, "output directory")->capture_default_str();

  auto* prop = app.add_subcommand("propagate", "autocorrelation, populations and boundary monitor");
  add_run_flags(prop, f);

  auto* spec = app.add_subcommand("spectrum", "absorption spectrum from the autocorrelation");
  add_run_flags(spec, f);
  add_spectrum_flags(spec, f);

  auto* shots = app.add_subcommand("shots-scan", "TVD versus shot count for both sampling schemes");
  add_run_flags(shots, f);
  add_spectrum_flags(shots, f);
  cli::ShotsConfig sc;
  std::string mode = "both";
  std::uint64_t max_shots = 0;
  shots->add_option("--mode", mode, "direct, autocorr or both")->capture_default_str();
  shots->add_option("--threshold", sc.thresholds_pct, "TVD thresholds in percent")->capture_default_str();
  shots->add_option("--seeds", sc.seeds, "number of seeds (median is reported)")->capture_default_str();
  shots->add_option("--sustain", sc.sustain, "consecutive grid points below threshold")->capture_default_str();
  shots->add_option("--shots-step", sc.step, "shot grid spacing")->capture_default_str();
  shots->add_option("--max-shots", max_shots, "shot grid end (default 300k autocorr, 200k direct)");

  auto* res = app.add_subcommand("resources", "closed-form gate depth and qubit assay");
  std::string model_class = "4d", variant = "both";
  int d = 0, rn = 4;
  std::uint64_t rnt = 512;
  bool check = false;
  std::string rout;
  res->add_option("--model", model_class, "4d or 24d")->capture_default_str();
  res->add_option("--modes", d, "mode count (default 4 or 24)");
  res->add_option("--n", rn, "qubits per mode")->capture_default_str();
  res->add_option("--nt", rnt, "time steps")->capture_default_str();
  res->add_option("--variant", variant, "A, B or both")->capture_default_str();
  res->add_flag("--check-builder", check, "compare with circuits built by the builders");
  res->add_option("--out", rout, "also write resources.csv here");

  auto* qpe = app.add_subcommand("qpe-demo", "phase estimation on a single uncoupled mode");
  std::string qmode = "nu6a";
  int m = 6;
  double dt = 0.5;
  std::uint64_t qshots = 10000;
  qpe->add_option("--model", f.cfg.model, "preset name or JSON model file")->capture_default_str();
  qpe->add_option("--mode", qmode, "mode label")->capture_default_str();
  qpe->add_option("--n", f.cfg.n, "qubits per mode")->capture_default_str();
  qpe->add_option("--m", m, "time register qubits")->capture_default_str();
  qpe->add_option("--dt-fs", dt, "step length in fs")->capture_default_str();
  qpe->add_option("--shots", qshots, "sampled readouts")->capture_default_str();
  qpe->add_option("--seed", f.cfg.seed, "RNG seed")->capture_default_str();
  qpe->add_option("--out", f.cfg.out, "output directory")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "circuit emulator against the split-operator reference");
  add_run_flags(ver, f);
  double min_fid = 1.0 - 1e-8;
  ver->add_option("--min-fidelity", min_fid, "exit nonzero below this final fidelity")->capture_default_str();

  // Per-subcommand defaults that differ from the production run.
  shots->preparse_callback([&](std::size_t) {
    f.cfg.nt = 1024;
    f.cfg.stride = 1;
  });
  ver->preparse_callback([&](std::size_t) {
    f.cfg.nt = 512;
    f.cfg.modes = 2;
    f.cfg.stride = 64;
  });

  try {
    app.parse(argc, argv);
    if (!zpe->parsed()) finish(f);
    if (zpe->parsed()) {
      std::vector<GridConvention> cs;
      for (const auto& c : conventions) cs.push_back(parse_convention(c));
      if (!f.range.empty()) std::tie(f.cfg.q_min, f.cfg.q_max) = parse_range(f.range);
      rc = cli::cmd_zpe_scan(f.cfg, cs, points, std::cout);
    } else if (prop->parsed()) {
      rc = cli::cmd_propagate(f.cfg, std::cout);
    } else if (spec->parsed()) {
      rc = cli::cmd_spectrum(f.cfg, std::cout);
    } else if (shots->parsed()) {
      if (mode == "both") {
        sc.modes = {SamplingMode::Direct, SamplingMode::Autocorr};
      } else {
        sc.modes = {parse_sampling_mode(mode)};
      }
      if (max_shots > 0) sc.max_shots = max_shots;
      rc = cli::cmd_shots_scan(f.cfg, sc, std::cout);
    } else if (res->parsed()) {
      std::vector<Variant> vs;
      if (variant == "both") {
        vs = {Variant::A, Variant::B};
      } else {
        vs = {parse_variant(variant)};
      }
      std::optional<std::filesystem::path> out;
      if (!rout.empty()) out = rout;
      rc = cli::cmd_resources(parse_model_class(model_class), d, rn, rnt, vs, check, out, std::cout);
    } else if (qpe->parsed()) {
      rc = cli::cmd_qpe_demo(f.cfg, qmode, m, dt, qshots, std::cout);
    } else if (ver->parsed()) {
      rc = cli::cmd_verify(f.cfg, min_fid, std::cout);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
