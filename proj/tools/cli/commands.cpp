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

#include "commands.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "vibronic/builders.hpp"
#include "vibronic/engine.hpp"
#include "vibronic/measurement.hpp"
#include "vibronic/wavepacket.hpp"

namespace vibronic::cli {

namespace fs = std::filesystem;

namespace {

// Locale-independent CSV writer with fixed precision so reruns are
// byte-identical.
class Csv {
 public:
  Csv(const fs::path& path, std::string_view header) : path_(path), os_(path) {
    if (!os_) throw std::runtime_error("cannot write " + path.string());
    os_.imbue(std::locale::classic());
    os_ << std::setprecision(12) << header << '\n';
  }
  template <typename... T>
  void row(const T&... v) {
    bool first = true;
    ((os_ << (first ? "" : ",") << v, first = false), ...);
    os_ << '\n';
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::ofstream os_;
};

std::string crossing_text(const std::optional<std::uint64_t>& c) {
  return c ? std::to_string(*c) : std::string("unmet");
}

}  // namespace

Engine parse_engine(std::string_view text) {
  if (text == "soft") return Engine::Soft;
  if (text == "circuit") return Engine::Circuit;
  throw std::invalid_argument("unknown engine '" + std::string(text) + "' (expected soft or circuit)");
}

GridSpec RunConfig::grid() const {
  GridSpec g;
  g.qubits_per_mode = n;
  g.q_min = q_min;
  g.q_max = q_max;
  g.convention = convention;
  g.validate();
  return g;
}

TimeGrid RunConfig::time() const { return TimeGrid::from_total(total_fs, nt, stride); }

VibronicModel RunConfig::load() const { return reduced_model(resolve_model(model), modes); }

SpectrumOptions RunConfig::spectrum_options() const {
  SpectrumOptions o;
  if (tau_fs > 0.0) {
    o.tau_fs = tau_fs;
  } else {
    o.tau_fs.reset();
  }
  o.use_d = damp_d;
  o.window = window;
  return o;
}

fs::path RunConfig::prepare_out() const {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw std::runtime_error("cannot create output directory " + out.string());
  }
  const fs::path probe = out / ".vibronic-write-test";
  {
    std::ofstream f(probe);
    if (!f) throw std::runtime_error("output directory " + out.string() + " is not writable");
  }
  fs::remove(probe, ec);
  return out;
}

VibronicModel reduced_model(const VibronicModel& model, int count) {
  const auto d = static_cast<int>(model.mode_count());
  if (count <= 0 || count >= d) return model;
  std::vector<std::string> keep;
  const auto cm = model.coupling_mode();
  const int others = cm && count >= 2 ? count - 1 : count;
  for (std::size_t k = 0; k < model.mode_count() && static_cast<int>(keep.size()) < others; ++k) {
    if (cm && k == *cm) continue;
    keep.push_back(model.mode(k).label);
  }
  if (cm && count >= 2) keep.push_back(model.mode(*cm).label);
  return model.subset(keep);
}

// ---------------------------------------------------------------------------

std::vector<ZpeRow> zpe_tables(const VibronicModel& model, std::span<const GridConvention> conventions) {
  struct Spec {
    const char* table;
    int n;
    double half;
  };
  static constexpr Spec specs[] = {
      {"fixed-spacing", 3, 2.5}, {"fixed-spacing", 4, 5.0}, {"fixed-spacing", 5, 10.0},
      {"fixed-spacing", 6, 20.0}, {"fixed-range", 2, 5.0},  {"fixed-range", 3, 5.0},
      {"fixed-range", 4, 5.0},    {"fixed-range", 5, 5.0},  {"fixed-range", 6, 5.0},
  };
  std::vector<ZpeRow> rows;
  for (GridConvention c : conventions) {
    for (const auto& s : specs) {
      GridSpec g{s.n, -s.half, s.half, c};
      rows.push_back({s.table, 1 << s.n, g.q_min, g.q_max, c, g.spacing(), zpe(model, g)});
    }
  }
  return rows;
}

int cmd_zpe_scan(const RunConfig& cfg, std::span<const GridConvention> conventions,
                 std::span<const int> custom_points, std::ostream& log) {
  const VibronicModel model = cfg.load();
  std::vector<ZpeRow> rows;
  if (custom_points.empty()) {
    rows = zpe_tables(model, conventions);
  } else {
    for (GridConvention c : conventions) {
      for (int points : custom_points) {
        if (points < 4 || (points & (points - 1)) != 0) {
          throw std::invalid_argument("grid point counts must be powers of two >= 4");
        }
        GridSpec g{std::countr_zero(static_cast<unsigned>(points)), cfg.q_min, cfg.q_max, c};
        rows.push_back({"custom", points, g.q_min, g.q_max, c, g.spacing(), zpe(model, g)});
      }
    }
  }
  Csv csv(cfg.prepare_out() / "zpe_scan.csv", "table,N,q_min,q_max,convention,spacing,zpe_eV");
  log << std::fixed << std::setprecision(10);
  for (const auto& r : rows) {
    csv.row(r.table, r.points, r.q_min, r.q_max, to_string(r.convention), r.spacing, r.zpe);
    log << std::setw(14) << r.table << std::setw(4) << r.points << "  [" << std::setprecision(2)
        << r.q_min << "," << r.q_max << "] " << std::setw(9) << to_string(r.convention)
        << "  dQ " << r.spacing << "  ZPE " << std::setprecision(10) << r.zpe << " eV\n";
  }
  log << "wrote " << csv.path().string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

Propagation run_soft(const RunConfig& cfg) {
  const VibronicModel model = cfg.load();
  const GridSpec g = cfg.grid();
  const TimeGrid t = cfg.time();
  PropagatorPlan plan(model, g, t.dt, cfg.order);
  return propagate(plan, initial_state(model, g), t);
}

AutocorrSeries run_autocorr(const RunConfig& cfg) {
  if (cfg.engine == Engine::Circuit) {
    return emulate_propagation(cfg.load(), cfg.grid(), cfg.time(), cfg.order).autocorr;
  }
  const VibronicModel model = cfg.load();
  const GridSpec g = cfg.grid();
  const TimeGrid t = cfg.time();
  PropagatorPlan plan(model, g, t.dt, cfg.order);
  Observers ob;
  ob.populations = false;
  ob.boundary = false;
  return propagate(plan, initial_state(model, g), t, ob).autocorr;
}

int cmd_propagate(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.prepare_out();
  AutocorrSeries a;
  PopulationSeries pop;
  std::optional<BoundarySeries> boundary;
  std::vector<std::string> labels;
  if (cfg.engine == Engine::Circuit) {
    auto run = emulate_propagation(cfg.load(), cfg.grid(), cfg.time(), cfg.order);
    a = std::move(run.autocorr);
    pop = std::move(run.populations);
  } else {
    auto run = run_soft(cfg);
    a = std::move(run.autocorr);
    pop = std::move(run.populations);
    boundary = std::move(run.boundary);
    const VibronicModel model = cfg.load();
    for (const auto& m : model.modes()) labels.push_back(m.label);
  }

  Csv ac(dir / "autocorr.csv", "t_fs,re,im,abs");
  for (std::size_t i = 0; i < a.size(); ++i) {
    ac.row(a.times[i], a.values[i].real(), a.values[i].imag(), std::abs(a.values[i]));
  }
  Csv pc(dir / "populations.csv", "t_fs,p_s1,p_s2");
  for (std::size_t i = 0; i < pop.times.size(); ++i) pc.row(pop.times[i], pop.s1[i], pop.s2[i]);
  log << "wrote " << ac.path().string() << "\nwrote " << pc.path().string() << "\n";
  if (boundary) {
    std::string header = "t_fs";
    for (const auto& l : labels) header += "," + l;
    Csv bc(dir / "boundary.csv", header);
    for (std::size_t i = 0; i < boundary->times.size(); ++i) {
      std::ostringstream line;
      line.imbue(std::locale::classic());
      line << std::setprecision(12) << boundary->times[i];
      for (double v : boundary->values[i]) line << "," << v;
      bc.row(line.str());
    }
    log << "wrote " << bc.path().string() << "  (peak boundary probability " << boundary->peak()
        << ")\n";
  }
  log << "samples " << a.size() << ", final P(S2) " << pop.s2.back() << "\n";
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.prepare_out();
  const SpectrumSeries s = spectrum(run_autocorr(cfg), cfg.spectrum_options());
  Csv csv(dir / "spectrum.csv", "E_eV,intensity");
  for (std::size_t i = 0; i < s.size(); ++i) csv.row(s.energies[i], s.intensities[i]);
  const auto peak = std::max_element(s.intensities.begin(), s.intensities.end()) - s.intensities.begin();
  log << "wrote " << csv.path().string() << " (" << s.size() << " bins, peak at "
      << s.energies[static_cast<std::size_t>(peak)] << " eV)\n";
  return 0;
}

// ---------------------------------------------------------------------------

std::vector<ShotsResult> shots_scan_all(const AutocorrSeries& a, const ShotsConfig& shots,
                                        std::uint64_t seed, const SpectrumOptions& options) {
  if (shots.seeds < 1) throw std::invalid_argument("need at least one seed");
  if (shots.thresholds_pct.empty()) throw std::invalid_argument("need at least one threshold");
  std::vector<double> th;
  for (double p : shots.thresholds_pct) {
    if (!(p > 0.0 && p < 100.0)) throw std::invalid_argument("thresholds are percentages in (0, 100)");
    th.push_back(p / 100.0);
  }
  std::vector<ShotsResult> out;
  for (SamplingMode mode : shots.modes) {
    const std::uint64_t hi = shots.max_shots.value_or(mode == SamplingMode::Direct ? 200000 : 300000);
    const auto grid = linear_grid(shots.step, hi, shots.step);
    ShotsResult r;
    r.mode = mode;
    for (int s = 0; s < shots.seeds; ++s) {
      r.scans.push_back(
          shots_scan(a, mode, grid, th, shots.sustain, seed + static_cast<std::uint64_t>(s), options));
    }
    r.median = median_crossings(r.scans);
    out.push_back(std::move(r));
  }
  return out;
}

int cmd_shots_scan(const RunConfig& cfg, const ShotsConfig& shots, std::ostream& log) {
  const fs::path dir = cfg.prepare_out();
  const auto results = shots_scan_all(run_autocorr(cfg), shots, cfg.seed, cfg.spectrum_options());
  Csv cross(dir / "shots_crossings.csv", "mode,threshold_pct,median_shots,seed,shots");
  for (const auto& r : results) {
    const std::string name(to_string(r.mode));
    Csv scan(dir / ("shots_scan_" + name + ".csv"), "seed,shots,tvd");
    for (const auto& s : r.scans) {
      for (std::size_t i = 0; i < s.shots.size(); ++i) scan.row(s.seed, s.shots[i], s.tvd[i]);
    }
    log << name << " sampling (median over " << r.scans.size() << " seeds):\n";
    for (std::size_t t = 0; t < r.median.size(); ++t) {
      const double pct = shots.thresholds_pct[t];
      for (const auto& s : r.scans) cross.row(name, pct, crossing_text(r.median[t]), s.seed, crossing_text(s.crossings[t]));
      log << "  TVD < " << pct << "%: " << crossing_text(r.median[t]) << " shots\n";
    }
    log << "wrote " << scan.path().string() << "\n";
  }
  log << "wrote " << cross.path().string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_resources(ModelClass model_class, int d, int n, std::uint64_t nt,
                  std::span<const Variant> variants, bool check_builder,
                  const std::optional<fs::path>& out, std::ostream& log) {
  if (d <= 0) d = model_class == ModelClass::Linear4D ? 4 : 24;
  std::optional<Csv> csv;
  if (out) {
    std::error_code ec;
    fs::create_directories(*out, ec);
    csv.emplace(*out / "resources.csv",
                "model,d,n,n_t,variant,N_i,N_p,per_step,N_t,m,N_m,total,qubits_state,qubits_total");
  }
  for (Variant v : variants) {
    const AssayReport r = assay({d, n, nt, v, model_class});
    log << r.to_text() << "\n";
    if (csv) {
      csv->row(to_string(model_class), d, n, nt, to_string(v), r.N_i, r.N_p, r.per_step, r.N_t, r.m,
               r.N_m, r.total, r.qubits_state, r.qubits_total);
    }
  }
  if (csv) log << "wrote " << csv->path().string() << "\n";
  if (check_builder) {
    const BuilderComparison cmp = verify_against_builder({d, n, nt, Variant::A, model_class});
    log << cmp.to_text();
    if (!cmp.ok()) return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------

QpeDemo qpe_demo(const VibronicModel& source, const std::string& mode, const GridSpec& grid, int m,
                 double dt_fs, std::uint64_t shots, std::uint64_t seed) {
  if (m < 1 || m > 12) throw std::invalid_argument("time register size m must be in [1, 12]");
  if (!(dt_fs > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!source.find_mode(mode)) throw std::invalid_argument("model has no mode '" + mode + "'");
  const std::vector<std::string> keep{mode};
  const VibronicModel model = source.subset(keep).uncoupled();
  const QubitLayout sys = layout_for(model, grid);
  if (sys.system_qubits() > 12) throw std::invalid_argument("qpe-demo needs n <= 11");
  QubitLayout layout = sys;
  layout.time_qubits = m;

  const Circuit step = build_timestep(model, grid, sys, dt_fs);
  const Circuit qpe = build_qpe(step, layout);

  QpeDemo d;
  d.mode = mode;
  d.n = grid.qubits_per_mode;
  d.m = m;
  d.dt = dt_fs;
  d.analytic = 0.5 * model.mode(0).omega + model.delta();
  d.bin_width = qpe_bin_width(m, dt_fs);
  for (std::size_t y = 0; y < (std::size_t{1} << m); ++y) d.energies.push_back(qpe_energy(y, m, dt_fs, 0.0));

  const Wavepacket g = initial_state(model, grid);
  const QpeResult rg = run_qpe(qpe, layout, g.amplitudes(), shots, seed);
  d.p_gaussian = rg.probabilities;
  d.counts = rg.counts;
  d.gaussian_peak_energy = d.energies[rg.argmax()];

  // Eigenvector of the step unitary closest to the Gaussian.
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << sys.system_qubits());
  const std::vector<cplx> u = unitary(step);
  const Eigen::Map<const Eigen::MatrixXcd> umat(u.data(), dim, dim);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(umat);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::Map<const Eigen::VectorXcd> gvec(g.amplitudes().data(), dim);
  Eigen::Index best = 0;
  double best_overlap = -1.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double ov = std::abs(solver.eigenvectors().col(k).normalized().dot(gvec));
    if (ov > best_overlap) {
      best_overlap = ov;
      best = k;
    }
  }
  const Eigen::VectorXcd v = solver.eigenvectors().col(best).normalized();
  const std::vector<cplx> eig(v.data(), v.data() + dim);
  const QpeResult re = run_qpe(qpe, layout, eig, 0, seed);
  d.p_eigen = re.probabilities;
  d.eigen_peak_energy = d.energies[re.argmax()];
  d.eigen_peak_mass = re.probabilities[re.argmax()];
  return d;
}

int cmd_qpe_demo(const RunConfig& cfg, const std::string& mode, int m, double dt_fs,
                 std::uint64_t shots, std::ostream& log) {
  const fs::path dir = cfg.prepare_out();
  const QpeDemo d = qpe_demo(resolve_model(cfg.model), mode, cfg.grid(), m, dt_fs, shots, cfg.seed);
  Csv csv(dir / "qpe_demo.csv", "y,theta,energy_eV,p_gaussian,p_eigen,counts_gaussian");
  for (std::size_t y = 0; y < d.energies.size(); ++y) {
    csv.row(y, qpe_phase(y, m), d.energies[y], d.p_gaussian[y], d.p_eigen[y],
            d.counts.empty() ? 0 : d.counts[y]);
  }
  log << std::setprecision(6) << "mode " << d.mode << ", n " << d.n << ", m " << d.m << ", dt "
      << d.dt << " fs, bin width " << d.bin_width << " eV\n"
      << "analytic level " << d.analytic << " eV\n"
      << "Gaussian input peak  " << d.gaussian_peak_energy << " eV\n"
      << "eigenstate input peak " << d.eigen_peak_energy << " eV (mass " << d.eigen_peak_mass
      << ", bound 4/pi^2 = " << 4.0 / (std::numbers::pi * std::numbers::pi) << ")\n"
      << "wrote " << csv.path().string() << "\n";
  return std::abs(d.eigen_peak_energy - d.analytic) <= d.bin_width ? 0 : 1;
}

// ---------------------------------------------------------------------------

VerifyResult verify_engines(const RunConfig& cfg) {
  const VibronicModel model = cfg.load();
  const GridSpec g = cfg.grid();
  const TimeGrid t = cfg.time();
  PropagatorPlan plan(model, g, t.dt, cfg.order);
  Observers ob;
  ob.populations = false;
  ob.boundary = false;
  const Propagation soft = propagate(plan, initial_state(model, g), t, ob);
  const CircuitRun circ = emulate_propagation(model, g, t, cfg.order);

  VerifyResult r;
  r.times = soft.autocorr.times;
  r.soft = soft.autocorr.values;
  r.circuit = circ.autocorr.values;
  for (std::size_t i = 0; i < r.soft.size(); ++i) {
    r.max_autocorr_error = std::max(r.max_autocorr_error, std::abs(r.soft[i] - r.circuit[i]));
  }
  r.final_fidelity = fidelity(soft.final_state.amplitudes(), circ.final_state);
  r.depth_per_step = circ.depth_per_step;
  return r;
}

int cmd_verify(const RunConfig& cfg, double min_fidelity, std::ostream& log) {
  const fs::path dir = cfg.prepare_out();
  const VerifyResult r = verify_engines(cfg);
  Csv csv(dir / "verify.csv", "t_fs,re_soft,im_soft,re_circuit,im_circuit,abs_diff");
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    csv.row(r.times[i], r.soft[i].real(), r.soft[i].imag(), r.circuit[i].real(), r.circuit[i].imag(),
            std::abs(r.soft[i] - r.circuit[i]));
  }
  const VibronicModel model = cfg.load();
  log << std::setprecision(15) << "model " << model.name() << " (" << model.mode_count()
      << " modes, n " << cfg.n << "), " << cfg.nt << " steps, " << to_string(cfg.order) << "\n"
      << "circuit depth per step " << r.depth_per_step << "\n"
      << "max |A_soft - A_circuit| " << r.max_autocorr_error << "\n"
      << "final-state fidelity " << r.final_fidelity << "\n"
      << "wrote " << csv.path().string() << "\n";
  return r.final_fidelity >= min_fidelity ? 0 : 1;
}

}  // namespace vibronic::cli
