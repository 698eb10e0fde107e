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

#include "vibronic/soft.hpp"

#include "fft_lock.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>

namespace vibronic {

namespace {

std::mutex& planner_mutex() { return detail::fftw_planner_mutex(); }

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

namespace detail {
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

std::string_view to_string(SplitOrder o) {
  return o == SplitOrder::PotentialFirst ? "potential-first" : "kinetic-first";
}

SplitOrder parse_split_order(std::string_view text) {
  if (text == "potential-first") return SplitOrder::PotentialFirst;
  if (text == "kinetic-first") return SplitOrder::KineticFirst;
  throw std::invalid_argument("unknown split order '" + std::string(text) + "'");
}

struct PropagatorPlan::Fft {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  double scale = 1.0;

  Fft(std::size_t modes, std::size_t points) {
    std::vector<int> dims(modes, static_cast<int>(points));
    std::size_t sector = 1;
    for (std::size_t k = 0; k < modes; ++k) sector *= points;
    std::vector<cplx> scratch(2 * sector);
    const int flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_many_dft(static_cast<int>(modes), dims.data(), 2, as_fftw(scratch.data()),
                                 nullptr, 1, static_cast<int>(sector), as_fftw(scratch.data()),
                                 nullptr, 1, static_cast<int>(sector), FFTW_FORWARD, flags);
    backward = fftw_plan_many_dft(static_cast<int>(modes), dims.data(), 2,
                                  as_fftw(scratch.data()), nullptr, 1, static_cast<int>(sector),
                                  as_fftw(scratch.data()), nullptr, 1, static_cast<int>(sector),
                                  FFTW_BACKWARD, flags);
    if (!forward || !backward) throw std::runtime_error("FFTW failed to create a plan");
    scale = 1.0 / std::sqrt(static_cast<double>(sector));
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void run(fftw_plan p, std::span<cplx> data) const {
    fftw_execute_dft(p, as_fftw(data.data()), as_fftw(data.data()));
    const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) data[i] *= scale;
  }
};

PropagatorPlan::PropagatorPlan(const VibronicModel& model, const GridSpec& grid, double dt,
                               SplitOrder order)
    : model_(model), grid_(grid), dt_(dt), order_(order) {
  grid_.validate();
  if (!std::isfinite(dt) || dt == 0.0) throw std::invalid_argument("dt must be finite and nonzero");

  const std::size_t d = model_.mode_count();
  const Wavepacket shape(d, grid_.qubits_per_mode);
  const std::size_t sector = shape.sector_size();
  const auto q = grid_points(grid_);
  const auto p = momentum_points(grid_);

  v1_.resize(sector);
  v2_.resize(sector);
  vc_.resize(sector);
  kin_.resize(sector);
  std::vector<double> qs(d);
  for (std::size_t flat = 0; flat < sector; ++flat) {
    double k = 0.0;
    for (std::size_t m = 0; m < d; ++m) {
      const std::size_t i = shape.mode_index(flat, m);
      qs[m] = q[i];
      k += 0.5 * model_.mode(m).omega * p[i] * p[i];
    }
    v1_[flat] = model_.potential(Branch::S1, qs);
    v2_[flat] = model_.potential(Branch::S2, qs);
    vc_[flat] = model_.coupling(qs);
    kin_[flat] = k;
  }

  const double tv = order_ == SplitOrder::PotentialFirst ? 0.5 * dt_ : dt_;
  const double tk = order_ == SplitOrder::PotentialFirst ? dt_ : 0.5 * dt_;
  phase1_.resize(sector);
  phase2_.resize(sector);
  kphase_.resize(sector);
  cos_.resize(sector);
  sin_.resize(sector);
  for (std::size_t i = 0; i < sector; ++i) {
    phase1_[i] = std::polar(1.0, -v1_[i] * tv / kHbar);
    phase2_[i] = std::polar(1.0, -v2_[i] * tv / kHbar);
    kphase_[i] = std::polar(1.0, -kin_[i] * tk / kHbar);
    const double theta = vc_[i] * tv / kHbar;
    cos_[i] = std::cos(theta);
    sin_[i] = std::sin(theta);
  }

  fft_ = std::make_unique<Fft>(d, grid_.points());
}

PropagatorPlan::~PropagatorPlan() = default;
PropagatorPlan::PropagatorPlan(PropagatorPlan&&) noexcept = default;
PropagatorPlan& PropagatorPlan::operator=(PropagatorPlan&&) noexcept = default;

void PropagatorPlan::apply_diag(Wavepacket& psi, const std::vector<cplx>& p1,
                                const std::vector<cplx>& p2) const {
  auto a = psi.sector(Branch::S1);
  auto b = psi.sector(Branch::S2);
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    a[i] *= p1[i];
    b[i] *= p2[i];
  }
}

// exp(-i theta X) = [[cos, -i sin], [-i sin, cos]] at every grid point.
void PropagatorPlan::apply_coupling(Wavepacket& psi, const std::vector<double>& c,
                                    const std::vector<double>& s) const {
  auto a = psi.sector(Branch::S1);
  auto b = psi.sector(Branch::S2);
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const cplx mi{0.0, -1.0};
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const cplx x = a[i];
    const cplx y = b[i];
    a[i] = c[i] * x + mi * s[i] * y;
    b[i] = mi * s[i] * x + c[i] * y;
  }
}

void PropagatorPlan::apply_kinetic(Wavepacket& psi, const std::vector<cplx>& k) const {
  auto a = psi.sector(Branch::S1);
  auto b = psi.sector(Branch::S2);
  const auto n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    a[i] *= k[i];
    b[i] *= k[i];
  }
}

void PropagatorPlan::to_momentum(Wavepacket& psi) const {
  if (psi.basis() != Basis::Position) throw std::logic_error("wavepacket is not in position basis");
  fft_->run(fft_->forward, psi.amplitudes());
  psi.set_basis(Basis::Momentum);
}

void PropagatorPlan::to_position(Wavepacket& psi) const {
  if (psi.basis() != Basis::Momentum) throw std::logic_error("wavepacket is not in momentum basis");
  fft_->run(fft_->backward, psi.amplitudes());
  psi.set_basis(Basis::Position);
}

void PropagatorPlan::step(Wavepacket& psi) const {
  if (psi.basis() != Basis::Position) {
    throw std::invalid_argument("step expects a position-basis wavepacket");
  }
  if (psi.modes() != model_.mode_count() || psi.qubits_per_mode() != grid_.qubits_per_mode) {
    throw std::invalid_argument("wavepacket shape does not match the propagator plan");
  }
  if (order_ == SplitOrder::PotentialFirst) {
    apply_diag(psi, phase1_, phase2_);
    apply_coupling(psi, cos_, sin_);
    to_momentum(psi);
    apply_kinetic(psi, kphase_);
    to_position(psi);
    apply_coupling(psi, cos_, sin_);
    apply_diag(psi, phase1_, phase2_);
  } else {
    to_momentum(psi);
    apply_kinetic(psi, kphase_);
    to_position(psi);
    apply_diag(psi, phase1_, phase2_);
    apply_coupling(psi, cos_, sin_);
    to_momentum(psi);
    apply_kinetic(psi, kphase_);
    to_position(psi);
  }
}

double PropagatorPlan::energy(const Wavepacket& psi) const {
  if (psi.basis() != Basis::Position) throw std::invalid_argument("energy expects position basis");
  auto a = psi.sector(Branch::S1);
  auto b = psi.sector(Branch::S2);
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    e += v1_[i] * std::norm(a[i]) + v2_[i] * std::norm(b[i]);
    e += 2.0 * vc_[i] * std::real(std::conj(a[i]) * b[i]);
  }
  Wavepacket mom = psi;
  to_momentum(mom);
  auto ma = mom.sector(Branch::S1);
  auto mb = mom.sector(Branch::S2);
  for (std::size_t i = 0; i < ma.size(); ++i) e += kin_[i] * (std::norm(ma[i]) + std::norm(mb[i]));
  return e;
}

Wavepacket step(const PropagatorPlan& plan, Wavepacket psi) {
  plan.step(psi);
  return psi;
}

std::vector<double> boundary_probabilities(const Wavepacket& psi) {
  const std::size_t d = psi.modes();
  const std::size_t last = psi.points_per_mode() - 1;
  std::vector<double> lo(d, 0.0);
  std::vector<double> hi(d, 0.0);
  const auto amps = psi.amplitudes();
  const std::size_t sector = psi.sector_size();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    const std::size_t flat = i % sector;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t idx = psi.mode_index(flat, k);
      if (idx == 0) lo[k] += p;
      if (idx == last) hi[k] += p;
    }
  }
  std::vector<double> out(d);
  for (std::size_t k = 0; k < d; ++k) out[k] = std::max(lo[k], hi[k]);
  return out;
}

Propagation propagate(const PropagatorPlan& plan, const Wavepacket& psi0, const TimeGrid& time,
                      const Observers& observers) {
  time.validate();
  if (std::abs(time.dt - plan.dt()) > 1e-12 * std::abs(time.dt)) {
    throw std::invalid_argument("time grid dt does not match the propagator plan");
  }
  Propagation out{{}, {}, {}, psi0};
  Wavepacket& psi = out.final_state;

  auto record = [&](int n) {
    const double t = n * time.dt;
    if (observers.autocorr) {
      out.autocorr.times.push_back(t);
      out.autocorr.values.push_back(psi0.overlap(psi));
    }
    if (observers.populations) {
      out.populations.times.push_back(t);
      out.populations.s1.push_back(psi.population(Branch::S1));
      out.populations.s2.push_back(psi.population(Branch::S2));
    }
    if (observers.boundary) {
      out.boundary.times.push_back(t);
      out.boundary.values.push_back(boundary_probabilities(psi));
    }
    if (observers.on_sample) observers.on_sample(n, psi);
  };

  record(0);
  for (int n = 1; n <= time.n_steps; ++n) {
    plan.step(psi);
    if (n % time.sample_stride == 0) record(n);
  }
  return out;
}

// psi0 is a product state, so every term factorizes into one-mode moments and
// the full N^d tensor is never built (N = 64 in four modes would need 0.5 GB).
double zpe(const VibronicModel& model, const GridSpec& grid) {
  const auto g = ground_state_amplitudes(grid);
  const auto q = grid_points(grid);
  const auto p = momentum_points(grid);
  const std::size_t n = g.size();

  std::vector<cplx> f(g.begin(), g.end());
  {
    std::lock_guard lock(planner_mutex());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(f.data()), as_fftw(f.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  double q1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    q1 += g[i] * g[i] * q[i];
    q2 += g[i] * g[i] * q[i] * q[i];
    p2 += std::norm(f[i]) / static_cast<double>(n) * p[i] * p[i];
  }

  double e = 0.0;
  for (const auto& m : model.modes()) {
    e += 0.5 * m.omega * (q2 + p2);
    if (m.is_tuning()) e += *m.kappa2 * q1;
  }
  for (const auto& t : model.bilinear_diag()) e += t.gamma2 * q1 * q1;
  return e;
}

// ---------------------------------------------------------------------------

double AutocorrSeries::interval() const {
  if (times.size() != values.size()) throw std::invalid_argument("autocorrelation size mismatch");
  if (times.size() < 2) throw std::invalid_argument("autocorrelation needs at least two samples");
  if (std::abs(times.front()) > 1e-12) throw std::invalid_argument("autocorrelation must start at t=0");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw std::invalid_argument("autocorrelation times must increase");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs(times[i] - i * dt) > 1e-9 * std::max(1.0, times[i])) {
      throw std::invalid_argument("autocorrelation sampling is not uniform");
    }
  }
  return dt;
}

double BoundarySeries::peak() const {
  double m = 0.0;
  for (const auto& row : values) {
    for (double v : row) m = std::max(m, v);
  }
  return m;
}

}  // namespace vibronic
