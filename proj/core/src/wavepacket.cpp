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

#include "vibronic/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vibronic/threads.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vibronic {

// ---------------------------------------------------------------------------
// Grids

std::string_view to_string(GridConvention c) {
  return c == GridConvention::Periodic ? "periodic" : "endpoint";
}

GridConvention parse_convention(std::string_view text) {
  if (text == "periodic") return GridConvention::Periodic;
  if (text == "endpoint") return GridConvention::Endpoint;
  throw std::invalid_argument("unknown grid convention '" + std::string(text) +
                              "' (expected periodic or endpoint)");
}

void GridSpec::validate() const {
  if (qubits_per_mode < 2) throw std::invalid_argument("grid needs at least 2 qubits per mode");
  if (qubits_per_mode > 24) throw std::invalid_argument("grid qubits per mode too large");
  if (!(q_min < q_max) || !std::isfinite(q_min) || !std::isfinite(q_max)) {
    throw std::invalid_argument("grid range must satisfy q_min < q_max");
  }
}

double GridSpec::spacing() const {
  const double len = q_max - q_min;
  const auto n = static_cast<double>(points());
  return convention == GridConvention::Periodic ? len / n : len / (n - 1.0);
}

double GridSpec::momentum(std::size_t k) const {
  const auto n = static_cast<long long>(points());
  long long signed_k = static_cast<long long>(k);
  if (signed_k >= n / 2) signed_k -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(signed_k) /
         (static_cast<double>(n) * spacing());
}

std::vector<double> grid_points(const GridSpec& grid) {
  grid.validate();
  std::vector<double> q(grid.points());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = grid.point(i);
  return q;
}

std::vector<double> momentum_points(const GridSpec& grid) {
  grid.validate();
  std::vector<double> p(grid.points());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = grid.momentum(k);
  return p;
}

void TimeGrid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
  if (n_steps < 1) throw std::invalid_argument("need at least one time step");
  if (sample_stride < 1 || sample_stride > n_steps) {
    throw std::invalid_argument("sample stride must lie in [1, n_steps]");
  }
}

TimeGrid TimeGrid::from_total(double total_fs, int n_steps, int sample_stride) {
  if (n_steps < 1) throw std::invalid_argument("need at least one time step");
  TimeGrid tg{total_fs / n_steps, n_steps, sample_stride};
  tg.validate();
  return tg;
}

// ---------------------------------------------------------------------------
// Threads

void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---------------------------------------------------------------------------
// Wavepacket

Wavepacket::Wavepacket(std::size_t modes, int qubits_per_mode, Basis basis)
    : modes_(modes), qubits_per_mode_(qubits_per_mode), sector_(1), basis_(basis) {
  if (modes == 0) throw std::invalid_argument("wavepacket needs at least one mode");
  if (qubits_per_mode < 1) throw std::invalid_argument("wavepacket needs qubits_per_mode >= 1");
  if (modes * static_cast<std::size_t>(qubits_per_mode) > 34) {
    throw std::invalid_argument("wavepacket of " + std::to_string(modes) + " x " +
                                std::to_string(qubits_per_mode) +
                                " qubits exceeds the dense-storage limit");
  }
  sector_ = std::size_t{1} << (modes * static_cast<std::size_t>(qubits_per_mode));
  amps_.assign(2 * sector_, cplx{0.0, 0.0});
}

std::span<cplx> Wavepacket::sector(Branch s) {
  return std::span<cplx>(amps_).subspan(static_cast<std::size_t>(s) * sector_, sector_);
}

std::span<const cplx> Wavepacket::sector(Branch s) const {
  return std::span<const cplx>(amps_).subspan(static_cast<std::size_t>(s) * sector_, sector_);
}

std::size_t Wavepacket::mode_index(std::size_t flat, std::size_t k) const {
  const auto shift = (modes_ - 1 - k) * static_cast<std::size_t>(qubits_per_mode_);
  return (flat >> shift) & (points_per_mode() - 1);
}

double Wavepacket::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void Wavepacket::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw std::domain_error("cannot normalize a zero wavepacket");
  for (auto& a : amps_) a /= n;
}

double Wavepacket::population(Branch s) const {
  double p = 0.0;
  for (const auto& a : sector(s)) p += std::norm(a);
  return p;
}

cplx Wavepacket::overlap(const Wavepacket& other) const {
  if (other.size() != size()) throw std::invalid_argument("overlap of mismatched wavepackets");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

double Wavepacket::marginal(std::size_t k, std::size_t idx) const {
  if (k >= modes_) throw std::out_of_range("mode index out of range");
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (mode_index(i % sector_, k) == idx) p += std::norm(amps_[i]);
  }
  return p;
}

std::vector<double> ground_state_amplitudes(const GridSpec& grid) {
  grid.validate();
  std::vector<double> g(grid.points());
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double q = grid.point(i);
    g[i] = std::exp(-0.5 * q * q);
    s += g[i] * g[i];
  }
  const double inv = 1.0 / std::sqrt(s);
  for (auto& v : g) v *= inv;
  return g;
}

Wavepacket initial_state(const VibronicModel& model, const GridSpec& grid) {
  const auto g = ground_state_amplitudes(grid);
  Wavepacket psi(model.mode_count(), grid.qubits_per_mode);
  auto s2 = psi.sector(Branch::S2);
  const std::size_t d = model.mode_count();
  for (std::size_t flat = 0; flat < s2.size(); ++flat) {
    double a = 1.0;
    for (std::size_t k = 0; k < d; ++k) a *= g[psi.mode_index(flat, k)];
    s2[flat] = a;
  }
  return psi;
}

double fidelity(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity of mismatched vectors");
  cplx ov{0.0, 0.0};
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ov += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  return std::norm(ov) / (na * nb);
}

}  // namespace vibronic
