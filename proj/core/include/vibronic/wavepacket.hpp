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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vibronic/grid.hpp"
#include "vibronic/model.hpp"

namespace vibronic {

using cplx = std::complex<double>;

enum class Basis { Position, Momentum };

/// Amplitudes psi(s, i_1, ..., i_d) on the electronic x mode-grid product.
///
/// Flat layout: index = s * N^d + sum_k i_k * N^(d-1-k). Read as a bit string
/// this is exactly the statevector ordering of the circuit emulator, where
/// mode k's register occupies qubits [(d-1-k) n, (d-k) n) and the electronic
/// qubit sits at position d n.
class Wavepacket {
 public:
  Wavepacket(std::size_t modes, int qubits_per_mode, Basis basis = Basis::Position);

  std::size_t modes() const { return modes_; }
  int qubits_per_mode() const { return qubits_per_mode_; }
  std::size_t points_per_mode() const { return std::size_t{1} << qubits_per_mode_; }
  /// N^d, the size of one electronic sector.
  std::size_t sector_size() const { return sector_; }
  std::size_t size() const { return amps_.size(); }
  Basis basis() const { return basis_; }
  void set_basis(Basis b) { basis_ = b; }

  std::span<cplx> amplitudes() { return amps_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> sector(Branch s);
  std::span<const cplx> sector(Branch s) const;

  /// Grid index of mode k within a sector-local flat index.
  std::size_t mode_index(std::size_t flat, std::size_t k) const;

  double norm() const;
  void normalize();
  /// Population of each electronic branch, summing to the squared norm.
  double population(Branch s) const;
  /// <this|other>.
  cplx overlap(const Wavepacket& other) const;
  /// Marginal probability of mode k sitting at grid index idx.
  double marginal(std::size_t k, std::size_t idx) const;

 private:
  std::size_t modes_;
  int qubits_per_mode_;
  std::size_t sector_;
  Basis basis_;
  std::vector<cplx> amps_;
};

/// Ground vibrational state of the harmonic reference (product of exp(-Q^2/2)
/// sampled at the grid points) placed entirely on S2, normalized.
Wavepacket initial_state(const VibronicModel& model, const GridSpec& grid);

/// Normalized exp(-Q^2/2) samples for one mode.
std::vector<double> ground_state_amplitudes(const GridSpec& grid);

/// |<a|b>|^2 / (|a|^2 |b|^2): fidelity up to global phase.
double fidelity(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace vibronic
