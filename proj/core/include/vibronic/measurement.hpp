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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vibronic/circuit.hpp"
#include "vibronic/emulator.hpp"
#include "vibronic/grid.hpp"
#include "vibronic/series.hpp"

namespace vibronic {

/// Copy of `c` with one more control on every gate. Layers that would no
/// longer commute are split into single-gate layers.
Circuit add_control(const Circuit& c, Control control);

// --- Hadamard test ---------------------------------------------------------

enum class Part { Real, Imag };

/// prep; H(a); controlled-evolution; [S(a)]; H(a). For Part::Real
/// P(0) - P(1) = Re <psi|U|psi>; for Part::Imag P(1) - P(0) = Im <psi|U|psi>.
/// `layout` must carry the ancilla.
Circuit build_hadamard_test(const Circuit& evolution, const QubitLayout& layout, Part part,
                            const Circuit* prep = nullptr);

/// Ancilla |0> probabilities of the real and imaginary circuits.
struct HadamardProbabilities {
  double p0_real = 1.0;
  double p0_imag = 0.5;

  cplx value() const { return {2.0 * p0_real - 1.0, 1.0 - 2.0 * p0_imag}; }
};

/// Runs both Hadamard-test circuits from |0...0> and reads the ancilla.
HadamardProbabilities hadamard_probabilities(const Circuit& evolution, const QubitLayout& layout,
                                             const Circuit* prep = nullptr);

/// Exact ancilla probabilities after every `time.sample_stride` applications
/// of `step` (a position-basis Trotter step), starting from prep|0>. The
/// controlled evolution is advanced incrementally.
struct HadamardSeries {
  std::vector<double> times;
  std::vector<HadamardProbabilities> probabilities;

  AutocorrSeries autocorr() const;
};
HadamardSeries hadamard_series(const Circuit& prep, const Circuit& step, const QubitLayout& layout,
                               const TimeGrid& time);

/// Shot-based estimate: `shots` Bernoulli outcomes per circuit drawn from the
/// exact ancilla probabilities.
cplx estimate_autocorr(const HadamardProbabilities& p, std::uint64_t shots, std::uint64_t seed);

// --- phase estimation --------------------------------------------------------

/// H on the time register; controlled step^(2^j) on time qubit j; inverse QFT
/// on the time register. `layout.time_qubits` sets m.
Circuit build_qpe(const Circuit& step, const QubitLayout& layout);

struct QpeResult {
  int m = 0;
  std::vector<double> probabilities;  // exact, indexed by the m-bit readout y
  std::vector<std::uint64_t> counts;  // sampled
  std::uint64_t shots = 0;

  std::size_t argmax() const;
};

/// Emulates `qpe` on system_state (tensored with |0> on the time register)
/// and samples `shots` readouts. Throws BudgetError if the statevector would
/// exceed `budget` bytes.
QpeResult run_qpe(const Circuit& qpe, const QubitLayout& layout,
                  std::span<const cplx> system_state, std::uint64_t shots, std::uint64_t seed,
                  std::uint64_t budget = default_memory_budget());

/// theta = y / 2^m.
double qpe_phase(std::size_t y, int m);
/// Energy of readout y for U = exp(-i H dt / hbar): E = -2 pi hbar theta / dt,
/// folded into [e_min, e_min + 2 pi hbar / dt).
double qpe_energy(std::size_t y, int m, double dt, double e_min);
/// Bin width 2 pi hbar / (2^m dt).
double qpe_bin_width(int m, double dt);

// --- electronic populations ------------------------------------------------

struct PopulationReadout {
  std::uint64_t c0 = 0;  // S1
  std::uint64_t c1 = 0;  // S2
  double p_s1() const { return static_cast<double>(c0) / static_cast<double>(c0 + c1); }
  double p_s2() const { return static_cast<double>(c1) / static_cast<double>(c0 + c1); }
};

/// Measures the electronic qubit `shots` times.
PopulationReadout measure_populations(std::span<const cplx> state, const QubitLayout& layout,
                                      std::uint64_t shots, std::uint64_t seed);

}  // namespace vibronic
