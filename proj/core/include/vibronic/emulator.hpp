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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "vibronic/circuit.hpp"

namespace vibronic {

using cplx = std::complex<double>;

/// Thrown when a statevector would not fit in the configured memory budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(int qubits, std::uint64_t required, std::uint64_t budget);
  int qubits() const { return qubits_; }
  std::uint64_t required_bytes() const { return required_; }
  std::uint64_t budget_bytes() const { return budget_; }

 private:
  int qubits_;
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Default statevector budget (bytes); overridable with VIBRONIC_MEMORY_BUDGET.
std::uint64_t default_memory_budget();
/// Throws BudgetError if a 2^qubits statevector exceeds `budget` bytes.
void check_budget(int qubits, std::uint64_t budget = default_memory_budget());

/// |0...0> on `qubits` qubits after a budget check.
std::vector<cplx> zero_state(int qubits, std::uint64_t budget = default_memory_budget());

/// Applies one gate in place. Qubit q is bit q of the amplitude index.
/// `extra` adds controls on top of the gate's own (Hadamard test, QPE).
void apply(const Gate& gate, std::span<cplx> state, std::span<const Control> extra = {});
/// Applies every gate of the circuit in layer order.
void apply(const Circuit& circuit, std::span<cplx> state, std::span<const Control> extra = {});

/// Dense unitary of a small circuit, column-major: column j is the image of
/// basis state |j>. Limited to 12 qubits.
std::vector<cplx> unitary(const Circuit& circuit);

/// Probability of each basis state.
std::vector<double> probabilities(std::span<const cplx> state);

/// Probability that qubit q reads 1.
double probability_one(std::span<const cplx> state, int q);

}  // namespace vibronic
