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

#include "vibronic/emulator.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

namespace vibronic {

BudgetError::BudgetError(int qubits, std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("statevector of " + std::to_string(qubits) + " qubits needs " +
                         std::to_string(required) + " bytes, budget is " +
                         std::to_string(budget) + " bytes"),
      qubits_(qubits),
      required_(required),
      budget_(budget) {}

std::uint64_t default_memory_budget() {
  if (const char* env = std::getenv("VIBRONIC_MEMORY_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return std::uint64_t{2} << 30;
}

void check_budget(int qubits, std::uint64_t budget) {
  if (qubits < 0) throw CircuitError("negative qubit count");
  if (qubits >= 59) throw BudgetError(qubits, UINT64_MAX, budget);
  const std::uint64_t need = (std::uint64_t{1} << qubits) * sizeof(cplx);
  if (need > budget) throw BudgetError(qubits, need, budget);
}

std::vector<cplx> zero_state(int qubits, std::uint64_t budget) {
  check_budget(qubits, budget);
  std::vector<cplx> s(std::size_t{1} << qubits, cplx{0.0, 0.0});
  s[0] = 1.0;
  return s;
}

namespace {

// Qubits pinned to a value while the remaining bits run over all patterns.
struct Pinned {
  std::array<int, 64> pos{};
  int count = 0;
  std::size_t value = 0;

  void add(int q, bool one) {
    for (int i = 0; i < count; ++i) {
      if (pos[static_cast<std::size_t>(i)] == q) {
        throw CircuitError("qubit " + std::to_string(q) + " used twice in one gate application");
      }
    }
    pos[static_cast<std::size_t>(count++)] = q;
    if (one) value |= std::size_t{1} << q;
  }
  void finish() { std::sort(pos.begin(), pos.begin() + count); }

  std::size_t expand(std::size_t free) const {
    for (int i = 0; i < count; ++i) {
      const int p = pos[static_cast<std::size_t>(i)];
      const std::size_t low = free & ((std::size_t{1} << p) - 1);
      free = ((free >> p) << (p + 1)) | low;
    }
    return free | value;
  }
};

int qubit_count(std::size_t size) {
  if (size == 0 || !std::has_single_bit(size)) {
    throw CircuitError("statevector length must be a power of two");
  }
  return std::countr_zero(size);
}

template <class F>
void for_each_free(const Pinned& pin, int qubits, F&& f) {
  const auto n = static_cast<std::ptrdiff_t>(std::size_t{1} << (qubits - pin.count));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) f(pin.expand(static_cast<std::size_t>(i)));
}

}  // namespace

void apply(const Gate& gate, std::span<cplx> state, std::span<const Control> extra) {
  const int nq = qubit_count(state.size());
  gate.validate(nq);
  Pinned pin;
  for (const auto& c : gate.controls) pin.add(c.qubit, c.on_one);
  for (const auto& c : extra) {
    if (c.qubit < 0 || c.qubit >= nq) throw CircuitError("extra control outside register");
    pin.add(c.qubit, c.on_one);
  }
  const int t = gate.targets[0];
  const std::size_t tb = std::size_t{1} << t;
  cplx* a = state.data();

  switch (gate.kind) {
    case GateKind::U1:
    case GateKind::S: {
      const cplx ph = gate.kind == GateKind::S ? cplx{0.0, 1.0} : std::polar(1.0, gate.theta);
      pin.add(t, true);
      pin.finish();
      for_each_free(pin, nq, [&](std::size_t i) { a[i] *= ph; });
      return;
    }
    case GateKind::Swap: {
      const int u = gate.targets[1];
      const std::size_t ub = std::size_t{1} << u;
      pin.add(t, true);
      pin.add(u, false);
      pin.finish();
      for_each_free(pin, nq, [&](std::size_t i) { std::swap(a[i], a[(i ^ tb) | ub]); });
      return;
    }
    case GateKind::X: {
      pin.add(t, false);
      pin.finish();
      for_each_free(pin, nq, [&](std::size_t i) { std::swap(a[i], a[i | tb]); });
      return;
    }
    default:
      break;
  }

  // General 2x2 on the target.
  cplx m00, m01, m10, m11;
  const double c = std::cos(0.5 * gate.theta);
  const double s = std::sin(0.5 * gate.theta);
  if (gate.kind == GateKind::H) {
    const double r = 1.0 / std::sqrt(2.0);
    m00 = m01 = m10 = r;
    m11 = -r;
  } else if (gate.kind == GateKind::Ry) {
    m00 = c;
    m01 = -s;
    m10 = s;
    m11 = c;
  } else {  // Rx
    m00 = c;
    m01 = cplx{0.0, -s};
    m10 = cplx{0.0, -s};
    m11 = c;
  }
  pin.add(t, false);
  pin.finish();
  for_each_free(pin, nq, [&](std::size_t i) {
    const cplx x = a[i];
    const cplx y = a[i | tb];
    a[i] = m00 * x + m01 * y;
    a[i | tb] = m10 * x + m11 * y;
  });
}

void apply(const Circuit& circuit, std::span<cplx> state, std::span<const Control> extra) {
  const int nq = qubit_count(state.size());
  if (circuit.num_qubits() > nq) throw CircuitError("circuit is wider than the statevector");
  for (const auto& layer : circuit.layers()) {
    for (const auto& g : layer) apply(g, state, extra);
  }
}

std::vector<cplx> unitary(const Circuit& circuit) {
  const int nq = circuit.num_qubits();
  if (nq > 12) throw CircuitError("unitary() is limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << nq;
  std::vector<cplx> u(dim * dim, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < dim; ++j) {
    std::span<cplx> col(u.data() + j * dim, dim);
    col[j] = 1.0;
    apply(circuit, col);
  }
  return u;
}

std::vector<double> probabilities(std::span<const cplx> state) {
  std::vector<double> p(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) p[i] = std::norm(state[i]);
  return p;
}

double probability_one(std::span<const cplx> state, int q) {
  const int nq = qubit_count(state.size());
  if (q < 0 || q >= nq) throw CircuitError("qubit outside register");
  const std::size_t b = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i & b) p += std::norm(state[i]);
  }
  return p;
}

}  // namespace vibronic
