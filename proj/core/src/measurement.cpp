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

#include "vibronic/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vibronic/builders.hpp"
#include "vibronic/model.hpp"
#include "vibronic/sampling.hpp"

namespace vibronic {

Circuit add_control(const Circuit& c, Control control) {
  Circuit out(std::max(c.num_qubits(), control.qubit + 1));
  for (const auto& layer : c.layers()) {
    const bool diag = std::all_of(layer.begin(), layer.end(), [](const Gate& g) { return g.is_diagonal(); });
    if (diag) {
      std::vector<Gate> l;
      l.reserve(layer.size());
      for (const auto& g : layer) l.push_back(g.controlled(control));
      out.push_layer(std::move(l));
    } else {
      for (const auto& g : layer) out.push(g.controlled(control));
    }
  }
  return out;
}

namespace {

bool within_system(const Circuit& c, const QubitLayout& layout) {
  if (c.num_qubits() > layout.total_qubits()) return false;
  for (const auto& layer : c.layers()) {
    for (const auto& g : layer) {
      for (int q : g.qubits()) {
        if (q >= layout.system_qubits()) return false;
      }
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hadamard test

Circuit build_hadamard_test(const Circuit& evolution, const QubitLayout& layout, Part part,
                            const Circuit* prep) {
  if (!layout.ancilla) throw CircuitError("Hadamard test needs a layout with an ancilla");
  const int a = layout.ancilla_qubit();
  if (!within_system(evolution, layout)) {
    throw CircuitError("evolution circuit acts outside the system register");
  }
  Circuit c(layout.total_qubits());
  if (prep) c.append(*prep);
  c.push(Gate::h(a));
  c.append(add_control(evolution, {a, true}));
  if (part == Part::Imag) c.push(Gate::s(a));
  c.push(Gate::h(a));
  return c;
}

namespace {

double ancilla_p0(std::span<const cplx> state, int a) { return 1.0 - probability_one(state, a); }

// Applies [S] H to the ancilla of a copy and returns P(0).
double readout(const std::vector<cplx>& state, int a, Part part) {
  std::vector<cplx> s = state;
  if (part == Part::Imag) vibronic::apply(Gate::s(a), s);
  vibronic::apply(Gate::h(a), s);
  return ancilla_p0(s, a);
}

}  // namespace

HadamardProbabilities hadamard_probabilities(const Circuit& evolution, const QubitLayout& layout,
                                             const Circuit* prep) {
  HadamardProbabilities p;
  for (Part part : {Part::Real, Part::Imag}) {
    const Circuit c = build_hadamard_test(evolution, layout, part, prep);
    auto s = zero_state(layout.total_qubits());
    vibronic::apply(c, s);
    (part == Part::Real ? p.p0_real : p.p0_imag) = ancilla_p0(s, layout.ancilla_qubit());
  }
  return p;
}

AutocorrSeries HadamardSeries::autocorr() const {
  AutocorrSeries a;
  a.times = times;
  a.values.reserve(probabilities.size());
  for (const auto& p : probabilities) a.values.push_back(p.value());
  return a;
}

HadamardSeries hadamard_series(const Circuit& prep, const Circuit& step, const QubitLayout& layout,
                               const TimeGrid& time) {
  time.validate();
  if (!layout.ancilla) throw CircuitError("Hadamard test needs a layout with an ancilla");
  const int a = layout.ancilla_qubit();
  const Control ctrl{a, true};
  auto s = zero_state(layout.total_qubits());
  vibronic::apply(prep, s);
  vibronic::apply(Gate::h(a), s);

  HadamardSeries out;
  auto record = [&](int n) {
    out.times.push_back(n * time.dt);
    out.probabilities.push_back({readout(s, a, Part::Real), readout(s, a, Part::Imag)});
  };
  record(0);
  for (int n = 1; n <= time.n_steps; ++n) {
    vibronic::apply(step, s, std::span<const Control>(&ctrl, 1));
    if (n % time.sample_stride == 0) record(n);
  }
  return out;
}

cplx estimate_autocorr(const HadamardProbabilities& p, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  Rng rng = make_rng(seed);
  const double n = static_cast<double>(shots);
  const auto k0 = binomial(shots, p.p0_real, rng);
  const auto k1 = binomial(shots, 1.0 - p.p0_imag, rng);
  return {2.0 * static_cast<double>(k0) / n - 1.0, 2.0 * static_cast<double>(k1) / n - 1.0};
}

// ---------------------------------------------------------------------------
// Phase estimation

Circuit build_qpe(const Circuit& step, const QubitLayout& layout) {
  const int m = layout.time_qubits;
  if (m < 1) throw CircuitError("phase estimation needs at least one time qubit");
  if (!within_system(step, layout)) {
    throw CircuitError("evolution step acts outside the system register");
  }
  Circuit c(layout.total_qubits());
  std::vector<Gate> hs;
  std::vector<int> reg(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    reg[static_cast<std::size_t>(j)] = layout.time_qubit(j);
    hs.push_back(Gate::h(layout.time_qubit(j)));
  }
  c.push_layer(std::move(hs));
  for (int j = 0; j < m; ++j) {
    const Circuit cu = add_control(step, {layout.time_qubit(j), true});
    for (std::size_t r = 0; r < (std::size_t{1} << j); ++r) c.append(cu);
  }
  c.append(build_qft(reg, layout.total_qubits(), true));
  return c;
}

std::size_t QpeResult::argmax() const {
  return static_cast<std::size_t>(
      std::distance(probabilities.begin(), std::max_element(probabilities.begin(), probabilities.end())));
}

QpeResult run_qpe(const Circuit& qpe, const QubitLayout& layout, std::span<const cplx> system_state,
                  std::uint64_t shots, std::uint64_t seed, std::uint64_t budget) {
  const int total = layout.total_qubits();
  check_budget(total, budget);
  const std::size_t sys = std::size_t{1} << layout.system_qubits();
  if (system_state.size() != sys) throw CircuitError("system state has the wrong length");
  if (layout.ancilla) throw CircuitError("phase estimation layout must not carry an ancilla");

  std::vector<cplx> s(std::size_t{1} << total, cplx{0.0, 0.0});
  std::copy(system_state.begin(), system_state.end(), s.begin());
  vibronic::apply(qpe, s);

  QpeResult r;
  r.m = layout.time_qubits;
  r.probabilities.assign(std::size_t{1} << r.m, 0.0);
  const int shift = layout.system_qubits();
  for (std::size_t i = 0; i < s.size(); ++i) r.probabilities[i >> shift] += std::norm(s[i]);
  r.shots = shots;
  if (shots > 0) {
    Rng rng = make_rng(seed);
    r.counts = multinomial(r.probabilities, shots, rng);
  } else {
    r.counts.assign(r.probabilities.size(), 0);
  }
  return r;
}

double qpe_phase(std::size_t y, int m) { return static_cast<double>(y) / std::ldexp(1.0, m); }

double qpe_bin_width(int m, double dt) {
  return 2.0 * std::numbers::pi * kHbar / (std::ldexp(1.0, m) * dt);
}

double qpe_energy(std::size_t y, int m, double dt, double e_min) {
  const double period = 2.0 * std::numbers::pi * kHbar / dt;
  const double e = -period * qpe_phase(y, m);
  double folded = std::fmod(e - e_min, period);
  if (folded < 0.0) folded += period;
  return e_min + folded;
}

// ---------------------------------------------------------------------------

PopulationReadout measure_populations(std::span<const cplx> state, const QubitLayout& layout,
                                      std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const double p1 = probability_one(state, layout.electronic());
  Rng rng = make_rng(seed);
  PopulationReadout r;
  r.c1 = binomial(shots, p1, rng);
  r.c0 = shots - r.c1;
  return r;
}

}  // namespace vibronic
