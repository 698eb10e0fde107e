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

#include "vibronic/engine.hpp"

#include "vibronic/builders.hpp"

namespace vibronic {

namespace {

cplx overlap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

CircuitRun emulate_propagation(const VibronicModel& model, const GridSpec& grid,
                               const TimeGrid& time, SplitOrder order, std::uint64_t budget) {
  time.validate();
  const QubitLayout layout = layout_for(model, grid);
  const int e = layout.electronic();
  auto state = zero_state(layout.total_qubits(), budget);
  vibronic::apply(build_initial_state(model, grid, layout), state);
  const std::vector<cplx> psi0 = state;

  const Circuit step = build_timestep(model, grid, layout, time.dt, order);
  const bool momentum_frame = order == SplitOrder::KineticFirst;
  const Circuit qft = build_mode_qft(layout, false);
  const Circuit iqft = build_mode_qft(layout, true);

  CircuitRun run;
  run.depth_per_step = static_cast<int>(step.depth());
  auto record = [&](int n, const std::vector<cplx>& position) {
    const double t = n * time.dt;
    const double p2 = probability_one(position, e);
    run.autocorr.times.push_back(t);
    run.autocorr.values.push_back(overlap(psi0, position));
    run.populations.times.push_back(t);
    run.populations.s1.push_back(1.0 - p2);
    run.populations.s2.push_back(p2);
  };

  record(0, state);
  if (momentum_frame) vibronic::apply(qft, state);
  for (int n = 1; n <= time.n_steps; ++n) {
    vibronic::apply(step, state);
    if (n % time.sample_stride != 0 && n != time.n_steps) continue;
    if (momentum_frame) {
      std::vector<cplx> position = state;
      vibronic::apply(iqft, position);
      if (n % time.sample_stride == 0) record(n, position);
      if (n == time.n_steps) run.final_state = std::move(position);
    } else {
      if (n % time.sample_stride == 0) record(n, state);
      if (n == time.n_steps) run.final_state = state;
    }
  }
  return run;
}

}  // namespace vibronic
