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

#include <benchmark/benchmark.h>

#include <vector>

#include "vibronic/builders.hpp"
#include "vibronic/circuit.hpp"
#include "vibronic/emulator.hpp"

using namespace vibronic;

namespace {

void BM_Hadamard(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  auto psi = zero_state(q);
  const Gate g = Gate::h(q / 2);
  for (auto _ : state) {
    vibronic::apply(g, psi);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(psi.size()));
}
BENCHMARK(BM_Hadamard)->Arg(13)->Arg(17)->Arg(21);

void BM_ControlledPhase(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  auto psi = zero_state(q);
  const Gate g = Gate::cu1(0, q - 1, 0.3);
  for (auto _ : state) {
    vibronic::apply(g, psi);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(psi.size()));
}
BENCHMARK(BM_ControlledPhase)->Arg(13)->Arg(17)->Arg(21);

void BM_DoublyControlledRx(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  auto psi = zero_state(q);
  const Gate g = Gate::ccrx(1, 2, 0, 0.7);
  for (auto _ : state) {
    vibronic::apply(g, psi);
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(psi.size()));
}
BENCHMARK(BM_DoublyControlledRx)->Arg(13)->Arg(17)->Arg(21);

void BM_TrotterStepCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VibronicModel m = preset("pyrazine-4d");
  const GridSpec g{n, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  const Circuit step = build_timestep(m, g, layout, 0.12890625);
  auto psi = zero_state(layout.total_qubits());
  vibronic::apply(build_initial_state(m, g, layout), psi);
  for (auto _ : state) {
    vibronic::apply(step, psi);
    benchmark::DoNotOptimize(psi.data());
  }
  state.counters["depth"] = static_cast<double>(step.depth());
  state.counters["gates"] = static_cast<double>(step.gate_count());
}
BENCHMARK(BM_TrotterStepCircuit)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
