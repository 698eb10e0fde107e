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

#include "vibronic/signals.hpp"
#include "vibronic/soft.hpp"

using namespace vibronic;

namespace {

void BM_SoftStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VibronicModel m = preset("pyrazine-4d");
  const GridSpec g{n, -5.0, 5.0};
  const PropagatorPlan plan(m, g, 0.12890625);
  Wavepacket psi = initial_state(m, g);
  for (auto _ : state) {
    plan.step(psi);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
}
BENCHMARK(BM_SoftStep)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_Spectrum(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  AutocorrSeries a;
  for (std::size_t i = 0; i < k; ++i) {
    a.times.push_back(0.25 * static_cast<double>(i));
    a.values.push_back(std::exp(cplx(0.0, -0.01 * static_cast<double>(i))));
  }
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(a));
}
BENCHMARK(BM_Spectrum)->Arg(129)->Arg(1025);

void BM_ShotScanPoint(benchmark::State& state) {
  AutocorrSeries a;
  for (int i = 0; i < 1025; ++i) {
    a.times.push_back(0.25 * i);
    a.values.push_back(std::exp(cplx(-0.002 * i, -0.05 * i)));
  }
  const SpectrumSeries exact = spectrum(a);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tvd(spectrum(sample_autocorr(a, 100000, ++seed)), exact));
  }
}
BENCHMARK(BM_ShotScanPoint)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
