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

#include <cstdint>
#include <vector>

#include "vibronic/emulator.hpp"
#include "vibronic/grid.hpp"
#include "vibronic/model.hpp"
#include "vibronic/series.hpp"
#include "vibronic/soft.hpp"

namespace vibronic {

struct CircuitRun {
  AutocorrSeries autocorr;
  PopulationSeries populations;
  /// Position-frame statevector after the last step; same ordering as
  /// Wavepacket::amplitudes().
  std::vector<cplx> final_state;
  int depth_per_step = 0;
};

/// Gate-level counterpart of propagate(): prepares the initial state with the
/// state-preparation circuit, applies the Trotter-step circuit time.n_steps
/// times on the emulator and records A(t) and the electronic populations
/// every time.sample_stride steps. Throws BudgetError past the memory budget.
CircuitRun emulate_propagation(const VibronicModel& model, const GridSpec& grid,
                               const TimeGrid& time,
                               SplitOrder order = SplitOrder::PotentialFirst,
                               std::uint64_t budget = default_memory_budget());

}  // namespace vibronic
