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
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "vibronic/grid.hpp"
#include "vibronic/model.hpp"
#include "vibronic/series.hpp"
#include "vibronic/wavepacket.hpp"

namespace vibronic {

/// Where the half steps go.
///   PotentialFirst: V(dt/2) FT K(dt) FT^-1 V(dt/2), where the leading half
///     applies the diagonal part then the coupling and the trailing half
///     applies them in reverse so the whole step is symmetric.
///   KineticFirst:   K(dt/2) V_diag(dt) V_off(dt) K(dt/2).
enum class SplitOrder { PotentialFirst, KineticFirst };

std::string_view to_string(SplitOrder o);
SplitOrder parse_split_order(std::string_view text);

/// Precomputed phase tables and FFT plans for one (model, grid, dt).
/// dt may be negative (backward propagation). step() is const and may be
/// called concurrently on distinct wavepackets.
class PropagatorPlan {
 public:
  PropagatorPlan(const VibronicModel& model, const GridSpec& grid, double dt,
                 SplitOrder order = SplitOrder::PotentialFirst);
  ~PropagatorPlan();
  PropagatorPlan(PropagatorPlan&&) noexcept;
  PropagatorPlan& operator=(PropagatorPlan&&) noexcept;
  PropagatorPlan(const PropagatorPlan&) = delete;
  PropagatorPlan& operator=(const PropagatorPlan&) = delete;

  const VibronicModel& model() const { return model_; }
  const GridSpec& grid() const { return grid_; }
  double dt() const { return dt_; }
  SplitOrder order() const { return order_; }

  /// Advances psi by dt in place. psi must be in the position basis.
  void step(Wavepacket& psi) const;

  /// Unitary multidimensional FFT over the mode axes of both sectors.
  void to_momentum(Wavepacket& psi) const;
  void to_position(Wavepacket& psi) const;

  /// <psi|H|psi> for a position-basis wavepacket, including the constant
  /// gap and the off-diagonal coupling.
  double energy(const Wavepacket& psi) const;

  /// Diagonal potential V_s at every sector-local grid index.
  const std::vector<double>& potential_table(Branch s) const {
    return s == Branch::S1 ? v1_ : v2_;
  }
  const std::vector<double>& coupling_table() const { return vc_; }
  const std::vector<double>& kinetic_table() const { return kin_; }

 private:
  void apply_diag(Wavepacket& psi, const std::vector<cplx>& p1,
                  const std::vector<cplx>& p2) const;
  void apply_coupling(Wavepacket& psi, const std::vector<double>& c,
                      const std::vector<double>& s) const;
  void apply_kinetic(Wavepacket& psi, const std::vector<cplx>& k) const;

  VibronicModel model_;
  GridSpec grid_;
  double dt_;
  SplitOrder order_;

  std::vector<double> v1_, v2_, vc_, kin_;
  // Potential-first: diagonal/coupling at dt/2, kinetic at dt.
  // Kinetic-first:   diagonal/coupling at dt,   kinetic at dt/2.
  std::vector<cplx> phase1_, phase2_, kphase_;
  std::vector<double> cos_, sin_;

  struct Fft;
  std::unique_ptr<Fft> fft_;
};

/// Returns a copy of psi advanced by one step.
Wavepacket step(const PropagatorPlan& plan, Wavepacket psi);

/// Optional per-sample hook, called with (step index, state) at every
/// recorded sample including step 0.
using SampleHook = std::function<void(int, const Wavepacket&)>;

struct Observers {
  bool autocorr = true;
  bool populations = true;
  bool boundary = true;
  SampleHook on_sample;
};

struct Propagation {
  AutocorrSeries autocorr;
  PopulationSeries populations;
  BoundarySeries boundary;
  Wavepacket final_state;
};

/// Runs time.n_steps steps from psi0 and records the requested observables
/// every time.sample_stride steps (plan.dt() must equal time.dt).
Propagation propagate(const PropagatorPlan& plan, const Wavepacket& psi0, const TimeGrid& time,
                      const Observers& observers = {});

/// Largest marginal probability on the first or last grid slice, per mode.
std::vector<double> boundary_probabilities(const Wavepacket& psi);

/// Zero-point energy on this grid: <psi0|K + V_S2 - delta|psi0> with psi0
/// the sampled Gaussian on S2, K evaluated by FFT. The gap constant is left
/// out so the result is comparable with sum_k omega_k / 2; linear and
/// bilinear terms vanish on grids symmetric about zero.
double zpe(const VibronicModel& model, const GridSpec& grid);

}  // namespace vibronic
