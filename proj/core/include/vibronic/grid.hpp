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
#include <string_view>
#include <vector>

namespace vibronic {

/// How grid points are laid over [q_min, q_max].
///   Periodic: N cells, spacing L / N, q_max itself is excluded.
///   Endpoint: N points including both ends, spacing L / (N - 1).
enum class GridConvention { Periodic, Endpoint };

std::string_view to_string(GridConvention c);
GridConvention parse_convention(std::string_view text);

/// Per-mode spatial discretization; every mode uses the same grid.
struct GridSpec {
  int qubits_per_mode = 4;
  double q_min = -5.0;
  double q_max = 5.0;
  GridConvention convention = GridConvention::Endpoint;

  /// Throws std::invalid_argument unless n >= 2 and q_min < q_max.
  void validate() const;

  std::size_t points() const { return std::size_t{1} << qubits_per_mode; }
  double spacing() const;
  /// Position of grid index idx: q_min + idx * spacing().
  double point(std::size_t idx) const { return q_min + static_cast<double>(idx) * spacing(); }
  /// Momentum conjugate to the DFT bin k, with k mapped to the signed range
  /// [-N/2, N/2): p = 2 pi k_signed / (N * spacing).
  double momentum(std::size_t k) const;
};

std::vector<double> grid_points(const GridSpec& grid);
std::vector<double> momentum_points(const GridSpec& grid);

/// Trotter step size, step count and autocorrelation sampling stride.
struct TimeGrid {
  double dt = 0.0;  // fs
  int n_steps = 1;
  int sample_stride = 1;

  void validate() const;
  double total() const { return dt * n_steps; }
  /// Number of recorded samples including t = 0.
  std::size_t samples() const { return static_cast<std::size_t>(n_steps / sample_stride) + 1; }
  double sample_interval() const { return dt * sample_stride; }

  static TimeGrid from_total(double total_fs, int n_steps, int sample_stride = 1);
};

}  // namespace vibronic
