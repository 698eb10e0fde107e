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
#include <vector>

namespace vibronic {

using cplx = std::complex<double>;

/// A(t) = <psi(0)|psi(t)> on a uniform grid starting at t = 0 (fs).
struct AutocorrSeries {
  std::vector<double> times;
  std::vector<cplx> values;

  std::size_t size() const { return values.size(); }
  /// Sampling interval; throws std::invalid_argument unless the grid is
  /// uniform, starts at 0 and has at least two points.
  double interval() const;
};

struct SpectrumSeries {
  std::vector<double> energies;  // eV
  std::vector<double> intensities;
  bool normalized = false;

  std::size_t size() const { return intensities.size(); }
};

struct PopulationSeries {
  std::vector<double> times;
  std::vector<double> s1;
  std::vector<double> s2;
};

/// Largest marginal probability on the two outermost grid slices of each
/// mode: values[sample][mode].
struct BoundarySeries {
  std::vector<double> times;
  std::vector<std::vector<double>> values;

  /// Maximum over all samples and modes.
  double peak() const;
};

}  // namespace vibronic
