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
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "vibronic/series.hpp"

namespace vibronic {

struct SpectrumOptions {
  /// Exponential damping B(t) = exp(-t / tau); nullopt disables it.
  std::optional<double> tau_fs = 30.0;
  /// Cosine taper D(t) = cos(pi t / 2T), T the last sample time.
  bool use_d = false;
  /// Energy window [lo, hi) in eV; defaults to [0, pi hbar / dt), the
  /// positive half of the sampled band.
  std::optional<std::pair<double, double>> window;
  bool normalize = true;
};

/// I(E) proportional to E * Re sum_t A(t) e^{i E t / hbar} over the two-sided
/// extension A(-t) = conj(A(t)); length 2K - 1, bin width 2 pi hbar / ((2K-1) dt).
/// Negative intensities are clamped to zero before normalization.
SpectrumSeries spectrum(const AutocorrSeries& a, const SpectrumOptions& options = {});

/// Binomial estimate of every sample: Re from P(0) = (1 + Re A) / 2 and Im
/// from P(1) = (1 + Im A) / 2, `shots` draws each.
AutocorrSeries sample_autocorr(const AutocorrSeries& a, std::uint64_t shots, std::uint64_t seed);

/// Multinomial histogram of a normalized spectrum with `shots` draws.
SpectrumSeries sample_spectrum_direct(const SpectrumSeries& s, std::uint64_t shots,
                                      std::uint64_t seed);

/// Half the L1 distance. Throws std::invalid_argument on mismatched grids.
double tvd(std::span<const double> p, std::span<const double> q);
double tvd(const SpectrumSeries& p, const SpectrumSeries& q);

enum class SamplingMode { Autocorr, Direct };
std::string_view to_string(SamplingMode m);
SamplingMode parse_sampling_mode(std::string_view text);

struct ShotScan {
  SamplingMode mode = SamplingMode::Direct;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> shots;
  std::vector<double> tvd;
  std::vector<double> thresholds;
  /// First grid point from which TVD < threshold holds for `sustain`
  /// consecutive points; nullopt when never met.
  std::vector<std::optional<std::uint64_t>> crossings;
};

/// TVD of sampled versus exact spectra over an increasing shot grid.
/// In Autocorr mode the sampled spectrum is spectrum(sample_autocorr(a));
/// in Direct mode it is sample_spectrum_direct(spectrum(a)).
ShotScan shots_scan(const AutocorrSeries& a, SamplingMode mode, std::span<const std::uint64_t> grid,
                    std::span<const double> thresholds, int sustain, std::uint64_t seed,
                    const SpectrumOptions& options = {});

/// First sustained crossing of each threshold in a TVD curve.
std::vector<std::optional<std::uint64_t>> sustained_crossings(std::span<const std::uint64_t> grid,
                                                              std::span<const double> tvd,
                                                              std::span<const double> thresholds,
                                                              int sustain);

/// Median of the crossings over several scans (unmet counts as larger than
/// any grid point; the median is unmet if at least half are).
std::vector<std::optional<std::uint64_t>> median_crossings(std::span<const ShotScan> scans);

/// lo, lo + step, ... up to hi inclusive.
std::vector<std::uint64_t> linear_grid(std::uint64_t lo, std::uint64_t hi, std::uint64_t step);

/// Shot grid from lo to hi inclusive with `per_decade` log-spaced points per
/// decade, rounded to multiples of `quantum`.
std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi, int per_decade,
                                    std::uint64_t quantum = 1000);

}  // namespace vibronic
