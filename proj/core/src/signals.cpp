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

#include "vibronic/signals.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft_lock.hpp"
#include "vibronic/model.hpp"
#include "vibronic/sampling.hpp"

namespace vibronic {

// ---------------------------------------------------------------------------
// Sampling primitives

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

std::uint64_t binomial(std::uint64_t n, double p, Rng& rng) {
  if (n == 0 || !(p > 0.0)) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::uint64_t> dist(n, p);
  return dist(rng);
}

std::vector<std::uint64_t> multinomial(std::span<const double> weights, std::uint64_t n, Rng& rng) {
  double mass = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("multinomial weights must be finite and nonnegative");
    }
    mass += w;
  }
  if (!(mass > 0.0)) throw std::invalid_argument("multinomial weights sum to zero");
  std::vector<std::uint64_t> counts(weights.size(), 0);
  std::uint64_t left = n;
  double rest = mass;
  for (std::size_t i = 0; i < weights.size() && left > 0; ++i) {
    if (i + 1 == weights.size()) {
      counts[i] = left;
      break;
    }
    const double p = rest > 0.0 ? std::min(1.0, weights[i] / rest) : 1.0;
    counts[i] = binomial(left, p, rng);
    left -= counts[i];
    rest -= weights[i];
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Spectrum

SpectrumSeries spectrum(const AutocorrSeries& a, const SpectrumOptions& options) {
  const double dt = a.interval();
  const std::size_t k = a.size();
  const double t_end = a.times.back();
  if (options.tau_fs && !(*options.tau_fs > 0.0)) throw std::invalid_argument("tau must be positive");

  std::vector<cplx> damped(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = a.times[i];
    double w = 1.0;
    if (options.tau_fs) w *= std::exp(-t / *options.tau_fs);
    if (options.use_d) w *= std::cos(std::numbers::pi * t / (2.0 * t_end));
    damped[i] = options.tau_fs || options.use_d ? a.values[i] * w : a.values[i];
  }

  const std::size_t len = 2 * k - 1;
  std::vector<cplx> buf(len);
  buf[0] = damped[0];
  for (std::size_t i = 1; i < k; ++i) {
    buf[i] = damped[i];
    buf[len - i] = std::conj(damped[i]);
  }
  {
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan;
    {
      std::lock_guard lock(detail::fftw_planner_mutex());
      plan = fftw_plan_dft_1d(static_cast<int>(len), p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double de = 2.0 * std::numbers::pi * kHbar / (static_cast<double>(len) * dt);
  const auto window = options.window.value_or(std::make_pair(0.0, std::numbers::pi * kHbar / dt));
  if (!(window.first < window.second)) throw std::invalid_argument("empty spectrum window");

  // Signed bins in ascending energy order.
  const auto half = static_cast<long long>(len / 2);
  SpectrumSeries s;
  for (long long j = -half; j <= half; ++j) {
    const double e = de * static_cast<double>(j);
    if (e < window.first || e >= window.second) continue;
    const std::size_t idx = j >= 0 ? static_cast<std::size_t>(j) : static_cast<std::size_t>(j + static_cast<long long>(len));
    s.energies.push_back(e);
    s.intensities.push_back(std::max(0.0, e * buf[idx].real()));
  }
  if (s.energies.empty()) throw std::invalid_argument("spectrum window contains no bins");
  if (options.normalize) {
    double sum = 0.0;
    for (double v : s.intensities) sum += v;
    if (!(sum > 0.0)) throw std::domain_error("spectrum has no positive intensity in the window");
    for (double& v : s.intensities) v /= sum;
    s.normalized = true;
  }
  return s;
}

AutocorrSeries sample_autocorr(const AutocorrSeries& a, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  Rng rng = make_rng(seed);
  AutocorrSeries out;
  out.times = a.times;
  out.values.resize(a.size());
  const double n = static_cast<double>(shots);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double re = std::clamp(a.values[i].real(), -1.0, 1.0);
    const double im = std::clamp(a.values[i].imag(), -1.0, 1.0);
    const auto k0 = binomial(shots, 0.5 * (1.0 + re), rng);
    const auto k1 = binomial(shots, 0.5 * (1.0 + im), rng);
    out.values[i] = {2.0 * static_cast<double>(k0) / n - 1.0, 2.0 * static_cast<double>(k1) / n - 1.0};
  }
  return out;
}

SpectrumSeries sample_spectrum_direct(const SpectrumSeries& s, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  Rng rng = make_rng(seed);
  const auto counts = multinomial(s.intensities, shots, rng);
  SpectrumSeries out;
  out.energies = s.energies;
  out.intensities.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.intensities[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
  }
  out.normalized = true;
  return out;
}

double tvd(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tvd of distributions on different grids");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double tvd(const SpectrumSeries& p, const SpectrumSeries& q) {
  if (p.energies.size() != q.energies.size()) {
    throw std::invalid_argument("tvd of spectra on different grids");
  }
  for (std::size_t i = 0; i < p.energies.size(); ++i) {
    if (std::abs(p.energies[i] - q.energies[i]) > 1e-9) {
      throw std::invalid_argument("tvd of spectra on different grids");
    }
  }
  return tvd(p.intensities, q.intensities);
}

// ---------------------------------------------------------------------------
// Shot scans

std::string_view to_string(SamplingMode m) { return m == SamplingMode::Direct ? "direct" : "autocorr"; }

SamplingMode parse_sampling_mode(std::string_view text) {
  if (text == "direct") return SamplingMode::Direct;
  if (text == "autocorr") return SamplingMode::Autocorr;
  throw std::invalid_argument("unknown sampling mode '" + std::string(text) +
                              "' (expected direct or autocorr)");
}

std::vector<std::optional<std::uint64_t>> sustained_crossings(std::span<const std::uint64_t> grid,
                                                              std::span<const double> tvd_values,
                                                              std::span<const double> thresholds,
                                                              int sustain) {
  if (sustain < 1) throw std::invalid_argument("sustain must be at least 1");
  std::vector<std::optional<std::uint64_t>> out;
  for (double th : thresholds) {
    std::optional<std::uint64_t> hit;
    int run = 0;
    for (std::size_t i = 0; i < tvd_values.size(); ++i) {
      run = tvd_values[i] < th ? run + 1 : 0;
      if (run == sustain) {
        hit = grid[i + 1 - static_cast<std::size_t>(sustain)];
        break;
      }
    }
    out.push_back(hit);
  }
  return out;
}

ShotScan shots_scan(const AutocorrSeries& a, SamplingMode mode, std::span<const std::uint64_t> grid,
                    std::span<const double> thresholds, int sustain, std::uint64_t seed,
                    const SpectrumOptions& options) {
  if (grid.empty()) throw std::invalid_argument("empty shot grid");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw std::invalid_argument("shot grid must increase");
  }
  SpectrumOptions opts = options;
  opts.normalize = true;
  const SpectrumSeries target = spectrum(a, opts);

  ShotScan scan;
  scan.mode = mode;
  scan.seed = seed;
  scan.shots.assign(grid.begin(), grid.end());
  scan.thresholds.assign(thresholds.begin(), thresholds.end());
  scan.tvd.resize(grid.size());
  const auto points = static_cast<long long>(grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long long ii = 0; ii < points; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    try {
      // Each grid point draws from its own stream.
      const std::uint64_t point_seed = make_rng(seed, i)();
      if (mode == SamplingMode::Direct) {
        scan.tvd[i] = tvd(target, sample_spectrum_direct(target, grid[i], point_seed));
      } else {
        scan.tvd[i] = tvd(target, spectrum(sample_autocorr(a, grid[i], point_seed), opts));
      }
    } catch (...) {
#pragma omp critical(vibronic_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  scan.crossings = sustained_crossings(scan.shots, scan.tvd, scan.thresholds, sustain);
  return scan;
}

std::vector<std::optional<std::uint64_t>> median_crossings(std::span<const ShotScan> scans) {
  if (scans.empty()) return {};
  const std::size_t nt = scans.front().crossings.size();
  std::vector<std::optional<std::uint64_t>> out(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<std::uint64_t> v;
    for (const auto& s : scans) v.push_back(s.crossings.at(t).value_or(UINT64_MAX));
    std::sort(v.begin(), v.end());
    // Lower median for even counts.
    const std::uint64_t med = v[(v.size() - 1) / 2];
    if (med != UINT64_MAX) out[t] = med;
  }
  return out;
}

std::vector<std::uint64_t> linear_grid(std::uint64_t lo, std::uint64_t hi, std::uint64_t step) {
  if (step == 0 || lo == 0 || hi < lo) throw std::invalid_argument("bad linear shot grid");
  std::vector<std::uint64_t> g;
  for (std::uint64_t v = lo; v <= hi; v += step) g.push_back(v);
  return g;
}

std::vector<std::uint64_t> log_grid(std::uint64_t lo, std::uint64_t hi, int per_decade,
                                    std::uint64_t quantum) {
  if (lo == 0 || hi < lo || per_decade < 1 || quantum == 0) {
    throw std::invalid_argument("bad logarithmic shot grid");
  }
  std::vector<std::uint64_t> g;
  const double step = std::pow(10.0, 1.0 / per_decade);
  for (double v = static_cast<double>(lo); v <= static_cast<double>(hi) * (1.0 + 1e-12); v *= step) {
    auto q = static_cast<std::uint64_t>(std::llround(v / static_cast<double>(quantum))) * quantum;
    q = std::max(q, quantum);
    if (g.empty() || q > g.back()) g.push_back(q);
  }
  return g;
}

}  // namespace vibronic
