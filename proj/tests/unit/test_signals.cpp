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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "vibronic/model.hpp"
#include "vibronic/sampling.hpp"
#include "vibronic/signals.hpp"

using namespace vibronic;

namespace {

AutocorrSeries single_line(double e0, double dt, std::size_t k) {
  AutocorrSeries a;
  for (std::size_t i = 0; i < k; ++i) {
    const double t = dt * static_cast<double>(i);
    a.times.push_back(t);
    a.values.push_back(std::exp(cplx(0.0, -e0 * t / kHbar)));
  }
  return a;
}

// Full width at half maximum by linear interpolation around the peak.
double fwhm(const SpectrumSeries& s) {
  const auto peak = static_cast<std::size_t>(
      std::max_element(s.intensities.begin(), s.intensities.end()) - s.intensities.begin());
  const double half = 0.5 * s.intensities[peak];
  std::size_t lo = peak;
  while (lo > 0 && s.intensities[lo] > half) --lo;
  std::size_t hi = peak;
  while (hi + 1 < s.size() && s.intensities[hi] > half) ++hi;
  auto cross = [&](std::size_t a, std::size_t b) {
    const double f = (half - s.intensities[a]) / (s.intensities[b] - s.intensities[a]);
    return s.energies[a] + f * (s.energies[b] - s.energies[a]);
  };
  return cross(hi, hi - 1) - cross(lo, lo + 1);
}

}  // namespace

TEST_CASE("a damped single line gives a Lorentzian") {
  const double e0 = 2.0;
  const double dt = 0.1;
  const AutocorrSeries a = single_line(e0, dt, 16384);
  SpectrumOptions opts;
  opts.tau_fs = 30.0;
  const SpectrumSeries s = spectrum(a, opts);
  REQUIRE(s.normalized);
  const double bin = 2.0 * std::numbers::pi * kHbar / ((2.0 * 16384 - 1.0) * dt);
  const auto peak = std::max_element(s.intensities.begin(), s.intensities.end()) - s.intensities.begin();
  CHECK(std::abs(s.energies[static_cast<std::size_t>(peak)] - e0) <= bin);
  CHECK(fwhm(s) == doctest::Approx(2.0 * kHbar / 30.0).epsilon(0.05));
  double sum = 0.0;
  for (double v : s.intensities) {
    CHECK(v >= 0.0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectrum bins and window") {
  const double dt = 2.0;
  const AutocorrSeries a = single_line(0.5, dt, 129);
  const SpectrumSeries s = spectrum(a);
  const double bin = 2.0 * std::numbers::pi * kHbar / (257.0 * dt);
  CHECK(s.energies.front() == 0.0);
  CHECK(s.energies.back() < std::numbers::pi * kHbar / dt);
  CHECK(s.size() == 129);
  CHECK(s.energies[1] == doctest::Approx(bin));
  SpectrumOptions w;
  w.window = std::make_pair(0.25, 0.75);
  const SpectrumSeries sw = spectrum(a, w);
  CHECK(sw.energies.front() >= 0.25);
  CHECK(sw.energies.back() < 0.75);
  w.window = std::make_pair(0.3, 0.3);
  CHECK_THROWS_AS(spectrum(a, w), std::invalid_argument);
  SpectrumOptions raw;
  raw.normalize = false;
  raw.tau_fs.reset();
  CHECK_FALSE(spectrum(a, raw).normalized);
  raw.tau_fs = -1.0;
  CHECK_THROWS_AS(spectrum(a, raw), std::invalid_argument);
  AutocorrSeries uneven = a;
  uneven.times[3] += 0.1;
  CHECK_THROWS_AS(spectrum(uneven), std::invalid_argument);
}

TEST_CASE("the cosine taper broadens the line") {
  const AutocorrSeries a = single_line(1.0, 0.5, 1025);
  SpectrumOptions with_d;
  with_d.use_d = true;
  const SpectrumSeries s0 = spectrum(a);
  const SpectrumSeries s1 = spectrum(a, with_d);
  REQUIRE(s0.size() == s1.size());
  CHECK(tvd(s0, s1) > 0.0);
  CHECK(fwhm(s1) >= fwhm(s0));
}

TEST_CASE("total variation distance") {
  const std::vector<double> p{1.0, 0.0};
  const std::vector<double> q{0.0, 1.0};
  const std::vector<double> h{0.5, 0.5};
  CHECK(tvd(p, q) == 1.0);
  CHECK(tvd(p, h) == 0.5);
  CHECK(tvd(h, h) == 0.0);
  const std::vector<double> r{0.2, 0.3, 0.5};
  const std::vector<double> t{0.3, 0.3, 0.4};
  CHECK(tvd(r, t) == doctest::Approx(0.1));
  CHECK_THROWS_AS(tvd(p, r), std::invalid_argument);
  SpectrumSeries a{{0.0, 1.0}, {0.5, 0.5}, true};
  SpectrumSeries b{{0.0, 1.5}, {0.5, 0.5}, true};
  CHECK_THROWS_AS(tvd(a, b), std::invalid_argument);
}

TEST_CASE("sampling primitives") {
  Rng r1 = make_rng(42, 3);
  Rng r2 = make_rng(42, 3);
  Rng r3 = make_rng(42, 4);
  const auto x1 = r1();
  CHECK(x1 == r2());
  CHECK(x1 != r3());
  Rng rng = make_rng(1);
  CHECK(binomial(100, 0.0, rng) == 0);
  CHECK(binomial(100, 1.0, rng) == 100);
  CHECK(binomial(100, 1.5, rng) == 100);
  CHECK(binomial(0, 0.5, rng) == 0);
  const std::vector<double> w{1.0, 0.0, 3.0};
  const auto c = multinomial(w, 400000, rng);
  CHECK(c[0] + c[1] + c[2] == 400000);
  CHECK(c[1] == 0);
  CHECK(static_cast<double>(c[0]) / 400000.0 == doctest::Approx(0.25).epsilon(0.02));
  const std::vector<double> neg{1.0, -1.0};
  CHECK_THROWS_AS(multinomial(neg, 10, rng), std::invalid_argument);
}

TEST_CASE("sampled estimates are deterministic and converge") {
  const AutocorrSeries a = single_line(0.7, 1.0, 200);
  const AutocorrSeries s1 = sample_autocorr(a, 1000, 5);
  const AutocorrSeries s2 = sample_autocorr(a, 1000, 5);
  const AutocorrSeries s3 = sample_autocorr(a, 1000, 6);
  CHECK(s1.values == s2.values);
  CHECK(s1.values != s3.values);
  const AutocorrSeries big = sample_autocorr(a, 10000000, 5);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(big.values[i] - a.values[i]));
  CHECK(worst < 2e-3);
  CHECK_THROWS_AS(sample_autocorr(a, 0, 1), std::invalid_argument);

  const SpectrumSeries s = spectrum(a);
  const SpectrumSeries d1 = sample_spectrum_direct(s, 5000, 9);
  CHECK(d1.intensities == sample_spectrum_direct(s, 5000, 9).intensities);
  CHECK(tvd(sample_spectrum_direct(s, 10000000, 9), s) < 0.01);
}

TEST_CASE("sustained crossings") {
  const std::vector<std::uint64_t> grid{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> curve{0.9, 0.5, 0.3, 0.6, 0.3, 0.2, 0.25, 0.1, 0.05, 0.05};
  const std::vector<double> th{0.4, 0.35, 0.1, 0.01};
  const auto c = sustained_crossings(grid, curve, th, 3);
  CHECK(c[0] == std::optional<std::uint64_t>{5});
  CHECK(c[1] == std::optional<std::uint64_t>{5});
  CHECK(c[2] == std::nullopt);  // only two points below 0.1
  CHECK(c[3] == std::nullopt);
  const auto c1 = sustained_crossings(grid, curve, th, 1);
  CHECK(c1[0] == std::optional<std::uint64_t>{3});
  CHECK(c1[2] == std::optional<std::uint64_t>{9});
  CHECK_THROWS_AS(sustained_crossings(grid, curve, th, 0), std::invalid_argument);
}

TEST_CASE("median over seeds") {
  auto scan = [](std::optional<std::uint64_t> x) {
    ShotScan s;
    s.crossings = {x};
    return s;
  };
  const std::vector<ShotScan> odd{scan(5), scan(std::nullopt), scan(3)};
  CHECK(median_crossings(odd)[0] == std::optional<std::uint64_t>{5});
  const std::vector<ShotScan> even{scan(5), scan(std::nullopt), scan(3), scan(9)};
  CHECK(median_crossings(even)[0] == std::optional<std::uint64_t>{5});
  const std::vector<ShotScan> unmet{scan(5), scan(std::nullopt), scan(std::nullopt), scan(3)};
  CHECK(median_crossings(unmet)[0] == std::optional<std::uint64_t>{5});
  const std::vector<ShotScan> mostly{scan(std::nullopt), scan(std::nullopt), scan(3)};
  CHECK(median_crossings(mostly)[0] == std::nullopt);
  CHECK(median_crossings({}).empty());
}

TEST_CASE("shot scan") {
  const AutocorrSeries a = single_line(0.7, 1.0, 200);
  const auto grid = linear_grid(1000, 20000, 1000);
  const std::vector<double> th{0.2, 0.05};
  for (auto mode : {SamplingMode::Direct, SamplingMode::Autocorr}) {
    const ShotScan s = shots_scan(a, mode, grid, th, 3, 4);
    CHECK(s.mode == mode);
    CHECK(s.tvd.size() == grid.size());
    CHECK(s.tvd.front() > s.tvd.back());
    const ShotScan again = shots_scan(a, mode, grid, th, 3, 4);
    CHECK(again.tvd == s.tvd);
    CHECK(s.crossings == sustained_crossings(grid, s.tvd, th, 3));
  }
  const std::vector<std::uint64_t> bad{10, 5};
  CHECK_THROWS_AS(shots_scan(a, SamplingMode::Direct, bad, th, 3, 4), std::invalid_argument);
  CHECK(parse_sampling_mode("autocorr") == SamplingMode::Autocorr);
  CHECK_THROWS_AS(parse_sampling_mode("tomography"), std::invalid_argument);
}

TEST_CASE("shot grids") {
  CHECK(linear_grid(1000, 5000, 1000) == std::vector<std::uint64_t>{1000, 2000, 3000, 4000, 5000});
  CHECK(linear_grid(1000, 300000, 1000).size() == 300);
  CHECK_THROWS_AS(linear_grid(0, 10, 1), std::invalid_argument);
  const auto g = log_grid(1000, 1000000, 4);
  CHECK(g.front() == 1000);
  CHECK(g.back() == 1000000);
  CHECK(g.size() == 13);
  CHECK(std::is_sorted(g.begin(), g.end()));
}
