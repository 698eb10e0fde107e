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
#include <random>
#include <span>
#include <vector>

namespace vibronic {

using Rng = std::mt19937_64;

/// Generator for (seed, stream); distinct streams are decorrelated through
/// std::seed_seq so parallel work items can draw independently.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Binomial draw; p is clamped to [0, 1] and the degenerate ends are exact.
std::uint64_t binomial(std::uint64_t n, double p, Rng& rng);

/// Multinomial counts over `weights` (normalized internally) by sequential
/// conditional binomials.
std::vector<std::uint64_t> multinomial(std::span<const double> weights, std::uint64_t n, Rng& rng);

}  // namespace vibronic
