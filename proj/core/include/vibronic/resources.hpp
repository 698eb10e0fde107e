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
#include <string>
#include <string_view>
#include <vector>

#include "vibronic/model.hpp"

namespace vibronic {

enum class ModelClass { Linear4D, Quadratic24D };
enum class Variant { A, B };

std::string_view to_string(ModelClass c);
std::string_view to_string(Variant v);
ModelClass parse_model_class(std::string_view text);  // "4d" or "24d"
Variant parse_variant(std::string_view text);         // "A" or "B"

struct AssayInput {
  int d = 4;
  int n = 4;
  std::uint64_t n_t = 512;
  Variant variant = Variant::A;
  ModelClass model_class = ModelClass::Linear4D;
};

/// One named row of the depth accounting.
struct AssayRow {
  std::string item;
  std::uint64_t depth = 0;
};

struct AssayReport {
  AssayInput input;
  std::uint64_t N_i = 0;       // state preparation
  std::uint64_t N_p = 0;       // one QFT block
  std::uint64_t per_step = 0;  // one Trotter step
  std::uint64_t N_t = 0;       // time evolution
  std::uint64_t N_m = 0;       // readout QFT on the time register (variant B)
  std::uint64_t total = 0;
  int m = 0;
  int qubits_state = 0;
  int qubits_total = 0;
  std::vector<AssayRow> breakdown;

  std::string to_text() const;
};

/// Closed-form depths and qubit counts. Throws std::invalid_argument on
/// d, n, n_t < 1 or on variant B with n_t not a power of two.
AssayReport assay(const AssayInput& input);

/// QFT depth on n qubits: n^2/2 + n, minus 1/2 for odd n.
std::uint64_t qft_depth(int n);
/// Per-step Trotter depth of the given model class.
std::uint64_t step_depth(ModelClass c, int n);

struct BuilderCheck {
  std::string item;
  std::uint64_t built = 0;
  std::uint64_t formula = 0;
  bool ok() const { return built == formula; }
};

struct BuilderComparison {
  std::vector<BuilderCheck> checks;
  bool ok() const;
  std::string to_text() const;
};

/// Builds the state preparation, one QFT block and one time step with the
/// circuit builders and compares their depths with the closed forms. The
/// 4D class uses the 4D preset; the 24D class uses structural_model_24d().
/// Only n is taken from `input`.
BuilderComparison verify_against_builder(const AssayInput& input);

/// The 24-mode template with every coupling slot filled by a nonzero
/// synthetic value so that no gate is dropped. For depth accounting only.
VibronicModel structural_model_24d();

}  // namespace vibronic
