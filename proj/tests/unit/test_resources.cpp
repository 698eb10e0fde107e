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

#include <cstdint>
#include <stdexcept>

#include "vibronic/resources.hpp"

using namespace vibronic;

namespace {

AssayReport run(ModelClass c, int n, std::uint64_t nt, Variant v) {
  const int d = c == ModelClass::Linear4D ? 4 : 24;
  return assay({d, n, nt, v, c});
}

}  // namespace

TEST_CASE("4D table") {
  const AssayReport a = run(ModelClass::Linear4D, 4, 512, Variant::A);
  CHECK(a.N_i == 29);
  CHECK(a.N_p == 12);
  CHECK(a.per_step == 90);
  CHECK(a.N_t == 45990);
  CHECK(a.total == 46021);
  CHECK(a.qubits_state == 17);
  CHECK(a.qubits_total == 18);
  const AssayReport b = run(ModelClass::Linear4D, 4, 512, Variant::B);
  CHECK(b.total == 46068);
  CHECK(b.m == 9);
  CHECK(b.N_m == 49);
  CHECK(b.qubits_total == 26);

  const AssayReport a5 = run(ModelClass::Linear4D, 5, 1024, Variant::A);
  CHECK(a5.N_i == 61);
  CHECK(a5.N_t == 131967);
  CHECK(a5.total == 132030);
  CHECK(run(ModelClass::Linear4D, 5, 1024, Variant::B).total == 132088);
}

TEST_CASE("24D table") {
  const AssayReport a = run(ModelClass::Quadratic24D, 4, 512, Variant::A);
  CHECK(a.N_t == 1275991);
  CHECK(a.total == 1276022);
  CHECK(a.qubits_state == 97);
  const AssayReport b = run(ModelClass::Quadratic24D, 4, 512, Variant::B);
  CHECK(b.total == 1276069);
  CHECK(b.qubits_total == 106);

  const AssayReport a5 = run(ModelClass::Quadratic24D, 5, 1024, Variant::A);
  CHECK(a5.N_t == 3983596);
  CHECK(a5.total == 3983659);
  CHECK(a5.qubits_state == 121);
  const AssayReport b5 = run(ModelClass::Quadratic24D, 5, 1024, Variant::B);
  CHECK(b5.total == 3983717);
  CHECK(b5.qubits_total == 131);
}

TEST_CASE("closed forms") {
  for (int n = 2; n <= 5; ++n) {
    const std::uint64_t odd = n % 2;
    CHECK(step_depth(ModelClass::Linear4D, n) == 4u * n * n + 4u * n + 10u - odd);
    CHECK(step_depth(ModelClass::Quadratic24D, n) == 155u * n * n + 3u * n + 5u - odd);
  }
  CHECK(qft_depth(4) == 12);
  CHECK(qft_depth(5) == 17);
  CHECK(qft_depth(9) == 49);
  CHECK(qft_depth(10) == 60);
}

TEST_CASE("properties over a parameter sweep") {
  for (auto c : {ModelClass::Linear4D, ModelClass::Quadratic24D}) {
    for (int n = 2; n <= 8; ++n) {
      std::uint64_t prev_total = 0;
      for (int k = 1; k <= 12; ++k) {
        const std::uint64_t nt = std::uint64_t{1} << k;
        const AssayReport a = run(c, n, nt, Variant::A);
        const AssayReport b = run(c, n, nt, Variant::B);
        const int d = a.input.d;
        CHECK(b.total - a.total == b.N_m - 2);
        CHECK(b.m == k);
        CHECK(b.N_m == qft_depth(k));
        CHECK(a.N_i == (std::uint64_t{2} << n) - 3);
        CHECK(a.N_p == qft_depth(n));
        CHECK(a.per_step == step_depth(c, n));
        const std::uint64_t frame = c == ModelClass::Quadratic24D ? 2 * a.N_p : 0;
        CHECK(a.N_t == (nt - 1) * a.per_step + frame);
        CHECK(a.total == a.N_i + a.N_t + 2);
        CHECK(a.qubits_state == d * n + 1);
        CHECK(a.qubits_total == d * n + 2);
        CHECK(b.qubits_total == d * n + 1 + k);
        CHECK(a.total > prev_total);
        prev_total = a.total;
        std::uint64_t sum = 0;
        for (const auto& row : a.breakdown) {
          // Per-step and frame rows are already inside the time-evolution row.
          if (row.item.rfind("per step", 0) != 0 && row.item.rfind("QFT in and out", 0) != 0) {
            sum += row.depth;
          }
        }
        CHECK(sum == a.total);
      }
      if (n > 2) CHECK(run(c, n, 64, Variant::A).total > run(c, n - 1, 64, Variant::A).total);
    }
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(assay({4, 0, 512, Variant::A, ModelClass::Linear4D}), std::invalid_argument);
  CHECK_THROWS_AS(assay({0, 4, 512, Variant::A, ModelClass::Linear4D}), std::invalid_argument);
  CHECK_THROWS_AS(assay({4, 4, 0, Variant::A, ModelClass::Linear4D}), std::invalid_argument);
  CHECK_THROWS_AS(assay({4, 4, 500, Variant::B, ModelClass::Linear4D}), std::invalid_argument);
  CHECK_NOTHROW(assay({4, 4, 500, Variant::A, ModelClass::Linear4D}));
  CHECK(parse_model_class("24d") == ModelClass::Quadratic24D);
  CHECK(parse_variant("B") == Variant::B);
  CHECK_THROWS_AS(parse_variant("C"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model_class("12d"), std::invalid_argument);
}

TEST_CASE("closed forms agree with the builders") {
  for (auto c : {ModelClass::Linear4D, ModelClass::Quadratic24D}) {
    for (int n = 2; n <= 6; ++n) {
      const BuilderComparison cmp = verify_against_builder({4, n, 512, Variant::A, c});
      CHECK_MESSAGE(cmp.ok(), cmp.to_text());
      CHECK(cmp.checks.size() == 3);
    }
  }
  const VibronicModel s = structural_model_24d();
  CHECK(s.mode_count() == 24);
  for (const auto& t : s.bilinear_off()) CHECK(t.mu != 0.0);
  for (const auto& t : s.bilinear_diag()) CHECK(t.gamma1 != 0.0);
}

TEST_CASE("report text") {
  const std::string text = run(ModelClass::Linear4D, 4, 512, Variant::B).to_text();
  CHECK(text.find("total 46068") != std::string::npos);
  CHECK(text.find("N_m 49") != std::string::npos);
}
