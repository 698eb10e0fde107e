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

#include "vibronic/resources.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "vibronic/builders.hpp"
#include "vibronic/wavepacket.hpp"

namespace vibronic {

namespace {

// The 24D step schedules same-symmetry pairs in this many sequential groups
// and runs every B1g-product pair as its own 5-gate unit per bit pair.
constexpr std::uint64_t kG2Groups = 6;
constexpr std::uint64_t kG4Pairs = 29;

std::uint64_t sq(std::uint64_t x) { return x * x; }

}  // namespace

std::string_view to_string(ModelClass c) { return c == ModelClass::Linear4D ? "4d" : "24d"; }
std::string_view to_string(Variant v) { return v == Variant::A ? "A" : "B"; }

ModelClass parse_model_class(std::string_view text) {
  if (text == "4d" || text == "4D") return ModelClass::Linear4D;
  if (text == "24d" || text == "24D") return ModelClass::Quadratic24D;
  throw std::invalid_argument("unknown model class '" + std::string(text) + "' (expected 4d or 24d)");
}

Variant parse_variant(std::string_view text) {
  if (text == "A" || text == "a") return Variant::A;
  if (text == "B" || text == "b") return Variant::B;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "' (expected A or B)");
}

std::uint64_t qft_depth(int n) {
  if (n < 1) throw std::invalid_argument("qft_depth needs n >= 1");
  const auto u = static_cast<std::uint64_t>(n);
  // n^2/2 + n - (n odd)/2
  return (sq(u) - (u & 1U)) / 2 + u;
}

std::uint64_t step_depth(ModelClass c, int n) {
  if (n < 1) throw std::invalid_argument("step_depth needs n >= 1");
  const auto u = static_cast<std::uint64_t>(n);
  const std::uint64_t odd = u & 1U;
  if (c == ModelClass::Linear4D) return 4 * sq(u) + 4 * u + 10 - odd;
  return 155 * sq(u) + 3 * u + 5 - odd;
}

AssayReport assay(const AssayInput& in) {
  if (in.d < 1 || in.n < 1 || in.n_t < 1) throw std::invalid_argument("d, n and n_t must be >= 1");
  if (in.n > 30) throw std::invalid_argument("n too large for a depth assay");
  if (in.variant == Variant::B && !std::has_single_bit(in.n_t)) {
    throw std::invalid_argument("variant B needs n_t to be a power of two");
  }
  AssayReport r;
  r.input = in;
  const auto n = static_cast<std::uint64_t>(in.n);
  r.N_i = (std::uint64_t{1} << (n + 1)) - 3;
  r.N_p = qft_depth(in.n);
  r.per_step = step_depth(in.model_class, in.n);
  const std::uint64_t steps = r.per_step * (in.n_t - 1);
  r.N_t = in.model_class == ModelClass::Quadratic24D ? 2 * r.N_p + steps : steps;
  r.qubits_state = in.d * in.n + 1;

  r.breakdown.push_back({"state preparation", r.N_i});
  if (in.model_class == ModelClass::Quadratic24D) {
    r.breakdown.push_back({"QFT in and out of the momentum frame (2 N_p)", 2 * r.N_p});
    r.breakdown.push_back({"per step: QFT pair", 2 * r.N_p});
    r.breakdown.push_back({"per step: same-symmetry bilinear, " + std::to_string(kG2Groups) + " groups x n^2",
                           kG2Groups * sq(n)});
    r.breakdown.push_back({"per step: off-diagonal bilinear, " + std::to_string(kG4Pairs) + " pairs x 5 n^2",
                           kG4Pairs * 5 * sq(n)});
    r.breakdown.push_back({"per step: kinetic, remaining diagonal and coupling terms",
                           r.per_step - 2 * r.N_p - (kG2Groups + 5 * kG4Pairs) * sq(n)});
  } else {
    r.breakdown.push_back({"per step: QFT pair", 2 * r.N_p});
    r.breakdown.push_back({"per step: potential, coupling and kinetic terms", r.per_step - 2 * r.N_p});
  }
  r.breakdown.push_back({"time evolution (" + std::to_string(in.n_t - 1) + " steps)", r.N_t});

  if (in.variant == Variant::A) {
    r.total = r.N_i + r.N_t + 2;
    r.qubits_total = r.qubits_state + 1;
    r.breakdown.push_back({"Hadamard test H gates", 2});
  } else {
    r.m = std::countr_zero(in.n_t);
    r.N_m = r.m == 0 ? 0 : qft_depth(r.m);
    r.total = r.N_i + r.N_t + r.N_m;
    r.qubits_total = r.qubits_state + r.m;
    r.breakdown.push_back({"readout QFT on m = " + std::to_string(r.m) + " qubits", r.N_m});
  }
  return r;
}

std::string AssayReport::to_text() const {
  std::ostringstream os;
  os << "model " << to_string(input.model_class) << "  d " << input.d << "  n " << input.n
     << "  n_t " << input.n_t << "  variant " << to_string(input.variant) << "\n";
  for (const auto& row : breakdown) os << "  " << row.item << ": " << row.depth << "\n";
  os << "N_i " << N_i << "\nN_p " << N_p << "\nper_step " << per_step << "\nN_t " << N_t;
  if (input.variant == Variant::B) os << "\nm " << m << "\nN_m " << N_m;
  os << "\ntotal " << total << "\nqubits_state " << qubits_state << "\nqubits_total " << qubits_total
     << "\n";
  return os.str();
}

bool BuilderComparison::ok() const {
  for (const auto& c : checks) {
    if (!c.ok()) return false;
  }
  return !checks.empty();
}

std::string BuilderComparison::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.ok() ? "ok   " : "FAIL ") << c.item << ": built " << c.built << ", formula " << c.formula
       << "\n";
  }
  return os.str();
}

VibronicModel structural_model_24d() {
  const VibronicModel t = preset("pyrazine-24d");
  std::vector<ModeParams> modes(t.modes().begin(), t.modes().end());
  for (auto& m : modes) {
    if (m.is_tuning() && *m.kappa1 == 0.0) {
      m.kappa1 = 0.011;
      m.kappa2 = -0.013;
    }
  }
  std::vector<BilinearDiagTerm> diag(t.bilinear_diag().begin(), t.bilinear_diag().end());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    diag[i].gamma1 = 0.001 * static_cast<double>(i + 1);
    diag[i].gamma2 = -0.0007 * static_cast<double>(i + 2);
  }
  std::vector<BilinearOffTerm> off(t.bilinear_off().begin(), t.bilinear_off().end());
  for (std::size_t i = 0; i < off.size(); ++i) off[i].mu = 0.0005 * static_cast<double>(i + 1);
  return VibronicModel("pyrazine-24d-structural", std::move(modes), t.lambda(), t.delta(),
                       std::move(diag), std::move(off));
}

BuilderComparison verify_against_builder(const AssayInput& in) {
  if (in.n < 2 || in.n > 8) throw std::invalid_argument("builder check supports 2 <= n <= 8");
  GridSpec grid;
  grid.qubits_per_mode = in.n;
  const bool wide = in.model_class == ModelClass::Quadratic24D;
  const VibronicModel model = wide ? structural_model_24d() : preset("pyrazine-4d");
  const QubitLayout layout = layout_for(model, grid);

  BuilderComparison out;
  const std::string tag = " (n=" + std::to_string(in.n) + ")";
  const auto amps = ground_state_amplitudes(grid);
  out.checks.push_back({"state preparation" + tag, build_state_prep(amps).depth(),
                        (std::uint64_t{1} << (in.n + 1)) - 3});
  out.checks.push_back({"QFT block" + tag, build_qft(in.n).depth(), qft_depth(in.n)});
  const SplitOrder order = wide ? SplitOrder::KineticFirst : SplitOrder::PotentialFirst;
  const Circuit step = build_timestep(model, grid, layout, 0.25, order);
  out.checks.push_back({std::string(wide ? "24d" : "4d") + " time step" + tag, step.depth(),
                        step_depth(in.model_class, in.n)});
  return out;
}

}  // namespace vibronic
