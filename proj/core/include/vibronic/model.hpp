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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vibronic {

/// Reduced Planck constant in eV*fs. All phases are E * t / kHbar with E in eV
/// and t in fs.
inline constexpr double kHbar = 0.6582119569;

/// Raised for malformed or physically inconsistent model input.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Irreducible representations of D2h.
enum class Symmetry { Ag, B1g, B2g, B3g, Au, B1u, B2u, B3u };

std::string_view to_string(Symmetry s);
Symmetry parse_symmetry(std::string_view text);
/// Direct product in D2h (the group is abelian, so every product is an irrep).
Symmetry product(Symmetry a, Symmetry b);

/// Diabatic electronic states. The value is the electronic qubit's bit.
enum class Branch : int { S1 = 0, S2 = 1 };

struct ModeParams {
  std::string label;
  double omega = 0.0;  // eV
  std::optional<double> kappa1;  // eV, S1 linear coupling (tuning modes only)
  std::optional<double> kappa2;  // eV, S2 linear coupling (tuning modes only)
  Symmetry symmetry = Symmetry::Ag;

  bool is_tuning() const { return kappa1.has_value(); }
  bool operator==(const ModeParams&) const = default;
};

/// gamma1 * Q_l * Q_m on S1 and gamma2 * Q_l * Q_m on S2.
struct BilinearDiagTerm {
  std::size_t l = 0;
  std::size_t m = 0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  bool operator==(const BilinearDiagTerm&) const = default;
};

/// mu * Q_l * Q_m in the S1/S2 off-diagonal block.
struct BilinearOffTerm {
  std::size_t l = 0;
  std::size_t m = 0;
  double mu = 0.0;
  bool operator==(const BilinearOffTerm&) const = default;
};

/// Diabatic two-state vibronic coupling Hamiltonian
///
///   H = K + diag(V_S1, V_S2) + V_off X
///   V_S1 = -delta + sum_j kappa1_j Q_j + sum_k omega_k Q_k^2 / 2 + sum gamma1 Q_l Q_m
///   V_S2 = +delta + sum_j kappa2_j Q_j + sum_k omega_k Q_k^2 / 2 + sum gamma2 Q_l Q_m
///   V_off = lambda Q_c + sum mu Q_l Q_m
///
/// where Q_c is the single B1g coupling mode. Immutable once constructed; the
/// constructor enforces every invariant.
class VibronicModel {
 public:
  VibronicModel(std::string name, std::vector<ModeParams> modes, double lambda,
                double delta, std::vector<BilinearDiagTerm> bilinear_diag = {},
                std::vector<BilinearOffTerm> bilinear_off = {});

  const std::string& name() const { return name_; }
  std::span<const ModeParams> modes() const { return modes_; }
  const ModeParams& mode(std::size_t k) const { return modes_.at(k); }
  std::size_t mode_count() const { return modes_.size(); }
  double lambda() const { return lambda_; }
  double delta() const { return delta_; }
  double hbar() const { return kHbar; }
  std::span<const BilinearDiagTerm> bilinear_diag() const { return bilinear_diag_; }
  std::span<const BilinearOffTerm> bilinear_off() const { return bilinear_off_; }

  /// Index of the B1g mode carrying lambda, if the model has one.
  std::optional<std::size_t> coupling_mode() const { return coupling_mode_; }
  std::optional<std::size_t> find_mode(std::string_view label) const;

  /// Diagonal potential of `branch` at coordinates q (one entry per mode).
  double potential(Branch branch, std::span<const double> q) const;
  /// Off-diagonal coupling V_off(q).
  double coupling(std::span<const double> q) const;
  /// Harmonic ground-state reference: sum_k omega_k Q_k^2 / 2.
  double harmonic_potential(std::span<const double> q) const;

  /// Sum of omega_k / 2, the analytic zero-point energy of the reference.
  double harmonic_zpe() const;

  /// A model restricted to the named modes. Bilinear terms that reference a
  /// dropped mode are dropped; lambda is kept only if the coupling mode is kept.
  VibronicModel subset(std::span<const std::string> labels) const;

  /// Same parameters with lambda, all kappas and all bilinear terms set to
  /// zero; useful as an uncoupled reference.
  VibronicModel uncoupled() const;

  bool operator==(const VibronicModel&) const = default;

 private:
  std::string name_;
  std::vector<ModeParams> modes_;
  double lambda_;
  double delta_;
  std::vector<BilinearDiagTerm> bilinear_diag_;
  std::vector<BilinearOffTerm> bilinear_off_;
  std::optional<std::size_t> coupling_mode_;
};

/// Parses the JSON model format (see README). Throws ModelError.
VibronicModel load_model(std::string_view json_text);
/// Serializes to the same JSON format; load_model(to_json(m)) == m.
std::string to_json(const VibronicModel& model);

/// Built-in presets: "pyrazine-4d" (the four-mode linear model) and
/// "pyrazine-2d" (nu6a + nu10a reduced from it).
VibronicModel preset(std::string_view name);
std::vector<std::string> preset_names();

/// Resolves a preset name, or failing that reads a JSON file from disk.
VibronicModel resolve_model(std::string_view name_or_path);

/// Path of a file shipped in the data directory (e.g. the 24-mode template).
std::string data_path(std::string_view file);

}  // namespace vibronic
