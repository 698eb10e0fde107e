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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vibronic/circuit.hpp"
#include "vibronic/grid.hpp"
#include "vibronic/model.hpp"
#include "vibronic/soft.hpp"

namespace vibronic {

// Circuits act on register integers x_k, while the Hamiltonian is written in
// Q_k = q_min + spacing * x_k. The polynomials below carry the expansion.

/// V_s = constant[s] + sum_k linear[s][k] x_k + sum_k quadratic[k] x_k^2
///       + sum_pairs cross[p].coef[s] x_l x_m
struct DiagonalPolynomial {
  struct Cross {
    std::size_t l = 0;
    std::size_t m = 0;
    std::array<double, 2> coef{};
  };
  std::array<double, 2> constant{};
  std::array<std::vector<double>, 2> linear;
  std::vector<double> quadratic;
  std::vector<Cross> cross;
};

/// V_off = constant + lambda_linear x_c
///         + sum_pairs (coef x_l x_m + linear_l x_l + linear_m x_m)
/// with x_c the coupling-mode register.
struct CouplingPolynomial {
  struct Cross {
    std::size_t l = 0;
    std::size_t m = 0;
    double coef = 0.0;
    double linear_l = 0.0;
    double linear_m = 0.0;
  };
  double constant = 0.0;
  std::optional<std::size_t> coupling_mode;
  double lambda_linear = 0.0;
  std::vector<Cross> cross;
};

DiagonalPolynomial diagonal_polynomial(const VibronicModel& model, const GridSpec& grid);
CouplingPolynomial coupling_polynomial(const VibronicModel& model, const GridSpec& grid);

QubitLayout layout_for(const VibronicModel& model, const GridSpec& grid);

// --- state preparation -----------------------------------------------------

/// Ry angles of each uniformly controlled block: angles[j] has 2^j entries,
/// block j targeting register bit n-1-j.
std::vector<std::vector<double>> state_prep_angles(std::span<const double> amplitudes);

/// Loads real nonnegative normalized amplitudes (index bit i on qubits[i])
/// into a register starting from |0...0>. Depth 2^(n+1) - 3.
Circuit build_state_prep(std::span<const double> amplitudes, std::span<const int> qubits,
                         int num_qubits);
/// Same on qubits 0..n-1 of an n-qubit circuit.
Circuit build_state_prep(std::span<const double> amplitudes);

/// X on the electronic qubit (S2) plus the Gaussian of every mode, all in
/// parallel: depth 2^(n+1) - 3.
Circuit build_initial_state(const VibronicModel& model, const GridSpec& grid,
                            const QubitLayout& layout);

// --- propagator pieces (each applies exp(-i O tau / hbar)) ----------------

/// Diagonal potential of both branches: constant (4 layers), linear (1),
/// quadratic (n^2) and any same-state bilinear groups (n^2 each).
Circuit build_Udiag(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                    double tau);
/// The diagonal potential of one branch only, controlled on the electronic
/// qubit; the other branch is left untouched.
Circuit build_Udiag_branch(const VibronicModel& model, const GridSpec& grid,
                           const QubitLayout& layout, double tau, Branch branch);
/// Off-diagonal coupling: optional offset Rx (own layer), n controlled Rx
/// from the coupling register, then the expanded bilinear units.
Circuit build_Uc(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                 double tau);
/// Kinetic phases in the momentum basis, all modes in parallel: n^2 layers.
Circuit build_UK(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                 double tau);

/// QFT |j> -> N^-1/2 sum_k e^{+2 pi i j k / N} |k> on `qubits` (bit i on
/// qubits[i]), swaps included. Depth n^2/2 + n (even n), n^2/2 + n - 1/2 (odd).
Circuit build_qft(std::span<const int> qubits, int num_qubits, bool inverse = false);
Circuit build_qft(int n, bool inverse = false);
/// QFT on every mode register in parallel.
Circuit build_mode_qft(const QubitLayout& layout, bool inverse = false);

/// One Trotter step.
///   PotentialFirst: acts on position-basis states.
///   KineticFirst:   acts on momentum-basis states (UK QFT^-1 V QFT UK).
Circuit build_timestep(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                       double dt, SplitOrder order = SplitOrder::PotentialFirst);
/// `steps` timesteps acting on position-basis states; for KineticFirst the
/// product is wrapped in QFT ... QFT^-1.
Circuit build_evolution(const VibronicModel& model, const GridSpec& grid,
                        const QubitLayout& layout, double dt, int steps,
                        SplitOrder order = SplitOrder::PotentialFirst);

// --- second-order terms ------------------------------------------------------

/// exp(-i gamma_s Q_l Q_m tau / hbar) on branch s: n^2 controlled-U1 layers
/// followed by the affine linear and constant layers.
Circuit build_bilinear_diag(const GridSpec& grid, const QubitLayout& layout, std::size_t l,
                            std::size_t m, double gamma1, double gamma2, double tau);
/// exp(-i mu Q_l Q_m X tau / hbar): n^2 CCRx on the electronic qubit (or their
/// 5-gate expansions when `expand`), with the affine pieces included.
Circuit build_bilinear_offdiag(const GridSpec& grid, const QubitLayout& layout, std::size_t l,
                               std::size_t m, double mu, double tau, bool expand = true);

/// CCRx(theta) as CRx(t/2) CNOT CRx(-t/2) CNOT CRx(t/2).
std::vector<Gate> decompose_ccrx(const Gate& ccrx);

/// Partition of pair indices into groups with no shared mode (greedy
/// first-fit, shortest mode-index span first). Pairs of one group run in parallel.
std::vector<std::vector<std::size_t>> schedule_pairs(
    std::span<const std::pair<std::size_t, std::size_t>> pairs);

}  // namespace vibronic
