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
#include <stdexcept>
#include <string>
#include <vector>

namespace vibronic {

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GateKind { H, X, S, U1, Ry, Rx, Swap };

struct Control {
  int qubit = 0;
  bool on_one = true;  // false: fires when the control is |0>

  bool operator==(const Control&) const = default;
};

/// One gate with any number of controls. CNOT is X with one control, CCRx is
/// Rx with two, and so on.
///   U1(t) = diag(1, e^{it}),  Rx(t) = exp(-i t X / 2),  Ry(t) = exp(-i t Y / 2),
///   S = diag(1, i).
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;  // two entries for Swap, one otherwise
  std::vector<Control> controls;
  double theta = 0.0;

  static Gate h(int q);
  static Gate x(int q);
  static Gate s(int q);
  static Gate u1(int q, double theta);
  static Gate ry(int q, double theta);
  static Gate rx(int q, double theta);
  static Gate swap(int a, int b);
  static Gate cnot(int control, int target);
  static Gate cu1(int control, int target, double theta);
  static Gate crx(int control, int target, double theta);
  static Gate ccrx(int c1, int c2, int target, double theta);

  /// Copy with one more control.
  Gate controlled(Control c) const;
  Gate inverse() const;

  /// Diagonal in the computational basis (U1 and S, whatever the controls).
  bool is_diagonal() const { return kind == GateKind::U1 || kind == GateKind::S; }
  bool has_angle() const;
  std::vector<int> qubits() const;
  bool touches(int q) const;
  /// Conventional name: "H", "CNOT", "CU1", "CCRx", "SWAP", ...
  std::string name() const;

  /// Throws CircuitError on repeated qubits, non-finite angles or targets
  /// outside [0, num_qubits).
  void validate(int num_qubits) const;

  bool operator==(const Gate&) const = default;
};

/// Two gates may share a layer if they act on disjoint qubits or are both
/// diagonal. Either way they commute, so the order inside a layer is
/// irrelevant.
bool can_share_layer(const Gate& a, const Gate& b);

/// Register assignment for the vibronic circuits.
///   mode k, bit i (weight 2^i)  -> qubit (d - 1 - k) n + i
///   electronic (|0> = S1)       -> qubit d n
///   Hadamard-test ancilla       -> qubit d n + 1 (when present)
///   time register bit j         -> following qubits (when present)
/// With this order the statevector index of a system state equals the flat
/// Wavepacket index.
struct QubitLayout {
  int modes = 1;
  int qubits_per_mode = 2;
  bool ancilla = false;
  int time_qubits = 0;

  int mode_qubit(int k, int bit) const { return (modes - 1 - k) * qubits_per_mode + bit; }
  std::vector<int> mode_register(int k) const;
  int electronic() const { return modes * qubits_per_mode; }
  int ancilla_qubit() const;
  int time_qubit(int j) const;
  int system_qubits() const { return modes * qubits_per_mode + 1; }
  int total_qubits() const { return system_qubits() + (ancilla ? 1 : 0) + time_qubits; }

  void validate() const;
  bool operator==(const QubitLayout&) const = default;
};

/// Gate list partitioned into layers by the builders. Depth is the number of
/// layers; replaying the layers in order replays the gates in order.
class Circuit {
 public:
  explicit Circuit(int num_qubits = 0);

  int num_qubits() const { return num_qubits_; }
  const std::vector<std::vector<Gate>>& layers() const { return layers_; }

  /// Appends one layer. Empty layers are dropped; every pair of gates must
  /// satisfy can_share_layer.
  void push_layer(std::vector<Gate> layer);
  /// Appends a gate as a layer of its own.
  void push(Gate g);
  /// Appends all layers of other (which must fit in this register).
  void append(const Circuit& other);
  /// Merges other's layers into this circuit's layers starting at `offset`,
  /// appending layers as needed. Used to run independent blocks side by side.
  void overlay(const Circuit& other, std::size_t offset = 0);
  /// Adds g to existing layer `index` (checked for compatibility).
  void merge_into_layer(std::size_t index, Gate g);

  Circuit inverse() const;

  std::size_t depth() const { return layers_.size(); }
  std::size_t gate_count() const;
  /// Depth of the greedy as-soon-as-possible schedule that only parallelizes
  /// gates on disjoint qubits. Informational.
  std::size_t asap_depth() const;
  std::vector<Gate> gates() const;

  /// One gate per line: layer, name, angle, controls, targets.
  std::string to_text() const;

 private:
  int num_qubits_;
  std::vector<std::vector<Gate>> layers_;
};

}  // namespace vibronic
