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

#include "vibronic/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vibronic {

Gate Gate::h(int q) { return {GateKind::H, {q}, {}, 0.0}; }
Gate Gate::x(int q) { return {GateKind::X, {q}, {}, 0.0}; }
Gate Gate::s(int q) { return {GateKind::S, {q}, {}, 0.0}; }
Gate Gate::u1(int q, double theta) { return {GateKind::U1, {q}, {}, theta}; }
Gate Gate::ry(int q, double theta) { return {GateKind::Ry, {q}, {}, theta}; }
Gate Gate::rx(int q, double theta) { return {GateKind::Rx, {q}, {}, theta}; }
Gate Gate::swap(int a, int b) { return {GateKind::Swap, {a, b}, {}, 0.0}; }
Gate Gate::cnot(int c, int t) { return {GateKind::X, {t}, {{c, true}}, 0.0}; }
Gate Gate::cu1(int c, int t, double theta) { return {GateKind::U1, {t}, {{c, true}}, theta}; }
Gate Gate::crx(int c, int t, double theta) { return {GateKind::Rx, {t}, {{c, true}}, theta}; }
Gate Gate::ccrx(int c1, int c2, int t, double theta) {
  return {GateKind::Rx, {t}, {{c1, true}, {c2, true}}, theta};
}

Gate Gate::controlled(Control c) const {
  Gate g = *this;
  g.controls.push_back(c);
  return g;
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::S:
      g.kind = GateKind::U1;
      g.theta = -std::numbers::pi / 2.0;
      break;
    case GateKind::U1:
    case GateKind::Ry:
    case GateKind::Rx:
      g.theta = -theta;
      break;
    default:
      break;
  }
  return g;
}

bool Gate::has_angle() const {
  return kind == GateKind::U1 || kind == GateKind::Ry || kind == GateKind::Rx;
}

std::vector<int> Gate::qubits() const {
  std::vector<int> q = targets;
  for (const auto& c : controls) q.push_back(c.qubit);
  return q;
}

bool Gate::touches(int q) const {
  if (std::find(targets.begin(), targets.end(), q) != targets.end()) return true;
  return std::any_of(controls.begin(), controls.end(), [q](const Control& c) { return c.qubit == q; });
}

std::string Gate::name() const {
  std::string base;
  switch (kind) {
    case GateKind::H: base = "H"; break;
    case GateKind::X: base = controls.size() == 1 ? "NOT" : "X"; break;
    case GateKind::S: base = "S"; break;
    case GateKind::U1: base = "U1"; break;
    case GateKind::Ry: base = "Ry"; break;
    case GateKind::Rx: base = "Rx"; break;
    case GateKind::Swap: base = "SWAP"; break;
  }
  return std::string(controls.size(), 'C') + base;
}

void Gate::validate(int num_qubits) const {
  const std::size_t want = kind == GateKind::Swap ? 2 : 1;
  if (targets.size() != want) throw CircuitError(name() + ": wrong number of targets");
  if (!std::isfinite(theta)) throw CircuitError(name() + ": angle is not finite");
  auto q = qubits();
  for (int v : q) {
    if (v < 0 || v >= num_qubits) {
      throw CircuitError(name() + ": qubit " + std::to_string(v) + " outside register of " +
                         std::to_string(num_qubits));
    }
  }
  std::sort(q.begin(), q.end());
  if (std::adjacent_find(q.begin(), q.end()) != q.end()) {
    throw CircuitError(name() + ": a qubit appears twice among targets and controls");
  }
}

bool can_share_layer(const Gate& a, const Gate& b) {
  if (a.is_diagonal() && b.is_diagonal()) return true;
  for (int q : a.qubits()) {
    if (b.touches(q)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::vector<int> QubitLayout::mode_register(int k) const {
  std::vector<int> r(static_cast<std::size_t>(qubits_per_mode));
  for (int i = 0; i < qubits_per_mode; ++i) r[static_cast<std::size_t>(i)] = mode_qubit(k, i);
  return r;
}

int QubitLayout::ancilla_qubit() const {
  if (!ancilla) throw CircuitError("layout has no ancilla qubit");
  return system_qubits();
}

int QubitLayout::time_qubit(int j) const {
  if (j < 0 || j >= time_qubits) throw CircuitError("time-register index out of range");
  return system_qubits() + (ancilla ? 1 : 0) + j;
}

void QubitLayout::validate() const {
  if (modes < 1) throw CircuitError("layout needs at least one mode");
  if (qubits_per_mode < 1) throw CircuitError("layout needs at least one qubit per mode");
  if (time_qubits < 0) throw CircuitError("negative time-register size");
}

// ---------------------------------------------------------------------------

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw CircuitError("negative qubit count");
}

void Circuit::push_layer(std::vector<Gate> layer) {
  if (layer.empty()) return;
  for (std::size_t i = 0; i < layer.size(); ++i) {
    layer[i].validate(num_qubits_);
    for (std::size_t j = 0; j < i; ++j) {
      if (!can_share_layer(layer[i], layer[j])) {
        throw CircuitError("gates " + layer[j].name() + " and " + layer[i].name() +
                           " overlap and cannot share a layer");
      }
    }
  }
  layers_.push_back(std::move(layer));
}

void Circuit::push(Gate g) { push_layer({std::move(g)}); }

void Circuit::append(const Circuit& other) {
  if (other.num_qubits_ > num_qubits_) throw CircuitError("appended circuit is wider");
  for (const auto& layer : other.layers_) layers_.push_back(layer);
}

void Circuit::merge_into_layer(std::size_t index, Gate g) {
  if (index >= layers_.size()) throw CircuitError("layer index out of range");
  g.validate(num_qubits_);
  for (const auto& h : layers_[index]) {
    if (!can_share_layer(g, h)) {
      throw CircuitError(g.name() + " conflicts with " + h.name() + " in layer " +
                         std::to_string(index));
    }
  }
  layers_[index].push_back(std::move(g));
}

void Circuit::overlay(const Circuit& other, std::size_t offset) {
  if (other.num_qubits_ > num_qubits_) throw CircuitError("overlaid circuit is wider");
  for (std::size_t i = 0; i < other.layers_.size(); ++i) {
    const std::size_t at = offset + i;
    while (layers_.size() <= at) layers_.emplace_back();
    for (const auto& g : other.layers_[i]) merge_into_layer(at, g);
  }
  layers_.erase(std::remove_if(layers_.begin(), layers_.end(),
                               [](const auto& l) { return l.empty(); }),
                layers_.end());
}

Circuit Circuit::inverse() const {
  Circuit inv(num_qubits_);
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    std::vector<Gate> layer;
    layer.reserve(it->size());
    for (auto g = it->rbegin(); g != it->rend(); ++g) layer.push_back(g->inverse());
    inv.layers_.push_back(std::move(layer));
  }
  return inv;
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

std::size_t Circuit::asap_depth() const {
  std::vector<std::size_t> level(static_cast<std::size_t>(num_qubits_), 0);
  std::size_t depth = 0;
  for (const auto& layer : layers_) {
    for (const auto& g : layer) {
      std::size_t at = 0;
      for (int q : g.qubits()) at = std::max(at, level[static_cast<std::size_t>(q)]);
      for (int q : g.qubits()) level[static_cast<std::size_t>(q)] = at + 1;
      depth = std::max(depth, at + 1);
    }
  }
  return depth;
}

std::vector<Gate> Circuit::gates() const {
  std::vector<Gate> out;
  out.reserve(gate_count());
  for (const auto& l : layers_) out.insert(out.end(), l.begin(), l.end());
  return out;
}

std::string Circuit::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "# qubits " << num_qubits_ << " depth " << depth() << " gates " << gate_count() << '\n';
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    for (const auto& g : layers_[i]) {
      os << i << ' ' << g.name() << ' ' << g.theta << " c=";
      for (std::size_t c = 0; c < g.controls.size(); ++c) {
        if (c) os << ',';
        os << (g.controls[c].on_one ? "" : "!") << g.controls[c].qubit;
      }
      os << " t=";
      for (std::size_t t = 0; t < g.targets.size(); ++t) {
        if (t) os << ',';
        os << g.targets[t];
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace vibronic
