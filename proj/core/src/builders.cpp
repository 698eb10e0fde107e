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

#include "vibronic/builders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "vibronic/wavepacket.hpp"

namespace vibronic {

namespace {

constexpr int kS1 = 0;
constexpr int kS2 = 1;

double phase(double energy, double tau) { return -energy * tau / kHbar; }
double rx_angle(double energy, double tau) { return 2.0 * energy * tau / kHbar; }
double pow2(int i) { return std::ldexp(1.0, i); }

void check_layout(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout) {
  grid.validate();
  layout.validate();
  if (static_cast<std::size_t>(layout.modes) != model.mode_count() ||
      layout.qubits_per_mode != grid.qubits_per_mode) {
    throw CircuitError("qubit layout does not match the model and grid");
  }
}

Circuit reversed(const Circuit& c) {
  Circuit out(c.num_qubits());
  const auto& layers = c.layers();
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) out.push_layer(*it);
  return out;
}

// x^2 (or k_signed^2) network on one register: gate (i, j) carries
// coef * w_i * w_j, single-qubit on the diagonal. n^2 layers.
Circuit quadratic_network(std::span<const int> reg, int num_qubits, double coef, double tau,
                          bool twos_complement, std::optional<Control> extra = std::nullopt) {
  const int n = static_cast<int>(reg.size());
  auto weight = [&](int i) {
    return (twos_complement && i == n - 1) ? -pow2(i) : pow2(i);
  };
  Circuit c(num_qubits);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = phase(coef * weight(i) * weight(j), tau);
      if (a == 0.0) continue;
      Gate g = i == j ? Gate::u1(reg[static_cast<std::size_t>(j)], a)
                      : Gate::cu1(reg[static_cast<std::size_t>(i)], reg[static_cast<std::size_t>(j)], a);
      if (extra) g = g.controlled(*extra);
      c.push(std::move(g));
    }
  }
  return c;
}

// coef[s] x_l x_m on branch s: n^2 layers of controlled phases.
Circuit cross_network(const QubitLayout& layout, std::size_t l, std::size_t m,
                      std::array<double, 2> coef, double tau,
                      std::optional<Branch> only = std::nullopt) {
  const int n = layout.qubits_per_mode;
  const int e = layout.electronic();
  Circuit c(layout.total_qubits());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int qi = layout.mode_qubit(static_cast<int>(l), i);
      const int qj = layout.mode_qubit(static_cast<int>(m), j);
      const double a1 = phase(coef[kS1] * pow2(i + j), tau);
      const double a2 = phase(coef[kS2] * pow2(i + j), tau);
      std::vector<Gate> layer;
      if (only) {
        const double a = *only == Branch::S1 ? a1 : a2;
        if (a != 0.0) layer.push_back(Gate::cu1(qi, qj, a).controlled({e, *only == Branch::S2}));
      } else if (a1 == a2) {
        if (a1 != 0.0) layer.push_back(Gate::cu1(qi, qj, a1));
      } else {
        if (a1 != 0.0) layer.push_back(Gate::cu1(qi, qj, a1).controlled({e, false}));
        if (a2 != 0.0) layer.push_back(Gate::cu1(qi, qj, a2).controlled({e, true}));
      }
      c.push_layer(std::move(layer));
    }
  }
  return c;
}

// U1(phi_S2) X U1(phi_S1) X on the electronic qubit.
Circuit constant_block(const QubitLayout& layout, std::array<double, 2> constant, double tau) {
  const int e = layout.electronic();
  const double p1 = phase(constant[kS1], tau);
  const double p2 = phase(constant[kS2], tau);
  Circuit c(layout.total_qubits());
  if (p2 != 0.0) c.push(Gate::u1(e, p2));
  if (p1 != 0.0) {
    c.push(Gate::x(e));
    c.push(Gate::u1(e, p1));
    c.push(Gate::x(e));
  }
  return c;
}

Circuit linear_block(const QubitLayout& layout, const std::array<std::vector<double>, 2>& lin,
                     double tau, std::optional<Branch> only = std::nullopt) {
  const int e = layout.electronic();
  std::vector<Gate> layer;
  for (int k = 0; k < layout.modes; ++k) {
    for (int i = 0; i < layout.qubits_per_mode; ++i) {
      const int q = layout.mode_qubit(k, i);
      const double a1 = phase(lin[kS1][static_cast<std::size_t>(k)] * pow2(i), tau);
      const double a2 = phase(lin[kS2][static_cast<std::size_t>(k)] * pow2(i), tau);
      if (only) {
        const double a = *only == Branch::S1 ? a1 : a2;
        if (a != 0.0) layer.push_back(Gate::u1(q, a).controlled({e, *only == Branch::S2}));
      } else if (a1 == a2) {
        if (a1 != 0.0) layer.push_back(Gate::u1(q, a1));
      } else {
        if (a1 != 0.0) layer.push_back(Gate::u1(q, a1).controlled({e, false}));
        if (a2 != 0.0) layer.push_back(Gate::u1(q, a2).controlled({e, true}));
      }
    }
  }
  Circuit c(layout.total_qubits());
  c.push_layer(std::move(layer));
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> cross_pairs(const DiagonalPolynomial& poly) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& x : poly.cross) pairs.emplace_back(x.l, x.m);
  return pairs;
}

Circuit diagonal_block(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                       double tau) {
  const auto poly = diagonal_polynomial(model, grid);
  Circuit c(layout.total_qubits());
  c.append(constant_block(layout, poly.constant, tau));
  c.append(linear_block(layout, poly.linear, tau));

  Circuit quad(layout.total_qubits());
  for (int k = 0; k < layout.modes; ++k) {
    const auto reg = layout.mode_register(k);
    quad.overlay(quadratic_network(reg, layout.total_qubits(),
                                   poly.quadratic[static_cast<std::size_t>(k)], tau, false));
  }
  c.append(quad);

  const auto pairs = cross_pairs(poly);
  for (const auto& group : schedule_pairs(pairs)) {
    Circuit g(layout.total_qubits());
    for (std::size_t p : group) {
      const auto& x = poly.cross[p];
      g.overlay(cross_network(layout, x.l, x.m, x.coef, tau));
    }
    c.append(g);
  }
  return c;
}

// Rotation C m + B l + D l m about X on the electronic qubit, from bits l, m:
// CRx(a)(m) CNOT(l->m) CRx(b)(m) CNOT(l->m) CRx(g)(l) gives
// (a + b) m + (b + g) l - 2 b l m.
std::vector<Gate> offdiag_unit(int ql, int qm, int e, double B, double C, double D) {
  const double beta = -0.5 * D;
  const double alpha = C + 0.5 * D;
  const double gamma = B + 0.5 * D;
  return {Gate::crx(qm, e, alpha), Gate::cnot(ql, qm), Gate::crx(qm, e, beta), Gate::cnot(ql, qm),
          Gate::crx(ql, e, gamma)};
}

Circuit offdiag_pair(const QubitLayout& layout, const CouplingPolynomial::Cross& x, double tau,
                     bool expand) {
  const int n = layout.qubits_per_mode;
  const int e = layout.electronic();
  Circuit c(layout.total_qubits());
  if (x.coef == 0.0 && x.linear_l == 0.0 && x.linear_m == 0.0) return c;
  const int l = static_cast<int>(x.l);
  const int m = static_cast<int>(x.m);
  if (expand) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double D = rx_angle(x.coef * pow2(i + j), tau);
        const double B = j == 0 ? rx_angle(x.linear_l * pow2(i), tau) : 0.0;
        const double C = i == 0 ? rx_angle(x.linear_m * pow2(j), tau) : 0.0;
        for (auto& g : offdiag_unit(layout.mode_qubit(l, i), layout.mode_qubit(m, j), e, B, C, D)) {
          c.push(std::move(g));
        }
      }
    }
    return c;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double D = rx_angle(x.coef * pow2(i + j), tau);
      if (D != 0.0) c.push(Gate::ccrx(layout.mode_qubit(l, i), layout.mode_qubit(m, j), e, D));
    }
  }
  for (int i = 0; i < n; ++i) {
    const double B = rx_angle(x.linear_l * pow2(i), tau);
    if (B != 0.0) c.push(Gate::crx(layout.mode_qubit(l, i), e, B));
  }
  for (int j = 0; j < n; ++j) {
    const double C = rx_angle(x.linear_m * pow2(j), tau);
    if (C != 0.0) c.push(Gate::crx(layout.mode_qubit(m, j), e, C));
  }
  return c;
}

// Everything in V_off except the constant offset.
Circuit coupling_block(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                       double tau) {
  const auto poly = coupling_polynomial(model, grid);
  const int e = layout.electronic();
  Circuit c(layout.total_qubits());
  if (poly.coupling_mode) {
    const int k = static_cast<int>(*poly.coupling_mode);
    for (int i = 0; i < layout.qubits_per_mode; ++i) {
      const double a = rx_angle(poly.lambda_linear * pow2(i), tau);
      if (a != 0.0) c.push(Gate::crx(layout.mode_qubit(k, i), e, a));
    }
  }
  for (const auto& x : poly.cross) c.append(offdiag_pair(layout, x, tau, true));
  return c;
}

double offset_angle(const VibronicModel& model, const GridSpec& grid, double tau) {
  return rx_angle(coupling_polynomial(model, grid).constant, tau);
}

// Places the offset Rx into a layer where the electronic qubit is idle.
void merge_offset(Circuit& c, std::size_t layer, int electronic, double angle) {
  if (angle == 0.0) return;
  if (c.depth() == 0) {
    c.push(Gate::rx(electronic, angle));
    return;
  }
  c.merge_into_layer(layer, Gate::rx(electronic, angle));
}

}  // namespace

// ---------------------------------------------------------------------------

DiagonalPolynomial diagonal_polynomial(const VibronicModel& model, const GridSpec& grid) {
  grid.validate();
  const double q0 = grid.q_min;
  const double h = grid.spacing();
  const std::size_t d = model.mode_count();
  DiagonalPolynomial p;
  p.constant = {-model.delta(), model.delta()};
  p.linear[kS1].assign(d, 0.0);
  p.linear[kS2].assign(d, 0.0);
  p.quadratic.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    const auto& m = model.mode(k);
    p.quadratic[k] = 0.5 * m.omega * h * h;
    for (int s : {kS1, kS2}) {
      p.constant[static_cast<std::size_t>(s)] += 0.5 * m.omega * q0 * q0;
      p.linear[static_cast<std::size_t>(s)][k] += m.omega * q0 * h;
      if (m.is_tuning()) {
        const double kappa = s == kS1 ? *m.kappa1 : *m.kappa2;
        p.constant[static_cast<std::size_t>(s)] += kappa * q0;
        p.linear[static_cast<std::size_t>(s)][k] += kappa * h;
      }
    }
  }
  for (const auto& t : model.bilinear_diag()) {
    const std::array<double, 2> g{t.gamma1, t.gamma2};
    for (std::size_t s = 0; s < 2; ++s) {
      p.constant[s] += g[s] * q0 * q0;
      p.linear[s][t.l] += g[s] * q0 * h;
      p.linear[s][t.m] += g[s] * q0 * h;
    }
    p.cross.push_back({t.l, t.m, {g[0] * h * h, g[1] * h * h}});
  }
  return p;
}

CouplingPolynomial coupling_polynomial(const VibronicModel& model, const GridSpec& grid) {
  grid.validate();
  const double q0 = grid.q_min;
  const double h = grid.spacing();
  CouplingPolynomial p;
  p.coupling_mode = model.coupling_mode();
  if (p.coupling_mode) {
    p.constant += model.lambda() * q0;
    p.lambda_linear = model.lambda() * h;
  }
  for (const auto& t : model.bilinear_off()) {
    p.constant += t.mu * q0 * q0;
    p.cross.push_back({t.l, t.m, t.mu * h * h, t.mu * q0 * h, t.mu * q0 * h});
  }
  return p;
}

QubitLayout layout_for(const VibronicModel& model, const GridSpec& grid) {
  return QubitLayout{static_cast<int>(model.mode_count()), grid.qubits_per_mode, false, 0};
}

// ---------------------------------------------------------------------------
// State preparation

std::vector<std::vector<double>> state_prep_angles(std::span<const double> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw std::invalid_argument("state preparation needs 2^n amplitudes with n >= 1");
  }
  double norm = 0.0;
  for (double a : amplitudes) {
    if (!std::isfinite(a) || a < 0.0) {
      throw std::invalid_argument("state preparation amplitudes must be finite and nonnegative");
    }
    norm += a * a;
  }
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("state preparation amplitudes are not normalized (norm^2 = " +
                                std::to_string(norm) + ")");
  }
  const int n = std::countr_zero(size);
  std::vector<std::vector<double>> angles(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int t = n - 1 - j;
    const std::size_t blocks = std::size_t{1} << j;
    std::vector<double> upper(blocks, 0.0);
    std::vector<double> total(blocks, 0.0);
    for (std::size_t idx = 0; idx < size; ++idx) {
      const std::size_t w = idx >> (t + 1);
      const double p = amplitudes[idx] * amplitudes[idx];
      total[w] += p;
      if ((idx >> t) & 1U) upper[w] += p;
    }
    std::vector<double> alpha(blocks, 0.0);
    for (std::size_t w = 0; w < blocks; ++w) {
      if (total[w] > 0.0) alpha[w] = 2.0 * std::asin(std::sqrt(std::clamp(upper[w] / total[w], 0.0, 1.0)));
    }
    auto& theta = angles[static_cast<std::size_t>(j)];
    theta.assign(blocks, 0.0);
    const double scale = 1.0 / static_cast<double>(blocks);
    for (std::size_t k = 0; k < blocks; ++k) {
      const std::size_t g = k ^ (k >> 1);
      for (std::size_t w = 0; w < blocks; ++w) {
        const double sign = (std::popcount(g & w) & 1) ? -1.0 : 1.0;
        theta[k] += scale * sign * alpha[w];
      }
    }
  }
  return angles;
}

Circuit build_state_prep(std::span<const double> amplitudes, std::span<const int> qubits,
                         int num_qubits) {
  const auto angles = state_prep_angles(amplitudes);
  const int n = static_cast<int>(angles.size());
  if (static_cast<int>(qubits.size()) != n) {
    throw std::invalid_argument("state preparation register size does not match amplitudes");
  }
  Circuit c(num_qubits);
  for (int j = 0; j < n; ++j) {
    const int t = n - 1 - j;
    const int target = qubits[static_cast<std::size_t>(t)];
    const auto& theta = angles[static_cast<std::size_t>(j)];
    const std::size_t blocks = theta.size();
    for (std::size_t k = 0; k < blocks; ++k) {
      // Zero angles are kept: the layer count is part of the construction.
      c.push(Gate::ry(target, theta[k]));
      if (j == 0) continue;
      const int bit = k + 1 < blocks ? std::countr_zero(k + 1) : j - 1;
      c.push(Gate::cnot(qubits[static_cast<std::size_t>(t + 1 + bit)], target));
    }
  }
  return c;
}

Circuit build_state_prep(std::span<const double> amplitudes) {
  const int n = std::countr_zero(amplitudes.size());
  std::vector<int> q(static_cast<std::size_t>(n));
  std::iota(q.begin(), q.end(), 0);
  return build_state_prep(amplitudes, q, n);
}

Circuit build_initial_state(const VibronicModel& model, const GridSpec& grid,
                            const QubitLayout& layout) {
  check_layout(model, grid, layout);
  const auto g = ground_state_amplitudes(grid);
  Circuit c(layout.total_qubits());
  c.push(Gate::x(layout.electronic()));
  for (int k = 0; k < layout.modes; ++k) {
    const auto reg = layout.mode_register(k);
    c.overlay(build_state_prep(g, reg, layout.total_qubits()));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Propagator pieces

Circuit build_Udiag(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                    double tau) {
  check_layout(model, grid, layout);
  return diagonal_block(model, grid, layout, tau);
}

Circuit build_Udiag_branch(const VibronicModel& model, const GridSpec& grid,
                           const QubitLayout& layout, double tau, Branch branch) {
  check_layout(model, grid, layout);
  const auto poly = diagonal_polynomial(model, grid);
  const int e = layout.electronic();
  const Control on{e, branch == Branch::S2};
  const auto s = static_cast<std::size_t>(branch);
  Circuit c(layout.total_qubits());

  const double p = phase(poly.constant[s], tau);
  if (p != 0.0) {
    if (branch == Branch::S2) {
      c.push(Gate::u1(e, p));
    } else {
      c.push(Gate::x(e));
      c.push(Gate::u1(e, p));
      c.push(Gate::x(e));
    }
  }
  c.append(linear_block(layout, poly.linear, tau, branch));
  Circuit quad(layout.total_qubits());
  for (int k = 0; k < layout.modes; ++k) {
    const auto reg = layout.mode_register(k);
    quad.overlay(quadratic_network(reg, layout.total_qubits(),
                                   poly.quadratic[static_cast<std::size_t>(k)], tau, false, on));
  }
  c.append(quad);
  for (const auto& group : schedule_pairs(cross_pairs(poly))) {
    Circuit g(layout.total_qubits());
    for (std::size_t i : group) {
      const auto& x = poly.cross[i];
      g.overlay(cross_network(layout, x.l, x.m, x.coef, tau, branch));
    }
    c.append(g);
  }
  return c;
}

Circuit build_Uc(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                 double tau) {
  check_layout(model, grid, layout);
  Circuit c(layout.total_qubits());
  const double off = offset_angle(model, grid, tau);
  if (off != 0.0) c.push(Gate::rx(layout.electronic(), off));
  c.append(coupling_block(model, grid, layout, tau));
  return c;
}

Circuit build_UK(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                 double tau) {
  check_layout(model, grid, layout);
  const double dp = 2.0 * std::numbers::pi / (static_cast<double>(grid.points()) * grid.spacing());
  Circuit c(layout.total_qubits());
  for (int k = 0; k < layout.modes; ++k) {
    const auto reg = layout.mode_register(k);
    const double coef = 0.5 * model.mode(static_cast<std::size_t>(k)).omega * dp * dp;
    c.overlay(quadratic_network(reg, layout.total_qubits(), coef, tau, true));
  }
  return c;
}

Circuit build_qft(std::span<const int> qubits, int num_qubits, bool inverse) {
  const int n = static_cast<int>(qubits.size());
  if (n < 1) throw std::invalid_argument("QFT needs at least one qubit");
  auto q = [&](int i) { return qubits[static_cast<std::size_t>(i)]; };
  Circuit c(num_qubits);
  for (int t = n - 1; t >= 0; --t) {
    c.push(Gate::h(q(t)));
    for (int r = t - 1; r >= 0; --r) c.push(Gate::cu1(q(r), q(t), std::numbers::pi / pow2(t - r)));
  }
  for (int i = 0; i < n / 2; ++i) c.push(Gate::swap(q(i), q(n - 1 - i)));
  return inverse ? c.inverse() : c;
}

Circuit build_qft(int n, bool inverse) {
  std::vector<int> q(static_cast<std::size_t>(n));
  std::iota(q.begin(), q.end(), 0);
  return build_qft(q, n, inverse);
}

Circuit build_mode_qft(const QubitLayout& layout, bool inverse) {
  layout.validate();
  Circuit c(layout.total_qubits());
  for (int k = 0; k < layout.modes; ++k) {
    const auto reg = layout.mode_register(k);
    c.overlay(build_qft(reg, layout.total_qubits(), inverse));
  }
  return c;
}

Circuit build_timestep(const VibronicModel& model, const GridSpec& grid, const QubitLayout& layout,
                       double dt, SplitOrder order) {
  check_layout(model, grid, layout);
  const int e = layout.electronic();
  Circuit step(layout.total_qubits());
  Circuit qft = build_mode_qft(layout, false);
  Circuit iqft = build_mode_qft(layout, true);

  if (order == SplitOrder::PotentialFirst) {
    const double h = 0.5 * dt;
    const Circuit diag = diagonal_block(model, grid, layout, h);
    const Circuit coup = coupling_block(model, grid, layout, h);
    const double off = offset_angle(model, grid, h);
    // The offset is part of V_off; the QFTs never touch the electronic qubit.
    merge_offset(qft, 0, e, off);
    merge_offset(iqft, iqft.depth() - 1, e, off);
    step.append(diag);
    step.append(coup);
    step.append(qft);
    step.append(build_UK(model, grid, layout, dt));
    step.append(iqft);
    step.append(reversed(coup));
    step.append(reversed(diag));
  } else {
    const double h = 0.5 * dt;
    const Circuit kin = build_UK(model, grid, layout, h);
    merge_offset(qft, 0, e, offset_angle(model, grid, dt));
    step.append(kin);
    step.append(iqft);
    step.append(diagonal_block(model, grid, layout, dt));
    step.append(coupling_block(model, grid, layout, dt));
    step.append(qft);
    step.append(kin);
  }
  return step;
}

Circuit build_evolution(const VibronicModel& model, const GridSpec& grid,
                        const QubitLayout& layout, double dt, int steps, SplitOrder order) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  const Circuit step = build_timestep(model, grid, layout, dt, order);
  Circuit c(layout.total_qubits());
  if (order == SplitOrder::KineticFirst) c.append(build_mode_qft(layout, false));
  for (int s = 0; s < steps; ++s) c.append(step);
  if (order == SplitOrder::KineticFirst) c.append(build_mode_qft(layout, true));
  return c;
}

// ---------------------------------------------------------------------------
// Second-order terms

Circuit build_bilinear_diag(const GridSpec& grid, const QubitLayout& layout, std::size_t l,
                            std::size_t m, double gamma1, double gamma2, double tau) {
  grid.validate();
  layout.validate();
  if (l == m) throw std::invalid_argument("bilinear term needs two distinct modes");
  if (l >= static_cast<std::size_t>(layout.modes) || m >= static_cast<std::size_t>(layout.modes)) {
    throw std::invalid_argument("bilinear mode index out of range");
  }
  const double q0 = grid.q_min;
  const double h = grid.spacing();
  const std::array<double, 2> g{gamma1, gamma2};
  Circuit c(layout.total_qubits());
  c.append(cross_network(layout, l, m, {g[0] * h * h, g[1] * h * h}, tau));
  std::array<std::vector<double>, 2> lin;
  for (std::size_t s = 0; s < 2; ++s) {
    lin[s].assign(static_cast<std::size_t>(layout.modes), 0.0);
    lin[s][l] = g[s] * q0 * h;
    lin[s][m] = g[s] * q0 * h;
  }
  c.append(linear_block(layout, lin, tau));
  c.append(constant_block(layout, {g[0] * q0 * q0, g[1] * q0 * q0}, tau));
  return c;
}

Circuit build_bilinear_offdiag(const GridSpec& grid, const QubitLayout& layout, std::size_t l,
                               std::size_t m, double mu, double tau, bool expand) {
  grid.validate();
  layout.validate();
  if (l == m) throw std::invalid_argument("bilinear term needs two distinct modes");
  if (l >= static_cast<std::size_t>(layout.modes) || m >= static_cast<std::size_t>(layout.modes)) {
    throw std::invalid_argument("bilinear mode index out of range");
  }
  const double q0 = grid.q_min;
  const double h = grid.spacing();
  Circuit c(layout.total_qubits());
  const double off = rx_angle(mu * q0 * q0, tau);
  if (off != 0.0) c.push(Gate::rx(layout.electronic(), off));
  c.append(offdiag_pair(layout, {l, m, mu * h * h, mu * q0 * h, mu * q0 * h}, tau, expand));
  return c;
}

std::vector<Gate> decompose_ccrx(const Gate& g) {
  if (g.kind != GateKind::Rx || g.controls.size() != 2 || !g.controls[0].on_one ||
      !g.controls[1].on_one) {
    throw CircuitError("decompose_ccrx expects an Rx with two positive controls");
  }
  return offdiag_unit(g.controls[0].qubit, g.controls[1].qubit, g.targets[0], 0.0, 0.0, g.theta);
}

std::vector<std::vector<std::size_t>> schedule_pairs(
    std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  // Shortest span first, then first-fit.
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  auto span_of = [&](std::size_t i) {
    const auto [a, b] = pairs[i];
    return std::make_pair(a > b ? a - b : b - a, std::min(a, b));
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return span_of(x) < span_of(y); });

  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::vector<std::size_t>> used;
  for (std::size_t i : order) {
    const auto [a, b] = pairs[i];
    bool placed = false;
    for (std::size_t g = 0; g < groups.size() && !placed; ++g) {
      auto& u = used[g];
      if (std::find(u.begin(), u.end(), a) == u.end() && std::find(u.begin(), u.end(), b) == u.end()) {
        groups[g].push_back(i);
        u.push_back(a);
        u.push_back(b);
        placed = true;
      }
    }
    if (!placed) {
      groups.push_back({i});
      used.push_back({a, b});
    }
  }
  return groups;
}

}  // namespace vibronic
