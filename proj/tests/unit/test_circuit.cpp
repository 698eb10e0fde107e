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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "vibronic/builders.hpp"
#include "vibronic/circuit.hpp"
#include "vibronic/emulator.hpp"

using namespace vibronic;

namespace {

using Matrix = std::vector<cplx>;  // column-major

Matrix one_gate(const Gate& g, int qubits) {
  Circuit c(qubits);
  c.push(g);
  return unitary(c);
}

double max_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void check_unitary(const Matrix& u, std::size_t dim) {
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      cplx s = 0.0;
      for (std::size_t r = 0; r < dim; ++r) s += std::conj(u[a * dim + r]) * u[b * dim + r];
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

std::vector<cplx> random_state(int qubits, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(std::size_t{1} << qubits);
  double s = 0.0;
  for (auto& x : v) {
    x = {nd(rng), nd(rng)};
    s += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

const cplx I{0.0, 1.0};

}  // namespace

TEST_CASE("single-qubit gate matrices") {
  const double t = 0.7;
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_diff(one_gate(Gate::h(0), 1), {r, r, r, -r}) < 1e-15);
  CHECK(max_diff(one_gate(Gate::x(0), 1), {0, 1, 1, 0}) < 1e-15);
  CHECK(max_diff(one_gate(Gate::s(0), 1), {1, 0, 0, I}) < 1e-15);
  CHECK(max_diff(one_gate(Gate::u1(0, t), 1), {1, 0, 0, std::exp(I * t)}) < 1e-15);
  const double c = std::cos(t / 2);
  const double s = std::sin(t / 2);
  CHECK(max_diff(one_gate(Gate::rx(0, t), 1), {c, -I * s, -I * s, c}) < 1e-15);
  CHECK(max_diff(one_gate(Gate::ry(0, t), 1), {c, s, -s, c}) < 1e-15);
}

TEST_CASE("controlled gates") {
  // CNOT control 0, target 1: |01> (index 1) -> |11> (index 3).
  const Matrix cnot = one_gate(Gate::cnot(0, 1), 2);
  CHECK(cnot[0 * 4 + 0] == cplx(1.0));
  CHECK(cnot[1 * 4 + 3] == cplx(1.0));
  CHECK(cnot[2 * 4 + 2] == cplx(1.0));
  CHECK(cnot[3 * 4 + 1] == cplx(1.0));
  // Swap exchanges |01> and |10>.
  const Matrix sw = one_gate(Gate::swap(0, 1), 2);
  CHECK(sw[1 * 4 + 2] == cplx(1.0));
  CHECK(sw[2 * 4 + 1] == cplx(1.0));
  // CCRx acts on the target only when both controls are 1.
  const double t = 1.1;
  const Matrix ccrx = one_gate(Gate::ccrx(0, 1, 2, t), 3);
  Matrix expected(64, 0.0);
  for (std::size_t j = 0; j < 8; ++j) expected[j * 8 + j] = 1.0;
  const double c = std::cos(t / 2);
  const double s = std::sin(t / 2);
  expected[3 * 8 + 3] = c;
  expected[3 * 8 + 7] = -I * s;
  expected[7 * 8 + 3] = -I * s;
  expected[7 * 8 + 7] = c;
  CHECK(max_diff(ccrx, expected) < 1e-15);
  // A control on |0>.
  const Gate g = Gate::x(1).controlled({0, false});
  const Matrix m = one_gate(g, 2);
  CHECK(m[0 * 4 + 2] == cplx(1.0));
  CHECK(m[1 * 4 + 1] == cplx(1.0));
  CHECK(g.name() == "CNOT");
  CHECK(Gate::ccrx(0, 1, 2, 0.1).name() == "CCRx");
}

TEST_CASE("CCRx expansion") {
  const Gate g = Gate::ccrx(0, 1, 2, 0.9);
  Circuit c(3);
  for (const auto& x : decompose_ccrx(g)) c.push(x);
  CHECK(decompose_ccrx(g).size() == 5);
  CHECK(max_diff(unitary(c), one_gate(g, 3)) < 1e-14);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(Gate::cnot(1, 1).validate(3), CircuitError);
  CHECK_THROWS_AS(Gate::h(3).validate(3), CircuitError);
  CHECK_THROWS_AS(Gate::rx(0, std::nan("")).validate(1), CircuitError);
  CHECK_NOTHROW(Gate::ccrx(0, 1, 2, 0.3).validate(3));
  Circuit c(2);
  CHECK_THROWS_AS(c.push(Gate::h(2)), CircuitError);
  CHECK_THROWS_AS(c.push_layer({Gate::h(0), Gate::x(0)}), CircuitError);
  CHECK_THROWS_AS((QubitLayout{0, 2}.validate()), CircuitError);
}

TEST_CASE("layer rules") {
  CHECK(can_share_layer(Gate::h(0), Gate::x(1)));
  CHECK_FALSE(can_share_layer(Gate::h(0), Gate::x(0)));
  CHECK(can_share_layer(Gate::cu1(0, 1, 0.2), Gate::cu1(1, 2, 0.3)));
  CHECK(can_share_layer(Gate::u1(0, 0.2), Gate::s(0)));
  CHECK_FALSE(can_share_layer(Gate::cnot(0, 1), Gate::u1(1, 0.3)));

  Circuit c(3);
  c.push_layer({Gate::h(0), Gate::h(1)});
  c.push(Gate::cnot(0, 2));
  c.push_layer({});
  CHECK(c.depth() == 2);
  CHECK(c.gate_count() == 3);
  c.merge_into_layer(1, Gate::x(1));
  CHECK(c.depth() == 2);
  CHECK_THROWS_AS(c.merge_into_layer(1, Gate::x(2)), CircuitError);
  Circuit d(3);
  d.push(Gate::x(1));
  d.push(Gate::x(1));
  d.push(Gate::x(1));
  c.overlay(d, 2);
  CHECK(c.depth() == 5);
  CHECK(c.asap_depth() <= c.depth());
}

TEST_CASE("inverse undoes the circuit") {
  Circuit c(3);
  c.push_layer({Gate::h(0), Gate::ry(1, 0.4)});
  c.push(Gate::ccrx(0, 1, 2, 0.8));
  c.push_layer({Gate::u1(2, 0.3), Gate::cu1(0, 1, -0.2), Gate::s(1)});
  c.push(Gate::swap(0, 2));
  c.push(Gate::rx(1, 1.3).controlled({2, false}));
  Circuit both = c;
  both.append(c.inverse());
  const Matrix u = unitary(both);
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) CHECK(std::abs(u[a * 8 + b] - (a == b ? 1.0 : 0.0)) < 1e-14);
  }
  check_unitary(unitary(c), 8);
  CHECK(max_diff(unitary(c.inverse().inverse()), unitary(c)) < 1e-14);
}

TEST_CASE("application is linear") {
  Circuit c(4);
  c.push_layer({Gate::h(0), Gate::ry(3, 0.4)});
  c.push(Gate::cnot(0, 1));
  c.push(Gate::ccrx(1, 3, 2, 0.8));
  c.push_layer({Gate::u1(2, 0.3), Gate::cu1(0, 3, 0.9)});
  const auto a = random_state(4, 1);
  const auto b = random_state(4, 2);
  const cplx alpha{0.3, -0.4};
  const cplx beta{0.5, 0.2};
  std::vector<cplx> mix(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mix[i] = alpha * a[i] + beta * b[i];
  auto ua = a;
  auto ub = b;
  vibronic::apply(c, ua);
  vibronic::apply(c, ub);
  vibronic::apply(c, mix);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(mix[i] - (alpha * ua[i] + beta * ub[i])) < 1e-14);
}

TEST_CASE("extra controls") {
  const auto psi = random_state(3, 3);
  auto with = psi;
  const Control ctl{2, true};
  vibronic::apply(Gate::ry(0, 0.6), with, std::span<const Control>(&ctl, 1));
  auto direct = psi;
  vibronic::apply(Gate::ry(0, 0.6).controlled(ctl), direct);
  for (std::size_t i = 0; i < psi.size(); ++i) CHECK(std::abs(with[i] - direct[i]) < 1e-15);
}

TEST_CASE("QFT is the unitary DFT with a positive exponent") {
  for (int n = 1; n <= 6; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    const Matrix u = unitary(build_qft(n));
    double worst = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t col = 0; col < dim; ++col) {
        const double ph = 2.0 * std::numbers::pi * static_cast<double>(r * col) / static_cast<double>(dim);
        const cplx want = std::exp(I * ph) / std::sqrt(static_cast<double>(dim));
        worst = std::max(worst, std::abs(u[col * dim + r] - want));
      }
    }
    CHECK(worst < 1e-13);
    Circuit round = build_qft(n);
    round.append(build_qft(n, true));
    const Matrix id = unitary(round);
    for (std::size_t a = 0; a < dim; ++a) CHECK(std::abs(id[a * dim + a] - 1.0) < 1e-13);
  }
}

TEST_CASE("QFT depth") {
  for (int n = 2; n <= 10; ++n) {
    const int expected = n % 2 == 0 ? n * n / 2 + n : (n * n + 2 * n - 1) / 2;
    CHECK(build_qft(n).depth() == static_cast<std::size_t>(expected));
  }
}

TEST_CASE("memory budget") {
  CHECK_NOTHROW(check_budget(10, 1 << 20));
  CHECK_THROWS_AS(check_budget(20, 1 << 20), BudgetError);
  try {
    zero_state(40, std::uint64_t{1} << 30);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(e.qubits() == 40);
    CHECK(e.required_bytes() == (std::uint64_t{16} << 40));
    CHECK(e.budget_bytes() == (std::uint64_t{1} << 30));
  }
  const auto z = zero_state(3);
  CHECK(z[0] == cplx(1.0));
  CHECK(probabilities(z)[0] == 1.0);
}

TEST_CASE("qubit layout") {
  const QubitLayout l{4, 3, true, 2};
  CHECK(l.mode_qubit(0, 0) == 9);
  CHECK(l.mode_qubit(3, 2) == 2);
  CHECK(l.electronic() == 12);
  CHECK(l.ancilla_qubit() == 13);
  CHECK(l.time_qubit(1) == 15);
  CHECK(l.total_qubits() == 16);
  CHECK(l.mode_register(1) == std::vector<int>{6, 7, 8});
}
