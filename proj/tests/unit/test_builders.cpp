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
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vibronic/builders.hpp"
#include "vibronic/emulator.hpp"
#include "vibronic/engine.hpp"
#include "vibronic/resources.hpp"
#include "vibronic/sampling.hpp"
#include "vibronic/signals.hpp"
#include "vibronic/soft.hpp"

using namespace vibronic;

namespace {

const cplx I{0.0, 1.0};

VibronicModel two_mode_model() { return preset("pyrazine-2d"); }

VibronicModel one_mode_model(const std::string& label) {
  const std::vector<std::string> keep{label};
  return preset("pyrazine-4d").subset(keep);
}

std::vector<cplx> run(const Circuit& c, std::vector<cplx> state) {
  vibronic::apply(c, state);
  return state;
}

std::vector<cplx> basis_state(int qubits, std::size_t idx) {
  std::vector<cplx> v(std::size_t{1} << qubits, 0.0);
  v[idx] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("state preparation angles") {
  const double uniform[] = {0.5, 0.5, 0.5, 0.5};
  const auto a = state_prep_angles(uniform);
  REQUIRE(a.size() == 2);
  REQUIRE(a[0].size() == 1);
  REQUIRE(a[1].size() == 2);
  CHECK(a[0][0] == doctest::Approx(std::numbers::pi / 2));
  CHECK(a[1][0] == doctest::Approx(std::numbers::pi / 2));
  CHECK(std::abs(a[1][1]) < 1e-14);

  const double raw[] = {0.1, 0.2, 0.3, 0.4};
  std::vector<double> amps(4);
  const double s = std::sqrt(0.01 + 0.04 + 0.09 + 0.16);
  for (int i = 0; i < 4; ++i) amps[i] = raw[i] / s;
  const auto b = state_prep_angles(amps);
  CHECK(b[0][0] == doctest::Approx(2.301).epsilon(5e-4));
  CHECK(b[1][0] == doctest::Approx(2.034).epsilon(5e-4));
  CHECK(b[1][1] == doctest::Approx(0.1799).epsilon(5e-4));

  const double bad[] = {0.5, 0.5, 0.5};
  CHECK_THROWS(state_prep_angles(bad));
}

TEST_CASE("state preparation reproduces the amplitudes") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 2; n <= 6; ++n) {
    const GridSpec g{n, -5.0, 5.0};
    std::vector<std::vector<double>> cases{ground_state_amplitudes(g)};
    std::vector<double> r(g.points());
    double s = 0.0;
    for (auto& x : r) {
      x = u(rng);
      s += x * x;
    }
    for (auto& x : r) x /= std::sqrt(s);
    cases.push_back(r);
    for (const auto& amps : cases) {
      const Circuit c = build_state_prep(amps);
      CHECK(c.depth() == (std::size_t{2} << n) - 3);
      const auto psi = run(c, zero_state(n));
      for (std::size_t i = 0; i < amps.size(); ++i) CHECK(std::abs(psi[i] - amps[i]) < 1e-10);
    }
  }
}

TEST_CASE("sampled state preparation histogram") {
  const GridSpec g{4, -5.0, 5.0};
  const auto amps = ground_state_amplitudes(g);
  const Circuit c = build_state_prep(amps);
  CHECK(c.depth() == 29);
  const auto p = probabilities(run(c, zero_state(4)));
  Rng rng = make_rng(5);
  const std::uint64_t shots = 1000000;
  const auto counts = multinomial(p, shots, rng);
  std::vector<double> freq(counts.size());
  std::vector<double> exact(amps.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    exact[i] = amps[i] * amps[i];
  }
  CHECK(tvd(freq, exact) < 0.015);
}

TEST_CASE("initial state circuit matches the wavepacket") {
  const VibronicModel m = preset("pyrazine-4d");
  const GridSpec g{3, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  CHECK(layout.total_qubits() == 13);
  const Circuit c = build_initial_state(m, g, layout);
  CHECK(c.depth() == 13);
  const auto psi = run(c, zero_state(layout.total_qubits()));
  const Wavepacket ref = initial_state(m, g);
  for (std::size_t i = 0; i < psi.size(); ++i) CHECK(std::abs(psi[i] - ref.amplitudes()[i]) < 1e-12);
}

TEST_CASE("diagonal potential circuit matches the phase tables") {
  const VibronicModel m = two_mode_model();
  const GridSpec g{3, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  const double tau = 0.37;
  const PropagatorPlan plan(m, g, tau);
  const auto u = unitary(build_Udiag(m, g, layout, tau));
  const std::size_t dim = std::size_t{1} << layout.total_qubits();
  const std::size_t sector = dim / 2;
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const Branch b = j < sector ? Branch::S1 : Branch::S2;
    const double v = plan.potential_table(b)[j % sector];
    worst = std::max(worst, std::abs(u[j * dim + j] - std::exp(-I * v * tau / kHbar)));
  }
  CHECK(worst < 1e-12);
  for (Branch b : {Branch::S1, Branch::S2}) {
    const auto ub = unitary(build_Udiag_branch(m, g, layout, tau, b));
    for (std::size_t j = 0; j < dim; ++j) {
      const bool on = (j >= sector) == (b == Branch::S2);
      const cplx want = on ? std::exp(-I * plan.potential_table(b)[j % sector] * tau / kHbar) : 1.0;
      CHECK(std::abs(ub[j * dim + j] - want) < 1e-12);
    }
  }
}

TEST_CASE("coupling circuit matches the coupling table") {
  const VibronicModel m = two_mode_model();
  const GridSpec g{3, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  const double tau = 0.41;
  const PropagatorPlan plan(m, g, tau);
  const auto u = unitary(build_Uc(m, g, layout, tau));
  const std::size_t dim = std::size_t{1} << layout.total_qubits();
  const std::size_t sector = dim / 2;
  double worst = 0.0;
  for (std::size_t j = 0; j < sector; ++j) {
    const double th = plan.coupling_table()[j] * tau / kHbar;
    worst = std::max(worst, std::abs(u[j * dim + j] - std::cos(th)));
    worst = std::max(worst, std::abs(u[j * dim + j + sector] + I * std::sin(th)));
    worst = std::max(worst, std::abs(u[(j + sector) * dim + j] + I * std::sin(th)));
    worst = std::max(worst, std::abs(u[(j + sector) * dim + j + sector] - std::cos(th)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("kinetic circuit matches the kinetic table") {
  const VibronicModel m = two_mode_model();
  const GridSpec g{3, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  const double tau = 0.29;
  const PropagatorPlan plan(m, g, tau);
  const Circuit c = build_UK(m, g, layout, tau);
  CHECK(c.depth() == 9);
  const auto u = unitary(c);
  const std::size_t dim = std::size_t{1} << layout.total_qubits();
  const std::size_t sector = dim / 2;
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    worst = std::max(worst, std::abs(u[j * dim + j] - std::exp(-I * plan.kinetic_table()[j % sector] * tau / kHbar)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("circuit and split-operator engines agree") {
  for (int d = 1; d <= 2; ++d) {
    for (int n = 2; n <= 4; ++n) {
      for (auto order : {SplitOrder::PotentialFirst, SplitOrder::KineticFirst}) {
        const VibronicModel m = d == 1 ? one_mode_model("nu10a") : two_mode_model();
        const GridSpec g{n, -5.0, 5.0};
        const TimeGrid t = TimeGrid::from_total(20.0, 80, 10);
        const PropagatorPlan plan(m, g, t.dt, order);
        const Propagation soft = propagate(plan, initial_state(m, g), t);
        const CircuitRun circ = emulate_propagation(m, g, t, order);
        REQUIRE(circ.autocorr.size() == soft.autocorr.size());
        double worst = 0.0;
        for (std::size_t i = 0; i < soft.autocorr.size(); ++i) {
          worst = std::max(worst, std::abs(circ.autocorr.values[i] - soft.autocorr.values[i]));
          worst = std::max(worst, std::abs(circ.populations.s2[i] - soft.populations.s2[i]));
        }
        CHECK(worst < 1e-10);
        CHECK(fidelity(circ.final_state, soft.final_state.amplitudes()) == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("one-mode tuning model stays diagonal") {
  const VibronicModel m = one_mode_model("nu6a");
  const GridSpec g{3, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  const Circuit step = build_timestep(m, g, layout, 0.5);
  auto psi = run(build_initial_state(m, g, layout), zero_state(layout.total_qubits()));
  for (int i = 0; i < 20; ++i) vibronic::apply(step, psi);
  double s1 = 0.0;
  for (std::size_t j = 0; j < psi.size() / 2; ++j) s1 += std::norm(psi[j]);
  CHECK(s1 < 1e-24);
}

TEST_CASE("timestep depth") {
  const VibronicModel m = preset("pyrazine-4d");
  const int expected[] = {34, 57, 90, 129};
  for (int n = 2; n <= 5; ++n) {
    const GridSpec g{n, -5.0, 5.0};
    const Circuit c = build_timestep(m, g, layout_for(m, g), 0.1);
    CHECK(c.depth() == static_cast<std::size_t>(expected[n - 2]));
    CHECK(c.depth() == step_depth(ModelClass::Linear4D, n));
  }
}

TEST_CASE("evolution composes steps") {
  const VibronicModel m = two_mode_model();
  const GridSpec g{2, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  for (auto order : {SplitOrder::PotentialFirst, SplitOrder::KineticFirst}) {
    const auto u3 = unitary(build_evolution(m, g, layout, 0.4, 3, order));
    Circuit manual(layout.total_qubits());
    if (order == SplitOrder::KineticFirst) manual.append(build_mode_qft(layout));
    for (int i = 0; i < 3; ++i) manual.append(build_timestep(m, g, layout, 0.4, order));
    if (order == SplitOrder::KineticFirst) manual.append(build_mode_qft(layout, true));
    const auto um = unitary(manual);
    double worst = 0.0;
    for (std::size_t i = 0; i < u3.size(); ++i) worst = std::max(worst, std::abs(u3[i] - um[i]));
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("bilinear diagonal unit") {
  const VibronicModel m = two_mode_model();
  const GridSpec g{2, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  const double g1 = 0.013;
  const double g2 = -0.021;
  const double tau = 0.8;
  const auto u = unitary(build_bilinear_diag(g, layout, 0, 1, g1, g2, tau));
  const std::size_t dim = std::size_t{1} << layout.total_qubits();
  const std::size_t sector = dim / 2;
  const std::size_t np = g.points();
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const std::size_t local = j % sector;
    const double ql = g.point(local / np);
    const double qm = g.point(local % np);
    const double gamma = j < sector ? g1 : g2;
    worst = std::max(worst, std::abs(u[j * dim + j] - std::exp(-I * gamma * ql * qm * tau / kHbar)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("bilinear off-diagonal unit") {
  const VibronicModel m = two_mode_model();
  const GridSpec g{2, -5.0, 5.0};
  const QubitLayout layout = layout_for(m, g);
  const double mu = 0.017;
  const double tau = 0.6;
  const std::size_t dim = std::size_t{1} << layout.total_qubits();
  const std::size_t sector = dim / 2;
  const std::size_t np = g.points();
  for (bool expand : {true, false}) {
    const Circuit c = build_bilinear_offdiag(g, layout, 0, 1, mu, tau, expand);
    const auto u = unitary(c);
    double worst = 0.0;
    for (std::size_t j = 0; j < sector; ++j) {
      const double th = mu * g.point(j / np) * g.point(j % np) * tau / kHbar;
      worst = std::max(worst, std::abs(u[j * dim + j] - std::cos(th)));
      worst = std::max(worst, std::abs(u[j * dim + j + sector] + I * std::sin(th)));
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("pair scheduling") {
  const VibronicModel m = preset("pyrazine-24d");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& t : m.bilinear_diag()) pairs.emplace_back(t.l, t.m);
  REQUIRE(pairs.size() == 31);
  const auto groups = schedule_pairs(pairs);
  CHECK(groups.size() == 6);
  std::set<std::size_t> seen;
  for (const auto& grp : groups) {
    std::set<std::size_t> modes;
    for (std::size_t i : grp) {
      CHECK(seen.insert(i).second);
      CHECK(modes.insert(pairs[i].first).second);
      CHECK(modes.insert(pairs[i].second).second);
    }
  }
  CHECK(seen.size() == pairs.size());
}
