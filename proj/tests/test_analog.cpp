// Copyright 2026 The lcq Authors
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

#include <cmath>

#include <gtest/gtest.h>

#include "lcq/analog.hpp"
#include "lcq/angles.hpp"
#include "lcq/error.hpp"
#include "lcq/ideal.hpp"

using namespace lcq;
using namespace lcq::analog;
using circuit::PulseProfile;

namespace {

DesignParams snapshot_params() {
    DesignParams d;
    d.rule = PhaseRule::Snapshot;
    return d;
}

double log_cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

// Phase of one resonator carrying amplitude 1 after a single capacitance pulse.
double measured_phase(const PulseProfile &p, double readout) {
    auto net = circuit::ResonatorNetwork::uniform(1);
    net.add_capacitance_pulse(0, p);
    const std::vector<std::size_t> res{0};
    const std::vector<Complex> amps{1.0};
    circuit::SimConfig cfg;
    cfg.end_time = readout;
    const auto f = circuit::integrate_final(net, circuit::state_from_amplitudes(net, res, amps), cfg);
    return circuit::extract_phase_amplitude(f, net, 0).phase;
}

Eigen::MatrixXcd cnot_matrix() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

} // namespace

TEST(Berry, MatchesLogCoshClosedForm) {
    const PulseProfile p{0.1, 10 * kPi, 20 * kPi, 10.0};
    for (double t : {0.0, 12 * kPi, 25 * kPi, 60 * kPi, 200 * kPi}) {
        const double bracket = log_cosh((t - p.t1) / p.width) - log_cosh((t - p.t2) / p.width) -
                               (p.t1 - p.t2) / p.width;
        const double want = 0.5 * 0.5 * p.amplitude * p.width * bracket;
        EXPECT_NEAR(berry_phase(p, 1.0, t).phase, want, 1e-9) << t;
    }
    EXPECT_NEAR(berry_phase(p, 1.0, 1e4).phase, kPi / 2, 1e-9);
}

TEST(Berry, WarnsOnLargeModulation) {
    EXPECT_FALSE(berry_phase(PulseProfile{0.1, 0, 1, 1}, 1.0, 5.0).warning.has_value());
    EXPECT_TRUE(berry_phase(PulseProfile{0.4, 0, 1, 1}, 1.0, 5.0).warning.has_value());
}

TEST(Snapshot, TracksExactIntegration) {
    for (double t2 : {15 * kPi, 20 * kPi, 30 * kPi}) {
        const PulseProfile p{0.1, 10 * kPi, t2, 10.0};
        const double readout = t2 + 12 * p.width;
        const double delay = snapshot_phase(p, 1.0, readout);
        EXPECT_NEAR(reduce_angle(measured_phase(p, readout) + delay), 0.0, 0.02) << t2;
    }
}

TEST(Snapshot, AgreesWithFirstOrderForWeakPulses) {
    // The two differ at relative order C1/C0.
    const PulseProfile p{1e-4, 0.0, 50.0, 5.0};
    const double first = berry_phase(p, 1.0, 200.0).phase;
    EXPECT_NEAR(snapshot_phase(p, 1.0, 200.0), first, 1e-3 * first);
}

TEST(Durations, FirstOrderFormulas) {
    DesignParams d;
    EXPECT_NEAR(phase_shift_duration(kPi / 2, d), 10 * kPi, 1e-12);
    EXPECT_NEAR(phase_shift_duration(kPi / 4, d), 5 * kPi, 1e-12);
    EXPECT_NEAR(phase_shift_duration(-kPi / 2, d), 30 * kPi, 1e-12);
    EXPECT_NEAR(mixing_duration(d), 5 * kPi, 1e-12);
    EXPECT_NEAR(not_duration(d), 10 * kPi, 1e-12);
}

TEST(Durations, SnapshotSolvesExactPhase) {
    const auto d = snapshot_params();
    const double dt = phase_shift_duration(kPi / 2, d);
    const PulseProfile p{-d.ratio, 100.0, 100.0 + dt, d.width};
    EXPECT_NEAR(-snapshot_phase(p, 1.0, 1e4), kPi / 2, 1e-8);
}

TEST(Design, RejectsOutOfRange) {
    DesignParams d;
    d.ratio = 0.5;
    EXPECT_THROW(d.validate(), ValidationError);
    d = {};
    d.readout_margin = 5.0;
    EXPECT_THROW(d.validate(), ValidationError);
    auto s = design_phase_shift(kPi / 2);
    s.readout_time = s.network.last_pulse_end() + 1.0;
    EXPECT_THROW(s.validate(), ValidationError);
}

TEST(Matrices, MixingSquaredIsNot) {
    const auto u = mixing_matrix();
    EXPECT_LT((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm(), 1e-15);
    EXPECT_LT((u * u - ideal::pauli_x_matrix()).norm(), 1e-15);
    const Eigen::Matrix2cd h = ideal::phase_shift_matrix(kPi / 2) * u *
                               ideal::phase_shift_matrix(kPi / 2);
    EXPECT_LT((h - std::polar(1.0, kPi / 4) * ideal::hadamard_matrix()).norm(), 1e-15);
}

TEST(Gates, PhaseShiftSnapshot) {
    for (double phi : {kPi / 4, kPi / 2, kPi}) {
        const auto r = run_gate(design_phase_shift(phi, snapshot_params()), {0.0, 1.0});
        EXPECT_NEAR(r.after[1].amplitude, 1.0, 1e-4);
        EXPECT_NEAR(reduce_angle(r.after[1].phase - phi), 0.0, 1e-3) << phi;
        EXPECT_NEAR(r.energy_after, r.energy_before, 1e-3 * r.energy_before);
        ASSERT_TRUE(r.fidelity.has_value());
        EXPECT_GT(*r.fidelity, 0.9999);
    }
}

TEST(Gates, PaperParameterFidelities) {
    const DesignParams d;
    const struct {
        GateSchedule s;
        double min;
    } cases[] = {{design_mixing(d), 0.999},    {design_not(d), 0.995},
                 {compose_hadamard(d), 0.995}, {cnot_schedule(d), 0.995},
                 {identity_schedule(2, d), 0.999999}};
    for (const auto &c : cases) {
        const auto r = run_gate(c.s, std::vector<Complex>(c.s.targets.size(), 0.0));
        ASSERT_TRUE(r.fidelity.has_value()) << c.s.label;
        EXPECT_GT(*r.fidelity, c.min) << c.s.label;
        EXPECT_LT(r.unitarity_error, 1e-2) << c.s.label;
    }
}

TEST(Gates, SnapshotRuleIsNearExact) {
    const auto d = snapshot_params();
    for (const auto &s : {design_mixing(d), design_not(d), compose_hadamard(d), cnot_schedule(d),
                          controlled_phase_schedule(kPi, d)}) {
        const auto r = run_gate(s, std::vector<Complex>(s.targets.size(), 0.0));
        EXPECT_GT(*r.fidelity, 0.9999) << s.label;
    }
}

TEST(Gates, CnotNominalIsStandard) {
    const auto s = cnot_schedule();
    EXPECT_LT((s.nominal - cnot_matrix()).norm(), 1e-15);
}

TEST(Gates, MultiControlledPhaseDiagonal) {
    const auto s = multi_controlled_phase_schedule(3, {1, 2, 3}, kPi, snapshot_params());
    ASSERT_EQ(s.targets.size(), 8u);
    std::vector<Complex> in(8, 1.0 / std::sqrt(8.0));
    const auto out = propagate(s, in);
    for (std::size_t j = 0; j < 8; ++j) {
        const Complex want = (j == 7 ? -1.0 : 1.0) / std::sqrt(8.0);
        EXPECT_NEAR(std::abs(out[j] - want), 0.0, 1e-3) << j;
    }
}

TEST(Gates, ResidualBridgeCurrentIsSmall) {
    const auto r = run_gate(design_mixing(), {1.0, 0.0});
    ASSERT_EQ(r.residual_bridge_currents.size(), 1u);
    EXPECT_LT(r.residual_bridge_currents[0], 1e-3);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Gates, RejectsWrongInputSize) {
    EXPECT_THROW((void)run_gate(design_mixing(), {1.0}), ValidationError);
}

TEST(Builder, OverlappingBridgePairsRejected) {
    ScheduleBuilder b(4);
    EXPECT_THROW(b.add_bridge_stage({{0, 1}, {1, 2}}, BridgeKind::Mixing), ValidationError);
}

TEST(Fidelity, GlobalPhaseInvariant) {
    const Eigen::MatrixXcd u = mixing_matrix();
    EXPECT_NEAR(gate_fidelity(u, std::polar(1.0, 0.7) * u), 1.0, 1e-15);
    EXPECT_NEAR(gate_fidelity(u, Eigen::MatrixXcd::Identity(2, 2)), 1.0 / std::sqrt(2.0), 1e-15);
}
