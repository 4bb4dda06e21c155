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

/**
 * @file
 * Pulse schedules that realize phase-shift, mixing, NOT, Hadamard and
 * controlled-phase gates on resonator networks, and their simulation.
 *
 * Every schedule carries one extra resonator that is never modulated; phases
 * of the target resonators are read relative to it.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lcq/circuit.hpp"

namespace lcq::analog {

using Complex = std::complex<double>;

/// How pulse durations are chosen for a requested rotation angle.
enum class PhaseRule {
    /// Duration from the small-modulation formulas (phase ~ w0 * int C1 / 2C0,
    /// mixing ~ (L / 2 L1) w0 dt).
    FirstOrder,
    /// Duration solved against the instantaneous eigenfrequencies.
    Snapshot,
};

struct DesignParams {
    double width = 10.0;      ///< pulse smoothing T
    double inductance = 1.0;  ///< L of every resonator
    double capacitance = 1.0; ///< C0 of every resonator
    double ratio = 0.1;       ///< |C1| / C0 of phase-shift pulses
    double coupling = 0.1;    ///< L / L1 of bridge pulses
    double pad = 5.0;         ///< idle time before and after each pulse, in widths
    double readout_margin = 12.0; ///< readout after the last t2, in widths
    PhaseRule rule = PhaseRule::FirstOrder;

    [[nodiscard]] double omega0() const;
    void validate() const;
};

struct GateSchedule {
    circuit::ResonatorNetwork network;
    std::vector<std::size_t> targets;
    std::size_t reference = 0;
    std::string label;
    Eigen::MatrixXcd nominal; ///< empty when there is no nominal gate
    double readout_time = 0.0;

    void validate() const;
};

struct PhaseEstimate {
    double phase = 0.0;
    std::optional<std::string> warning;
};

/// w0 * int_{-inf}^{t} C1(s) / (2 C0) ds for one capacitance pulse.
[[nodiscard]] PhaseEstimate berry_phase(const circuit::PulseProfile &pulse, double base_c, double t,
                                        double inductance = 1.0);

/// int_{-inf}^{t} (w0 - 1/sqrt(L C(s))) ds, the phase lag accumulated by
/// following the instantaneous frequency.
[[nodiscard]] double snapshot_phase(const circuit::PulseProfile &pulse, double base_c, double t,
                                    double inductance = 1.0);

/// Eigenfrequencies {-l w0, -w0, 0, w0, l w0} of a two-resonator, one-bridge
/// network with l = sqrt(1 + 2 L Gamma(t)).
[[nodiscard]] std::vector<double> snapshot_frequencies(const circuit::ResonatorNetwork &network,
                                                       double t);

/// Pulse length advancing the phase by phi (taken mod 2 pi into [0, 2 pi)).
[[nodiscard]] double phase_shift_duration(double phi, const DesignParams &params);
/// Bridge pulse length for a quarter (mixing) or half (NOT) exchange.
[[nodiscard]] double mixing_duration(const DesignParams &params);
[[nodiscard]] double not_duration(const DesignParams &params);

enum class BridgeKind { Mixing, Not };

/// Appends gate stages one after another on `num_targets` resonators plus a reference.
class ScheduleBuilder {
  public:
    explicit ScheduleBuilder(std::size_t num_targets, DesignParams params = {});

    /// Places the next pulse's t1 exactly at `t1`.
    ScheduleBuilder &start_next_at(double t1);

    /// Simultaneous phase shifts (resonator, phi); zero shifts are skipped.
    ScheduleBuilder &add_phase_stage(const std::vector<std::pair<std::size_t, double>> &shifts);
    /// Simultaneous bridge pulses on disjoint pairs.
    ScheduleBuilder &add_bridge_stage(const std::vector<std::pair<std::size_t, std::size_t>> &pairs,
                                      BridgeKind kind);
    /// e^{i pi/4} H on each pair (j0, j1): pi/2 on j1, mixing, pi/2 on j1.
    ScheduleBuilder &add_hadamard_stage(
        const std::vector<std::pair<std::size_t, std::size_t>> &pairs);

    [[nodiscard]] double cursor() const { return cursor_; }
    [[nodiscard]] const DesignParams &params() const { return params_; }
    [[nodiscard]] const circuit::ResonatorNetwork &network() const { return network_; }

    [[nodiscard]] GateSchedule build(std::string label, Eigen::MatrixXcd nominal = {}) const;

  private:
    double next_t1() const;
    void check_target(std::size_t j) const;

    DesignParams params_;
    std::size_t num_targets_;
    circuit::ResonatorNetwork network_;
    double cursor_ = 0.0;
    std::optional<double> forced_t1_;
};

[[nodiscard]] GateSchedule design_phase_shift(double phi, const DesignParams &params = {},
                                              std::optional<double> t1 = std::nullopt);
[[nodiscard]] GateSchedule design_mixing(const DesignParams &params = {},
                                         std::optional<double> t1 = std::nullopt);
[[nodiscard]] GateSchedule design_not(const DesignParams &params = {},
                                      std::optional<double> t1 = std::nullopt);
[[nodiscard]] GateSchedule identity_schedule(std::size_t num_targets,
                                             const DesignParams &params = {});
[[nodiscard]] GateSchedule compose_hadamard(const DesignParams &params = {});
[[nodiscard]] GateSchedule cnot_schedule(const DesignParams &params = {});
[[nodiscard]] GateSchedule controlled_phase_schedule(double phi, const DesignParams &params = {});
/// Phase phi on every basis resonator whose bits include all of `qubits`.
[[nodiscard]] GateSchedule multi_controlled_phase_schedule(int n, const std::vector<int> &qubits,
                                                           double phi,
                                                           const DesignParams &params = {});

[[nodiscard]] Eigen::Matrix2cd mixing_matrix();

struct RunOptions {
    circuit::SimConfig sim; ///< end_time is replaced by the schedule's readout time
    bool reconstruct_unitary = true;
    /// Bridge currents above this at readout are reported as warnings.
    double residual_tolerance = 1e-3;
};

struct AnalogGateReport {
    std::string label;
    std::vector<circuit::PhaseAmplitude> before;
    std::vector<circuit::PhaseAmplitude> after;
    std::vector<Complex> final_amplitudes; ///< relative to the reference, not normalized
    Eigen::MatrixXcd unitary;              ///< empty unless reconstructed
    std::optional<double> fidelity;        ///< |tr(U_nom^dag U)| / dim
    double unitarity_error = 0.0;          ///< max |U^dag U - 1|
    std::vector<double> residual_bridge_currents;
    double energy_before = 0.0;
    double energy_after = 0.0;
    std::vector<std::string> warnings;
};

/// Encodes `initial` on the targets (reference at amplitude 1), integrates to
/// the readout time and extracts amplitudes; optionally rebuilds the unitary
/// column by column from basis inputs.
[[nodiscard]] AnalogGateReport run_gate(const GateSchedule &schedule,
                                        const std::vector<Complex> &initial,
                                        const RunOptions &options = {});

/// Amplitudes of the targets at the readout time relative to the reference.
[[nodiscard]] std::vector<Complex> propagate(const GateSchedule &schedule,
                                             const std::vector<Complex> &initial,
                                             const circuit::SimConfig &sim = {});

[[nodiscard]] double gate_fidelity(const Eigen::MatrixXcd &nominal, const Eigen::MatrixXcd &actual);

} // namespace lcq::analog
