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
 * LC-resonator networks: topology, time-modulated parameters, the Kirchhoff
 * generator, fixed-step RK4 integration and wavefunction readout.
 *
 * State layout used everywhere in this module: inductor currents of every
 * resonator, then bridge currents, then capacitor voltages.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lcq::circuit {

/// Smooth rectangular modulation (A/2)(tanh((t-t1)/T) - tanh((t-t2)/T)).
struct PulseProfile {
    double amplitude = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double width = 1.0; ///< smoothing width T

    void validate() const;
    [[nodiscard]] double value(double t) const;
};

[[nodiscard]] double pulse_value(const PulseProfile &profile, double t);

/// Sum of independent pulses applied to one element over a schedule.
using PulseTrain = std::vector<PulseProfile>;

[[nodiscard]] double train_value(const PulseTrain &train, double t);

struct Resonator {
    double inductance = 1.0;
    double capacitance = 1.0; ///< base capacitance C0
    PulseTrain capacitance_pulses;

    [[nodiscard]] double omega0() const;
    [[nodiscard]] double capacitance_at(double t) const;
};

/// Inductor bridging two resonators; its inverse inductance is pulse-driven.
struct Bridge {
    std::size_t from = 0;
    std::size_t to = 0;
    PulseTrain inverse_inductance_pulses;

    [[nodiscard]] double inverse_inductance_at(double t) const;
};

class ResonatorNetwork {
  public:
    ResonatorNetwork() = default;
    ResonatorNetwork(std::vector<Resonator> resonators, std::vector<Bridge> bridges);

    /// `count` identical resonators with no bridges.
    static ResonatorNetwork uniform(std::size_t count, double inductance = 1.0,
                                    double capacitance = 1.0);

    std::size_t add_resonator(Resonator resonator);
    /// Adds a bridge, or returns the existing one for the same unordered pair.
    std::size_t add_bridge(std::size_t from, std::size_t to);
    void add_capacitance_pulse(std::size_t resonator, const PulseProfile &pulse);
    void add_bridge_pulse(std::size_t bridge, const PulseProfile &pulse);

    [[nodiscard]] const std::vector<Resonator> &resonators() const { return resonators_; }
    [[nodiscard]] const std::vector<Bridge> &bridges() const { return bridges_; }
    [[nodiscard]] std::size_t num_resonators() const { return resonators_.size(); }
    [[nodiscard]] std::size_t num_bridges() const { return bridges_.size(); }
    [[nodiscard]] std::size_t state_size() const {
        return 2 * resonators_.size() + bridges_.size();
    }
    [[nodiscard]] std::optional<std::size_t> find_bridge(std::size_t a, std::size_t b) const;

    /// Latest t2 over every installed pulse (or -inf when there are none).
    [[nodiscard]] double last_pulse_end() const;
    /// Largest smoothing width over every installed pulse (0 when none).
    [[nodiscard]] double max_pulse_width() const;

    void validate() const;

  private:
    std::vector<Resonator> resonators_;
    std::vector<Bridge> bridges_;
};

/// Instantaneous currents and voltages of a network.
struct AnalogState {
    std::vector<double> inductor_currents;
    std::vector<double> bridge_currents;
    std::vector<double> voltages;
    double time = 0.0;

    static AnalogState zeros(const ResonatorNetwork &network, double time = 0.0);
    static AnalogState from_flat(std::span<const double> flat, const ResonatorNetwork &network,
                                 double time);
    [[nodiscard]] std::vector<double> flatten() const;
    void validate_against(const ResonatorNetwork &network) const;
};

struct SimConfig {
    double step = 2.0 * 3.14159265358979323846 / 1000.0; ///< in units of 1/omega0
    double end_time = 0.0;
    /// Record every n-th step in the returned trajectory (first and last are always kept).
    std::size_t sample_every = 1;

    void validate() const;
};

using Trajectory = std::vector<AnalogState>;

/// A(t) such that dx/dt = A(t) x in the layout (I_res..., I_bridge..., V...).
[[nodiscard]] Eigen::MatrixXd assemble_generator(const ResonatorNetwork &network, double t);

/// Matrix-free y = A(t) x. `y` must have network.state_size() entries.
void apply_generator(const ResonatorNetwork &network, double t, std::span<const double> x,
                     std::span<double> y);

/// Classical fixed-step RK4 from initial.time to config.end_time. The step is
/// shrunk uniformly so the last sample lands exactly on end_time.
[[nodiscard]] Trajectory integrate(const ResonatorNetwork &network, const AnalogState &initial,
                                   const SimConfig &config);

/// Same integration, only the final state is kept.
[[nodiscard]] AnalogState integrate_final(const ResonatorNetwork &network,
                                          const AnalogState &initial, const SimConfig &config);

/// Same integration, every sampled state is handed to `observer`.
void integrate(const ResonatorNetwork &network, const AnalogState &initial,
               const SimConfig &config, const std::function<void(const AnalogState &)> &observer);

struct EnergyOptions {
    /// Bridges with |Gamma| below this are treated as disconnected.
    double open_bridge_threshold = 1e-12;
    /// Largest current tolerated in a disconnected bridge.
    double stranded_current_tolerance = 1e-3;
};

/// Electrostatic + magnetic energy including bridge inductors.
[[nodiscard]] double total_energy(const AnalogState &state, const ResonatorNetwork &network,
                                  double t, const EnergyOptions &options = {});

struct PhaseAmplitude {
    double amplitude = 0.0;
    double phase = 0.0; ///< in (-pi, pi]
};

struct ExtractOptions {
    double degenerate_tolerance = 1e-12;
    /// Reject samples taken while the resonator's capacitance is modulated.
    bool require_unperturbed = true;
    double perturbation_tolerance = 1e-9;
};

/// Amplitude and phase of V(t) = amplitude * cos(omega0 t + phase).
[[nodiscard]] PhaseAmplitude extract_phase_amplitude(const AnalogState &state,
                                                     const ResonatorNetwork &network,
                                                     std::size_t resonator,
                                                     const ExtractOptions &options = {});

/// Complex amplitude V0 e^{i theta} of one resonator (no normalization).
[[nodiscard]] std::complex<double> resonator_amplitude(const AnalogState &state,
                                                       const ResonatorNetwork &network,
                                                       std::size_t resonator,
                                                       const ExtractOptions &options = {});

/// Normalized alpha_j = V_j e^{i theta_j} / sqrt(sum V_j^2) over every resonator.
[[nodiscard]] std::vector<std::complex<double>> to_wavefunction(const AnalogState &state,
                                                                const ResonatorNetwork &network);

/// Same over a subset of resonators; phases are taken relative to `reference`
/// when one is given. Resonators with negligible amplitude map to 0.
[[nodiscard]] std::vector<std::complex<double>>
to_wavefunction(const AnalogState &state, const ResonatorNetwork &network,
                std::span<const std::size_t> resonators, std::optional<std::size_t> reference,
                const ExtractOptions &options = {});

/// Inverse of the readout: a state at time t whose listed resonators carry the
/// complex amplitudes (V = Re(a e^{i w0 t}), sqrt(L/C) I = Im(a e^{i w0 t})).
[[nodiscard]] AnalogState state_from_amplitudes(const ResonatorNetwork &network,
                                                std::span<const std::size_t> resonators,
                                                std::span<const std::complex<double>> amplitudes,
                                                double t = 0.0);

// CSV export ------------------------------------------------------------------

/// Header names: I0.., Ib0.., V0.. in state layout order.
[[nodiscard]] std::vector<std::string> state_variable_names(const ResonatorNetwork &network);

/// CSV with a `time` column followed by one column per state variable. Each
/// line of `comment` is written first, prefixed with "# ".
void write_trajectory_csv(std::ostream &out, const Trajectory &trajectory,
                          const ResonatorNetwork &network, const std::string &comment = {});

} // namespace lcq::circuit
