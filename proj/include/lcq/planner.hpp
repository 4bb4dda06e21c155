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
 * Compiles an inner product <psi_w|psi_x> into resonator operations:
 * Hadamard bridge layers around per-resonator phase shifts. Includes
 * light-cone pruning and execution on the exact or the analog backend.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lcq/analog.hpp"
#include "lcq/circuit.hpp"
#include "lcq/neuro.hpp"
#include "lcq/synth.hpp"

namespace lcq::plan {

using Complex = std::complex<double>;
using Pair = std::pair<std::size_t, std::size_t>;

/// Hadamard on qubit s realized by bridging each pair (j, j | bit(s)).
struct HadamardBridge {
    int qubit = 1;
    std::vector<Pair> pairs;
};

struct PhaseStep {
    std::size_t resonator = 0;
    double phi = 0.0;
};

using PlanStep = std::variant<HadamardBridge, PhaseStep>;

struct PlanStats {
    std::size_t bridges_full = 0;
    std::size_t bridges_pruned = 0;
    std::size_t phase_shifts = 0;
};

struct ResonatorPlan {
    int n = 0;
    std::vector<PlanStep> steps;
    PlanStats stats;

    void validate() const;
    [[nodiscard]] std::size_t bridge_count() const;
};

/// All 2^{N-1} pairs (j, j XOR bit(s)) with the lower index first.
[[nodiscard]] std::vector<Pair> hadamard_bridges(int n, int s);

[[nodiscard]] ResonatorPlan plan_inner_product(const synth::SignPattern &x,
                                               const synth::SignPattern &w);
[[nodiscard]] ResonatorPlan plan_inner_product(const synth::PhasePattern &x,
                                               const synth::PhasePattern &w);
/// Bipolar patterns give a sign plan, anything else a phase plan; padding as in encode_pattern.
[[nodiscard]] ResonatorPlan plan_inner_product(const neuro::Pattern &x, const neuro::Pattern &w);

/// Sign/phase patterns from pixel patterns, padded to 2^N with +1.
[[nodiscard]] synth::SignPattern to_sign_pattern(const neuro::Pattern &p);
[[nodiscard]] synth::PhasePattern to_phase_pattern(const neuro::Pattern &p);

enum class PruneMode {
    /// Keep a pair iff it is reachable from |0...0> and co-reachable from <0...0|.
    InputOutput,
    /// Forward light cone only; every output amplitude is preserved.
    InputOnly,
};

[[nodiscard]] ResonatorPlan prune(const ResonatorPlan &plan, PruneMode mode = PruneMode::InputOutput);

/// Pair count of each maximal run of consecutive Hadamard-bridge steps.
[[nodiscard]] std::vector<std::size_t> bridges_per_layer(const ResonatorPlan &plan);

enum class Backend { Ideal, Analog };

[[nodiscard]] Backend parse_backend(const std::string &name);
[[nodiscard]] std::string backend_name(Backend b);

struct ExecuteOptions {
    Backend backend = Backend::Ideal;
    analog::DesignParams design = [] {
        analog::DesignParams d;
        d.rule = analog::PhaseRule::Snapshot;
        return d;
    }();
    circuit::SimConfig sim;
    int max_analog_qubits = 4;
    /// Run the pairs of one bridge step together (otherwise one after another).
    bool simultaneous = true;
};

struct Execution {
    Backend backend = Backend::Ideal;
    std::vector<Complex> y;
    double readout_time = 0.0; ///< analog only
    std::vector<std::string> warnings;
};

/// y_j is the amplitude of resonator j after the plan acts on |0...0>, so
/// y_0 = <psi_w|psi_x>. The analog backend removes the e^{i pi/4} carried by
/// every bridged Hadamard step.
[[nodiscard]] Execution execute(const ResonatorPlan &plan, const ExecuteOptions &options = {});

/// Analog schedule a plan is lowered to.
[[nodiscard]] analog::GateSchedule lower_to_schedule(const ResonatorPlan &plan,
                                                     const analog::DesignParams &design,
                                                     bool simultaneous = true);

// Text format --------------------------------------------------------------------

/// `N n`, then `HB s j k` and `PS j phi` lines; a blank line, a change of s,
/// or a repeated resonator starts a new bridge step.
void write_plan(std::ostream &out, const ResonatorPlan &plan);
[[nodiscard]] ResonatorPlan parse_plan(std::istream &in);

/// j, bit string, Re y_j, Im y_j.
void write_outputs_csv(std::ostream &out, const Execution &exec, int n,
                       const std::string &comment = {});

} // namespace lcq::plan
