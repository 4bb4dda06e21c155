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

#pragma once

#include "json.hpp"

#include "lcq/analog.hpp"
#include "lcq/circuit.hpp"
#include "lcq/planner.hpp"

namespace lcq::circuit {

// Schema:
// { "resonators": [ {"L": 1, "C": 1, "capacitance_pulses": [pulse...]} ... ],
//   "bridges":    [ {"from": 0, "to": 1, "inverse_inductance_pulses": [pulse...]} ... ] }
// pulse = {"amplitude": a, "t1": t1, "t2": t2, "T": width}
// A single "capacitance_pulse" / "inverse_inductance_pulse" object is also accepted.

void to_json(nlohmann::json &j, const PulseProfile &p);
void from_json(const nlohmann::json &j, PulseProfile &p);

[[nodiscard]] nlohmann::json network_to_json(const ResonatorNetwork &network);
[[nodiscard]] ResonatorNetwork network_from_json(const nlohmann::json &j);

} // namespace lcq::circuit

namespace lcq {

/// [[re, im], ...] rows.
[[nodiscard]] nlohmann::json matrix_to_json(const Eigen::MatrixXcd &m);

/// Amplitudes, phases, fidelity, unitary, residual bridge currents and energies.
[[nodiscard]] nlohmann::json report_to_json(const analog::AnalogGateReport &report);

/// y_j table, plan statistics, backend and design tolerances.
[[nodiscard]] nlohmann::json execution_to_json(const plan::ResonatorPlan &plan,
                                               const plan::Execution &exec,
                                               const plan::ExecuteOptions &options);

} // namespace lcq
