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

#include "lcq/json_io.hpp"

#include "lcq/error.hpp"

namespace lcq::circuit {

using nlohmann::json;

void to_json(json &j, const PulseProfile &p) {
    j = json{{"amplitude", p.amplitude}, {"t1", p.t1}, {"t2", p.t2}, {"T", p.width}};
}

void from_json(const json &j, PulseProfile &p) {
    if (!j.is_object()) {
        throw ValidationError("pulse must be a JSON object");
    }
    try {
        p.amplitude = j.at("amplitude").get<double>();
        p.t1 = j.at("t1").get<double>();
        p.t2 = j.at("t2").get<double>();
        p.width = j.value("T", 1.0);
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed pulse: ") + e.what());
    }
    p.validate();
}

namespace {

PulseTrain read_train(const json &j, const char *key) {
    PulseTrain train;
    if (!j.contains(key) || j.at(key).is_null()) {
        return train;
    }
    const auto &node = j.at(key);
    if (node.is_array()) {
        for (const auto &p : node) {
            train.push_back(p.get<PulseProfile>());
        }
    } else {
        train.push_back(node.get<PulseProfile>());
    }
    return train;
}

} // namespace

json network_to_json(const ResonatorNetwork &network) {
    json rs = json::array();
    for (const auto &r : network.resonators()) {
        rs.push_back({{"L", r.inductance}, {"C", r.capacitance},
                      {"capacitance_pulses", r.capacitance_pulses}});
    }
    json bs = json::array();
    for (const auto &b : network.bridges()) {
        bs.push_back({{"from", b.from}, {"to", b.to},
                      {"inverse_inductance_pulses", b.inverse_inductance_pulses}});
    }
    return json{{"resonators", rs}, {"bridges", bs}};
}

ResonatorNetwork network_from_json(const json &j) {
    if (!j.is_object() || !j.contains("resonators") || !j.at("resonators").is_array()) {
        throw ValidationError("network JSON needs a \"resonators\" array");
    }
    std::vector<Resonator> rs;
    std::vector<Bridge> bs;
    try {
        for (const auto &r : j.at("resonators")) {
            Resonator res;
            res.inductance = r.value("L", 1.0);
            res.capacitance = r.value("C", 1.0);
            res.capacitance_pulses = read_train(r, "capacitance_pulses");
            rs.push_back(std::move(res));
        }
        if (j.contains("bridges")) {
            for (const auto &b : j.at("bridges")) {
                const auto from = b.at("from").get<long long>();
                const auto to = b.at("to").get<long long>();
                if (from < 0 || to < 0) {
                    throw ValidationError("bridge endpoint out of range");
                }
                bs.push_back(Bridge{static_cast<std::size_t>(from), static_cast<std::size_t>(to),
                                    read_train(b, "inverse_inductance_pulses")});
            }
        }
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed network JSON: ") + e.what());
    }
    return ResonatorNetwork(std::move(rs), std::move(bs));
}

} // namespace lcq::circuit

namespace lcq {

using nlohmann::json;

namespace {

json complex_to_json(const std::complex<double> &z) { return json::array({z.real(), z.imag()}); }

} // namespace

json matrix_to_json(const Eigen::MatrixXcd &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json report_to_json(const analog::AnalogGateReport &report) {
    json per = json::array();
    for (std::size_t j = 0; j < report.after.size(); ++j) {
        per.push_back({{"target", j},
                       {"amplitude_before", report.before[j].amplitude},
                       {"phase_before", report.before[j].phase},
                       {"amplitude_after", report.after[j].amplitude},
                       {"phase_after", report.after[j].phase},
                       {"final", complex_to_json(report.final_amplitudes[j])}});
    }
    json out{{"label", report.label},
             {"resonators", per},
             {"residual_bridge_currents", report.residual_bridge_currents},
             {"energy_before", report.energy_before},
             {"energy_after", report.energy_after},
             {"warnings", report.warnings}};
    if (report.unitary.size() != 0) {
        out["unitary"] = matrix_to_json(report.unitary);
        out["unitarity_error"] = report.unitarity_error;
    }
    out["fidelity"] = report.fidelity ? json(*report.fidelity) : json(nullptr);
    return out;
}

json execution_to_json(const plan::ResonatorPlan &plan, const plan::Execution &exec,
                       const plan::ExecuteOptions &options) {
    json y = json::array();
    for (std::size_t j = 0; j < exec.y.size(); ++j) {
        y.push_back({{"j", j}, {"re", exec.y[j].real()}, {"im", exec.y[j].imag()}});
    }
    json out{{"backend", plan::backend_name(exec.backend)},
             {"n", plan.n},
             {"stats",
              {{"bridges_full", plan.stats.bridges_full},
               {"bridges_pruned", plan.stats.bridges_pruned},
               {"phase_shifts", plan.stats.phase_shifts}}},
             {"y", y},
             {"warnings", exec.warnings}};
    if (exec.backend == plan::Backend::Analog) {
        const auto &d = options.design;
        out["analog"] = {{"step", options.sim.step},
                         {"readout_time", exec.readout_time},
                         {"width", d.width},
                         {"ratio", d.ratio},
                         {"coupling", d.coupling},
                         {"rule", d.rule == analog::PhaseRule::Snapshot ? "snapshot" : "first-order"},
                         {"simultaneous", options.simultaneous}};
    }
    return out;
}

} // namespace lcq
