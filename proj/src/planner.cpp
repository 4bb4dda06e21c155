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

#include "lcq/planner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "lcq/angles.hpp"
#include "lcq/error.hpp"
#include "lcq/ideal.hpp"

namespace lcq::plan {

namespace {

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

void check_n(int n) {
    if (n < 1 || n > ideal::kMaxQubits) {
        throw ValidationError("plan qubit count out of range");
    }
}

std::vector<PlanStep> hadamard_layer(int n) {
    std::vector<PlanStep> steps;
    for (int s = 1; s <= n; ++s) {
        steps.emplace_back(HadamardBridge{s, hadamard_bridges(n, s)});
    }
    return steps;
}

ResonatorPlan assemble(int n, const std::vector<PhaseStep> &phases) {
    ResonatorPlan plan;
    plan.n = n;
    plan.steps = hadamard_layer(n);
    for (const auto &p : phases) {
        plan.steps.emplace_back(p);
    }
    for (auto &s : hadamard_layer(n)) {
        plan.steps.push_back(std::move(s));
    }
    plan.stats.bridges_full = plan.bridge_count();
    plan.stats.bridges_pruned = plan.stats.bridges_full;
    plan.stats.phase_shifts = phases.size();
    return plan;
}

void check_phase_pattern(const synth::PhasePattern &p) {
    if (p.n < 1 || p.thetas.size() != (std::size_t{1} << p.n)) {
        throw ValidationError("phase pattern needs 2^N entries");
    }
    for (double t : p.thetas) {
        if (!std::isfinite(t)) {
            throw ValidationError("phase pattern entries must be finite");
        }
    }
}

} // namespace

void ResonatorPlan::validate() const {
    check_n(n);
    const std::size_t dim = std::size_t{1} << n;
    for (const auto &step : steps) {
        std::visit(Overloaded{
                       [&](const HadamardBridge &hb) {
                           const auto bit = ideal::qubit_mask(n, hb.qubit);
                           std::set<std::size_t> used;
                           for (const auto &[a, b] : hb.pairs) {
                               if (a >= dim || b >= dim || (a ^ b) != bit || (a & bit) != 0) {
                                   throw ValidationError("bridge pair (" + std::to_string(a) +
                                                         ", " + std::to_string(b) +
                                                         ") does not flip exactly qubit " +
                                                         std::to_string(hb.qubit));
                               }
                               if (!used.insert(a).second || !used.insert(b).second) {
                                   throw ValidationError("overlapping bridges in one step");
                               }
                           }
                       },
                       [&](const PhaseStep &ps) {
                           if (ps.resonator >= dim) {
                               throw ValidationError("phase-shift resonator out of range");
                           }
                           if (!std::isfinite(ps.phi)) {
                               throw ValidationError("phase must be finite");
                           }
                       },
                   },
                   step);
    }
}

std::size_t ResonatorPlan::bridge_count() const {
    std::size_t count = 0;
    for (const auto &step : steps) {
        if (const auto *hb = std::get_if<HadamardBridge>(&step)) {
            count += hb->pairs.size();
        }
    }
    return count;
}

std::vector<Pair> hadamard_bridges(int n, int s) {
    check_n(n);
    const auto bit = ideal::qubit_mask(n, s);
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Pair> pairs;
    pairs.reserve(dim / 2);
    for (std::size_t j = 0; j < dim; ++j) {
        if ((j & bit) == 0) {
            pairs.emplace_back(j, j | bit);
        }
    }
    return pairs;
}

// Planning -----------------------------------------------------------------------

ResonatorPlan plan_inner_product(const synth::SignPattern &x, const synth::SignPattern &w) {
    x.validate();
    w.validate();
    if (x.n != w.n) {
        throw ValidationError("input and weight patterns differ in size");
    }
    std::vector<PhaseStep> phases;
    for (std::size_t j = 0; j < x.signs.size(); ++j) {
        if (x.signs[j] < 0) {
            phases.push_back({j, kPi});
        }
    }
    for (std::size_t j = 0; j < w.signs.size(); ++j) {
        if (w.signs[j] < 0) {
            phases.push_back({j, kPi});
        }
    }
    return assemble(x.n, phases);
}

ResonatorPlan plan_inner_product(const synth::PhasePattern &x, const synth::PhasePattern &w) {
    check_phase_pattern(x);
    check_phase_pattern(w);
    if (x.n != w.n) {
        throw ValidationError("input and weight patterns differ in size");
    }
    std::vector<PhaseStep> phases;
    for (std::size_t j = 0; j < x.thetas.size(); ++j) {
        const double t = reduce_angle(x.thetas[j]);
        if (t != 0.0) {
            phases.push_back({j, t});
        }
    }
    for (std::size_t j = 0; j < w.thetas.size(); ++j) {
        const double t = reduce_angle(-w.thetas[j]);
        if (t != 0.0) {
            phases.push_back({j, t});
        }
    }
    return assemble(x.n, phases);
}

synth::SignPattern to_sign_pattern(const neuro::Pattern &p) {
    if (!p.bipolar()) {
        throw ValidationError("pattern " + p.label + " is not bipolar");
    }
    const auto reg = neuro::encode_pattern(p);
    synth::SignPattern s{reg.num_qubits(), {}};
    for (const auto &a : reg.amplitudes()) {
        s.signs.push_back(a.real() > 0 ? 1 : -1);
    }
    return s;
}

synth::PhasePattern to_phase_pattern(const neuro::Pattern &p) {
    const auto reg = neuro::encode_pattern(p);
    synth::PhasePattern s{reg.num_qubits(), {}};
    for (const auto &a : reg.amplitudes()) {
        s.thetas.push_back(reduce_angle(std::arg(a)));
    }
    return s;
}

ResonatorPlan plan_inner_product(const neuro::Pattern &x, const neuro::Pattern &w) {
    if (x.bipolar() && w.bipolar()) {
        return plan_inner_product(to_sign_pattern(x), to_sign_pattern(w));
    }
    return plan_inner_product(to_phase_pattern(x), to_phase_pattern(w));
}

// Pruning ------------------------------------------------------------------------

namespace {

// live[k][p]: pair p of step k touches the light cone grown from resonator 0
// while walking the steps in the given direction.
std::vector<std::vector<bool>> light_cone(const ResonatorPlan &plan, bool forward) {
    const std::size_t dim = std::size_t{1} << plan.n;
    std::vector<bool> reach(dim, false);
    reach[0] = true;
    const std::size_t count = plan.steps.size();
    std::vector<std::vector<bool>> live(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = forward ? i : count - 1 - i;
        const auto *hb = std::get_if<HadamardBridge>(&plan.steps[k]);
        if (hb == nullptr) {
            continue;
        }
        live[k].assign(hb->pairs.size(), false);
        for (std::size_t p = 0; p < hb->pairs.size(); ++p) {
            const auto [a, b] = hb->pairs[p];
            live[k][p] = reach[a] || reach[b];
        }
        for (std::size_t p = 0; p < hb->pairs.size(); ++p) {
            if (live[k][p]) {
                reach[hb->pairs[p].first] = true;
                reach[hb->pairs[p].second] = true;
            }
        }
    }
    return live;
}

} // namespace

ResonatorPlan prune(const ResonatorPlan &plan, PruneMode mode) {
    plan.validate();
    const auto fwd = light_cone(plan, true);
    const auto bwd = mode == PruneMode::InputOutput ? light_cone(plan, false) : fwd;
    ResonatorPlan out;
    out.n = plan.n;
    out.stats = plan.stats;
    for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        const auto *hb = std::get_if<HadamardBridge>(&plan.steps[k]);
        if (hb == nullptr) {
            out.steps.push_back(plan.steps[k]);
            continue;
        }
        HadamardBridge kept{hb->qubit, {}};
        for (std::size_t p = 0; p < hb->pairs.size(); ++p) {
            if (fwd[k][p] && bwd[k][p]) {
                kept.pairs.push_back(hb->pairs[p]);
            }
        }
        if (!kept.pairs.empty()) {
            out.steps.emplace_back(std::move(kept));
        }
    }
    out.stats.bridges_pruned = out.bridge_count();
    return out;
}

std::vector<std::size_t> bridges_per_layer(const ResonatorPlan &plan) {
    std::vector<std::size_t> layers;
    bool in_layer = false;
    for (const auto &step : plan.steps) {
        if (const auto *hb = std::get_if<HadamardBridge>(&step)) {
            if (!in_layer) {
                layers.push_back(0);
                in_layer = true;
            }
            layers.back() += hb->pairs.size();
        } else {
            in_layer = false;
        }
    }
    return layers;
}

// Execution ----------------------------------------------------------------------

Backend parse_backend(const std::string &name) {
    if (name == "ideal") {
        return Backend::Ideal;
    }
    if (name == "analog") {
        return Backend::Analog;
    }
    throw ValidationError("unknown backend \"" + name + "\" (expected ideal or analog)");
}

std::string backend_name(Backend b) { return b == Backend::Ideal ? "ideal" : "analog"; }

analog::GateSchedule lower_to_schedule(const ResonatorPlan &plan,
                                       const analog::DesignParams &design, bool simultaneous) {
    plan.validate();
    const std::size_t dim = std::size_t{1} << plan.n;
    analog::ScheduleBuilder builder(dim, design);
    std::vector<std::pair<std::size_t, double>> pending;
    auto flush = [&] {
        if (!pending.empty()) {
            builder.add_phase_stage(pending);
            pending.clear();
        }
    };
    for (const auto &step : plan.steps) {
        if (const auto *ps = std::get_if<PhaseStep>(&step)) {
            const bool repeated =
                std::any_of(pending.begin(), pending.end(),
                            [&](const auto &e) { return e.first == ps->resonator; });
            if (repeated) {
                flush();
            }
            pending.emplace_back(ps->resonator, ps->phi);
            continue;
        }
        flush();
        const auto &hb = std::get<HadamardBridge>(step);
        if (simultaneous) {
            builder.add_hadamard_stage(hb.pairs);
        } else {
            for (const auto &pr : hb.pairs) {
                builder.add_hadamard_stage({pr});
            }
        }
    }
    flush();
    return builder.build("inner-product");
}

namespace {

std::vector<Complex> execute_ideal(const ResonatorPlan &plan) {
    const std::size_t dim = std::size_t{1} << plan.n;
    std::vector<Complex> a(dim, Complex{});
    a[0] = 1.0;
    const double r = 1.0 / std::sqrt(2.0);
    for (const auto &step : plan.steps) {
        std::visit(Overloaded{
                       [&](const HadamardBridge &hb) {
                           for (const auto &[j0, j1] : hb.pairs) {
                               const Complex x = a[j0];
                               const Complex y = a[j1];
                               a[j0] = r * (x + y);
                               a[j1] = r * (x - y);
                           }
                       },
                       [&](const PhaseStep &ps) { a[ps.resonator] *= unit_phase(ps.phi); },
                   },
                   step);
    }
    return a;
}

} // namespace

Execution execute(const ResonatorPlan &plan, const ExecuteOptions &options) {
    plan.validate();
    Execution exec;
    exec.backend = options.backend;
    if (options.backend == Backend::Ideal) {
        exec.y = execute_ideal(plan);
        return exec;
    }
    if (plan.n > options.max_analog_qubits) {
        throw ValidationError("analog backend is limited to N <= " +
                              std::to_string(options.max_analog_qubits));
    }
    const auto schedule = lower_to_schedule(plan, options.design, options.simultaneous);
    exec.readout_time = schedule.readout_time;
    const std::size_t dim = schedule.targets.size();
    std::vector<Complex> initial(dim, Complex{});
    initial[0] = 1.0;
    exec.y = analog::propagate(schedule, initial, options.sim);
    std::size_t hadamard_steps = 0;
    for (const auto &step : plan.steps) {
        hadamard_steps += std::holds_alternative<HadamardBridge>(step) ? 1 : 0;
    }
    const Complex undo = std::polar(1.0, -kPi / 4.0 * static_cast<double>(hadamard_steps % 8));
    for (auto &y : exec.y) {
        y *= undo;
    }
    return exec;
}

// Text format --------------------------------------------------------------------

void write_plan(std::ostream &out, const ResonatorPlan &plan) {
    plan.validate();
    out << "N " << plan.n << '\n';
    out << "# bridges_full " << plan.stats.bridges_full << " bridges_pruned "
        << plan.stats.bridges_pruned << " phase_shifts " << plan.stats.phase_shifts << '\n';
    bool previous_hb = false;
    for (const auto &step : plan.steps) {
        if (const auto *hb = std::get_if<HadamardBridge>(&step)) {
            if (previous_hb) {
                out << '\n';
            }
            for (const auto &[a, b] : hb->pairs) {
                out << "HB " << hb->qubit << ' ' << a << ' ' << b << '\n';
            }
            previous_hb = true;
        } else {
            const auto &ps = std::get<PhaseStep>(step);
            out << "PS " << ps.resonator << ' ' << format_real(ps.phi) << '\n';
            previous_hb = false;
        }
    }
}

ResonatorPlan parse_plan(std::istream &in) {
    ResonatorPlan plan;
    std::optional<HadamardBridge> open;
    std::set<std::size_t> open_used;
    auto close = [&] {
        if (open) {
            plan.steps.emplace_back(std::move(*open));
            open.reset();
            open_used.clear();
        }
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) {
            close();
            continue;
        }
        auto fail = [&](const std::string &msg) {
            return ValidationError("line " + std::to_string(lineno) + ": " + msg);
        };
        std::string extra;
        if (kind == "N") {
            if (!(ls >> plan.n) || (ls >> extra)) {
                throw fail("expected `N <qubits>`");
            }
        } else if (kind == "HB") {
            long long s = 0, a = 0, b = 0;
            if (!(ls >> s >> a >> b) || (ls >> extra) || a < 0 || b < 0) {
                throw fail("expected `HB s j k`");
            }
            const auto ua = static_cast<std::size_t>(a);
            const auto ub = static_cast<std::size_t>(b);
            if (open && (open->qubit != s || open_used.count(ua) || open_used.count(ub))) {
                close();
            }
            if (!open) {
                open = HadamardBridge{static_cast<int>(s), {}};
            }
            open->pairs.emplace_back(std::min(ua, ub), std::max(ua, ub));
            open_used.insert(ua);
            open_used.insert(ub);
        } else if (kind == "PS") {
            close();
            long long j = 0;
            std::string phi;
            if (!(ls >> j >> phi) || (ls >> extra) || j < 0) {
                throw fail("expected `PS j phi`");
            }
            try {
                plan.steps.emplace_back(PhaseStep{static_cast<std::size_t>(j), parse_angle(phi)});
            } catch (const ValidationError &e) {
                throw fail(e.what());
            }
        } else {
            throw fail("unknown plan entry \"" + kind + "\"");
        }
    }
    close();
    if (plan.n < 1) {
        throw ValidationError("plan is missing its `N <qubits>` line");
    }
    plan.validate();
    plan.stats.bridges_full = plan.bridge_count();
    plan.stats.bridges_pruned = plan.stats.bridges_full;
    plan.stats.phase_shifts = static_cast<std::size_t>(std::count_if(
        plan.steps.begin(), plan.steps.end(),
        [](const PlanStep &s) { return std::holds_alternative<PhaseStep>(s); }));
    return plan;
}

void write_outputs_csv(std::ostream &out, const Execution &exec, int n,
                       const std::string &comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << "j,bits,re,im\n";
    for (std::size_t j = 0; j < exec.y.size(); ++j) {
        out << j << ',' << ideal::bit_string(j, n) << ',' << format_real(exec.y[j].real()) << ','
            << format_real(exec.y[j].imag()) << '\n';
    }
}

} // namespace lcq::plan
