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

#include "lcq/analog.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <set>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "lcq/angles.hpp"
#include "lcq/error.hpp"
#include "lcq/ideal.hpp"

namespace lcq::analog {

using circuit::PulseProfile;

namespace {

constexpr double kTailWidths = 20.0;

double integrate_smooth(const std::function<double(double)> &f, double a, double b) {
    if (!(b > a)) {
        return 0.0;
    }
    // Piecewise so each panel sees at most a few widths of structure.
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    return GK::integrate(f, a, b, 15, 1e-13);
}

double integrate_pulse(const std::function<double(double)> &f, const PulseProfile &p, double t) {
    const double a = p.t1 - kTailWidths * p.width;
    const double b = std::min(t, p.t2 + kTailWidths * p.width);
    if (!(b > a)) {
        return 0.0;
    }
    const std::vector<double> knots = {a, p.t1 - 2.0 * p.width, p.t1 + 2.0 * p.width,
                                       p.t2 - 2.0 * p.width, p.t2 + 2.0 * p.width, b};
    std::vector<double> pts;
    for (double k : knots) {
        if (k >= a && k <= b) {
            pts.push_back(k);
        }
    }
    std::sort(pts.begin(), pts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        sum += integrate_smooth(f, pts[i], pts[i + 1]);
    }
    return sum;
}

// Smallest duration d in [0, hi] with phase(d) = target; phase is increasing.
double solve_duration(double target, double first_order,
                      const std::function<double(double)> &phase) {
    if (target <= 0.0) {
        return 0.0;
    }
    double hi = std::max(first_order, 1.0);
    while (phase(hi) < target) {
        hi *= 2.0;
        if (hi > 1e9) {
            throw NumericalError("pulse duration search diverged");
        }
    }
    std::uintmax_t iters = 200;
    auto [lo, up] = boost::math::tools::toms748_solve(
        [&](double d) { return phase(d) - target; }, 0.0, hi, -target, phase(hi) - target,
        boost::math::tools::eps_tolerance<double>(48), iters);
    return 0.5 * (lo + up);
}

double reduce_positive(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi - 1e-12 || r < 1e-15) {
        r = 0.0;
    }
    return r;
}

Eigen::MatrixXcd diagonal_nominal(const std::vector<Complex> &d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d.size()),
                                                static_cast<Eigen::Index>(d.size()));
    for (std::size_t k = 0; k < d.size(); ++k) {
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d[k];
    }
    return m;
}

} // namespace

// Parameters ---------------------------------------------------------------------

double DesignParams::omega0() const { return 1.0 / std::sqrt(inductance * capacitance); }

void DesignParams::validate() const {
    if (!(width > 0.0) || !(inductance > 0.0) || !(capacitance > 0.0)) {
        throw ValidationError("pulse width, L and C must be positive");
    }
    if (!(ratio > 0.0 && ratio <= 0.3)) {
        throw ValidationError("capacitance ratio C1/C0 must lie in (0, 0.3]");
    }
    if (!(coupling > 0.0 && coupling <= 0.3)) {
        throw ValidationError("coupling L/L1 must lie in (0, 0.3]");
    }
    if (!(pad >= 0.0) || !(readout_margin > 10.0)) {
        throw ValidationError("pad must be >= 0 and readout margin > 10 widths");
    }
}

void GateSchedule::validate() const {
    network.validate();
    const std::size_t nr = network.num_resonators();
    std::set<std::size_t> seen;
    for (std::size_t j : targets) {
        if (j >= nr || !seen.insert(j).second) {
            throw ValidationError("schedule targets must be distinct resonator indices");
        }
    }
    if (reference >= nr || seen.count(reference) != 0) {
        throw ValidationError("reference resonator must be a separate resonator");
    }
    if (!network.resonators()[reference].capacitance_pulses.empty()) {
        throw ValidationError("reference resonator must not be modulated");
    }
    for (const auto &b : network.bridges()) {
        if (b.from == reference || b.to == reference) {
            throw ValidationError("reference resonator must not be bridged");
        }
    }
    const double last = network.last_pulse_end();
    if (std::isfinite(last) && !(readout_time > last + 10.0 * network.max_pulse_width())) {
        throw ValidationError("readout time must lie beyond the last t2 + 10T");
    }
    if (nominal.size() != 0 && (nominal.rows() != static_cast<Eigen::Index>(targets.size()) ||
                                nominal.cols() != nominal.rows())) {
        throw ValidationError("nominal gate dimension does not match targets");
    }
}

// Phase formulas -----------------------------------------------------------------

PhaseEstimate berry_phase(const PulseProfile &pulse, double base_c, double t, double inductance) {
    pulse.validate();
    if (!(base_c > 0.0) || !(inductance > 0.0)) {
        throw ValidationError("base capacitance and inductance must be positive");
    }
    PhaseEstimate out;
    if (std::abs(pulse.amplitude) / base_c > 0.3) {
        out.warning = "C1/C0 above 0.3: first-order phase formula unreliable";
    }
    if (pulse.amplitude == 0.0) {
        return out;
    }
    const double w0 = 1.0 / std::sqrt(inductance * base_c);
    out.phase = w0 / (2.0 * base_c) *
                integrate_pulse([&](double s) { return pulse.value(s); }, pulse, t);
    return out;
}

double snapshot_phase(const PulseProfile &pulse, double base_c, double t, double inductance) {
    pulse.validate();
    if (!(base_c > 0.0) || !(inductance > 0.0)) {
        throw ValidationError("base capacitance and inductance must be positive");
    }
    if (pulse.amplitude == 0.0) {
        return 0.0;
    }
    if (!(base_c + std::min(0.0, pulse.amplitude) > 0.0)) {
        throw ValidationError("pulse drives the capacitance non-positive");
    }
    const double w0 = 1.0 / std::sqrt(inductance * base_c);
    return integrate_pulse(
        [&](double s) { return w0 - 1.0 / std::sqrt(inductance * (base_c + pulse.value(s))); },
        pulse, t);
}

std::vector<double> snapshot_frequencies(const circuit::ResonatorNetwork &network, double t) {
    if (network.num_resonators() != 2 || network.num_bridges() != 1) {
        throw ValidationError("snapshot frequencies need two resonators and one bridge");
    }
    const auto &r0 = network.resonators()[0];
    const auto &r1 = network.resonators()[1];
    const double c0 = r0.capacitance_at(t);
    const double c1 = r1.capacitance_at(t);
    if (r0.inductance != r1.inductance || std::abs(c0 - c1) > 1e-12 * c0) {
        throw ValidationError("snapshot frequencies need identical resonators");
    }
    const double w = 1.0 / std::sqrt(r0.inductance * c0);
    const double gamma = network.bridges()[0].inverse_inductance_at(t);
    const double ell = std::sqrt(1.0 + 2.0 * r0.inductance * gamma);
    std::vector<double> f = {-ell * w, -w, 0.0, w, ell * w};
    std::sort(f.begin(), f.end());
    return f;
}

double phase_shift_duration(double phi, const DesignParams &params) {
    params.validate();
    const double target = reduce_positive(phi);
    const double first_order = 2.0 * target / (params.ratio * params.omega0());
    if (params.rule == PhaseRule::FirstOrder || target == 0.0) {
        return first_order;
    }
    const double c0 = params.capacitance;
    return solve_duration(target, first_order, [&](double d) {
        const PulseProfile p{-params.ratio * c0, 0.0, d, params.width};
        return -snapshot_phase(p, c0, std::numeric_limits<double>::infinity(), params.inductance);
    });
}

namespace {

double bridge_duration(double antisymmetric_phase, const DesignParams &params) {
    params.validate();
    const double w0 = params.omega0();
    const double first_order = antisymmetric_phase / (params.coupling * w0);
    if (params.rule == PhaseRule::FirstOrder) {
        return first_order;
    }
    return solve_duration(antisymmetric_phase, first_order, [&](double d) {
        const PulseProfile p{params.coupling / params.inductance, 0.0, d, params.width};
        return integrate_pulse(
            [&](double s) {
                return w0 * (std::sqrt(1.0 + 2.0 * params.inductance * p.value(s)) - 1.0);
            },
            p, std::numeric_limits<double>::infinity());
    });
}

} // namespace

double mixing_duration(const DesignParams &params) { return bridge_duration(kPi / 2.0, params); }
double not_duration(const DesignParams &params) { return bridge_duration(kPi, params); }

// Builder ------------------------------------------------------------------------

ScheduleBuilder::ScheduleBuilder(std::size_t num_targets, DesignParams params)
    : params_(params), num_targets_(num_targets),
      network_(circuit::ResonatorNetwork::uniform(num_targets + 1, params.inductance,
                                                  params.capacitance)) {
    params_.validate();
    if (num_targets == 0) {
        throw ValidationError("a schedule needs at least one target resonator");
    }
}

ScheduleBuilder &ScheduleBuilder::start_next_at(double t1) {
    if (!std::isfinite(t1) || t1 < 0.0) {
        throw ValidationError("pulse start must be finite and non-negative");
    }
    forced_t1_ = t1;
    return *this;
}

double ScheduleBuilder::next_t1() const {
    return forced_t1_ ? *forced_t1_ : cursor_ + params_.pad * params_.width;
}

void ScheduleBuilder::check_target(std::size_t j) const {
    if (j >= num_targets_) {
        throw ValidationError("target resonator index out of range");
    }
}

ScheduleBuilder &
ScheduleBuilder::add_phase_stage(const std::vector<std::pair<std::size_t, double>> &shifts) {
    std::set<std::size_t> used;
    std::vector<std::pair<std::size_t, double>> durations;
    for (const auto &[j, phi] : shifts) {
        check_target(j);
        if (!std::isfinite(phi)) {
            throw ValidationError("phase must be finite");
        }
        if (!used.insert(j).second) {
            throw ValidationError("resonator appears twice in one phase stage");
        }
        const double d = phase_shift_duration(phi, params_);
        if (d > 0.0) {
            durations.emplace_back(j, d);
        }
    }
    if (durations.empty()) {
        return *this;
    }
    const double t1 = next_t1();
    double longest = 0.0;
    for (const auto &[j, d] : durations) {
        network_.add_capacitance_pulse(
            j, PulseProfile{-params_.ratio * params_.capacitance, t1, t1 + d, params_.width});
        longest = std::max(longest, d);
    }
    cursor_ = t1 + longest + params_.pad * params_.width;
    forced_t1_.reset();
    return *this;
}

ScheduleBuilder &
ScheduleBuilder::add_bridge_stage(const std::vector<std::pair<std::size_t, std::size_t>> &pairs,
                                  BridgeKind kind) {
    if (pairs.empty()) {
        return *this;
    }
    std::set<std::size_t> used;
    for (const auto &[a, b] : pairs) {
        check_target(a);
        check_target(b);
        if (!used.insert(a).second || !used.insert(b).second) {
            throw ValidationError("overlapping bridges in one stage");
        }
    }
    const double d = kind == BridgeKind::Mixing ? mixing_duration(params_) : not_duration(params_);
    const double t1 = next_t1();
    for (const auto &[a, b] : pairs) {
        const std::size_t bridge = network_.add_bridge(a, b);
        network_.add_bridge_pulse(bridge, PulseProfile{params_.coupling / params_.inductance, t1,
                                                       t1 + d, params_.width});
    }
    cursor_ = t1 + d + params_.pad * params_.width;
    forced_t1_.reset();
    return *this;
}

ScheduleBuilder &
ScheduleBuilder::add_hadamard_stage(const std::vector<std::pair<std::size_t, std::size_t>> &pairs) {
    std::vector<std::pair<std::size_t, double>> shifts;
    for (const auto &pr : pairs) {
        shifts.emplace_back(pr.second, kPi / 2.0);
    }
    add_phase_stage(shifts);
    add_bridge_stage(pairs, BridgeKind::Mixing);
    add_phase_stage(shifts);
    return *this;
}

GateSchedule ScheduleBuilder::build(std::string label, Eigen::MatrixXcd nominal) const {
    GateSchedule s;
    s.network = network_;
    for (std::size_t j = 0; j < num_targets_; ++j) {
        s.targets.push_back(j);
    }
    s.reference = num_targets_;
    s.label = std::move(label);
    s.nominal = std::move(nominal);
    const double last = network_.last_pulse_end();
    s.readout_time = (std::isfinite(last) ? last : cursor_) + params_.readout_margin * params_.width;
    s.validate();
    return s;
}

// Gate designs -------------------------------------------------------------------

Eigen::Matrix2cd mixing_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex p = std::polar(r, kPi / 4.0);
    const Complex m = std::polar(r, -kPi / 4.0);
    Eigen::Matrix2cd u;
    u << p, m, m, p;
    return u;
}

GateSchedule design_phase_shift(double phi, const DesignParams &params, std::optional<double> t1) {
    ScheduleBuilder b(2, params);
    if (t1) {
        b.start_next_at(*t1);
    }
    b.add_phase_stage({{1, phi}});
    return b.build("phase-shift", ideal::phase_shift_matrix(phi));
}

GateSchedule design_mixing(const DesignParams &params, std::optional<double> t1) {
    ScheduleBuilder b(2, params);
    if (t1) {
        b.start_next_at(*t1);
    }
    b.add_bridge_stage({{0, 1}}, BridgeKind::Mixing);
    return b.build("mixing", mixing_matrix());
}

GateSchedule design_not(const DesignParams &params, std::optional<double> t1) {
    ScheduleBuilder b(2, params);
    if (t1) {
        b.start_next_at(*t1);
    }
    b.add_bridge_stage({{0, 1}}, BridgeKind::Not);
    return b.build("not", ideal::pauli_x_matrix());
}

GateSchedule identity_schedule(std::size_t num_targets, const DesignParams &params) {
    ScheduleBuilder b(num_targets, params);
    return b.build("identity", Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(num_targets),
                                                          static_cast<Eigen::Index>(num_targets)));
}

GateSchedule compose_hadamard(const DesignParams &params) {
    ScheduleBuilder b(2, params);
    b.add_hadamard_stage({{0, 1}});
    return b.build("hadamard", ideal::hadamard_matrix());
}

GateSchedule cnot_schedule(const DesignParams &params) {
    ScheduleBuilder b(4, params);
    b.add_bridge_stage({{2, 3}}, BridgeKind::Not);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
    u.row(2).swap(u.row(3));
    return b.build("cnot", u);
}

GateSchedule controlled_phase_schedule(double phi, const DesignParams &params) {
    ScheduleBuilder b(4, params);
    b.add_phase_stage({{3, phi}});
    return b.build("cz", diagonal_nominal({1.0, 1.0, 1.0, std::polar(1.0, phi)}));
}

GateSchedule multi_controlled_phase_schedule(int n, const std::vector<int> &qubits, double phi,
                                             const DesignParams &params) {
    if (qubits.empty()) {
        throw ValidationError("controlled-phase subset must be nonempty");
    }
    if (n < 1 || n > 10) {
        throw ValidationError("analog controlled-phase schedules support 1 <= N <= 10");
    }
    ideal::validate(ideal::MultiControlledPhase{qubits, phi}, n);
    std::uint64_t mask = 0;
    for (int q : qubits) {
        mask |= ideal::qubit_mask(n, q);
    }
    const std::size_t dim = std::size_t{1} << n;
    ScheduleBuilder b(dim, params);
    std::vector<std::pair<std::size_t, double>> shifts;
    std::vector<Complex> diag(dim, 1.0);
    for (std::size_t j = 0; j < dim; ++j) {
        if ((j & mask) == mask) {
            shifts.emplace_back(j, phi);
            diag[j] = std::polar(1.0, phi);
        }
    }
    b.add_phase_stage(shifts);
    return b.build("mcz", diagonal_nominal(diag));
}

// Simulation ---------------------------------------------------------------------

double gate_fidelity(const Eigen::MatrixXcd &nominal, const Eigen::MatrixXcd &actual) {
    if (nominal.rows() != actual.rows() || nominal.cols() != actual.cols() ||
        nominal.rows() != nominal.cols() || nominal.rows() == 0) {
        throw ValidationError("fidelity needs square matrices of equal size");
    }
    const double f = std::abs((nominal.adjoint() * actual).trace()) /
                     static_cast<double>(nominal.rows());
    return std::clamp(f, 0.0, 1.0);
}

namespace {

struct RunResult {
    std::vector<Complex> amplitudes;
    circuit::AnalogState initial;
    circuit::AnalogState final;
};

RunResult run_once(const GateSchedule &schedule, const std::vector<Complex> &initial,
                   const circuit::SimConfig &sim) {
    std::vector<std::size_t> resonators = schedule.targets;
    resonators.push_back(schedule.reference);
    std::vector<Complex> amps = initial;
    amps.emplace_back(1.0, 0.0);
    RunResult r;
    r.initial = circuit::state_from_amplitudes(schedule.network, resonators, amps, 0.0);
    circuit::SimConfig cfg = sim;
    cfg.end_time = schedule.readout_time;
    r.final = circuit::integrate_final(schedule.network, r.initial, cfg);
    const Complex ref =
        circuit::resonator_amplitude(r.final, schedule.network, schedule.reference);
    if (std::abs(ref) < 1e-12) {
        throw NumericalError("reference resonator lost its amplitude");
    }
    const Complex frame = std::conj(ref) / std::abs(ref);
    for (std::size_t j : schedule.targets) {
        r.amplitudes.push_back(circuit::resonator_amplitude(r.final, schedule.network, j) * frame);
    }
    return r;
}

circuit::PhaseAmplitude polar_of(Complex z) {
    const double a = std::abs(z);
    return {a, a > 1e-12 ? reduce_angle(std::arg(z)) : 0.0};
}

} // namespace

std::vector<Complex> propagate(const GateSchedule &schedule, const std::vector<Complex> &initial,
                               const circuit::SimConfig &sim) {
    schedule.validate();
    if (initial.size() != schedule.targets.size()) {
        throw ValidationError("one initial amplitude per target resonator is required");
    }
    return run_once(schedule, initial, sim).amplitudes;
}

AnalogGateReport run_gate(const GateSchedule &schedule, const std::vector<Complex> &initial,
                          const RunOptions &options) {
    schedule.validate();
    options.sim.validate();
    const std::size_t dim = schedule.targets.size();
    if (initial.size() != dim) {
        throw ValidationError("one initial amplitude per target resonator is required");
    }
    for (const auto &a : initial) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ValidationError("initial amplitudes must be finite");
        }
    }

    const std::size_t runs = 1 + (options.reconstruct_unitary ? dim : 0);
    std::vector<RunResult> results(runs);
    std::vector<std::exception_ptr> errors(runs);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(runs); ++k) {
        try {
            std::vector<Complex> input = initial;
            if (k > 0) {
                input.assign(dim, Complex{});
                input[static_cast<std::size_t>(k - 1)] = 1.0;
            }
            results[static_cast<std::size_t>(k)] = run_once(schedule, input, options.sim);
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    AnalogGateReport rep;
    rep.label = schedule.label;
    const auto &main = results.front();
    rep.final_amplitudes = main.amplitudes;
    for (std::size_t j = 0; j < dim; ++j) {
        rep.before.push_back(polar_of(initial[j]));
        rep.after.push_back(polar_of(main.amplitudes[j]));
    }
    rep.energy_before = circuit::total_energy(main.initial, schedule.network, main.initial.time);
    rep.energy_after = circuit::total_energy(main.final, schedule.network, main.final.time);
    for (std::size_t b = 0; b < main.final.bridge_currents.size(); ++b) {
        const double i = std::abs(main.final.bridge_currents[b]);
        rep.residual_bridge_currents.push_back(i);
        if (i > options.residual_tolerance) {
            rep.warnings.push_back("residual current " + format_real(i) + " in bridge " +
                                   std::to_string(b));
        }
    }
    if (options.reconstruct_unitary) {
        const auto n = static_cast<Eigen::Index>(dim);
        rep.unitary = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t k = 0; k < dim; ++k) {
            for (std::size_t j = 0; j < dim; ++j) {
                rep.unitary(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
                    results[k + 1].amplitudes[j];
            }
        }
        const Eigen::MatrixXcd g = rep.unitary.adjoint() * rep.unitary -
                                   Eigen::MatrixXcd::Identity(n, n);
        rep.unitarity_error = g.cwiseAbs().maxCoeff();
        if (schedule.nominal.size() != 0) {
            rep.fidelity = gate_fidelity(schedule.nominal, rep.unitary);
        }
    }
    return rep;
}

} // namespace lcq::analog
