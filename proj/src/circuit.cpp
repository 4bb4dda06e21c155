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

#include "lcq/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "lcq/angles.hpp"
#include "lcq/error.hpp"

namespace lcq::circuit {

// Pulses -----------------------------------------------------------------------

void PulseProfile::validate() const {
    if (!std::isfinite(amplitude) || !std::isfinite(t1) || !std::isfinite(t2) ||
        !std::isfinite(width)) {
        throw ValidationError("pulse parameters must be finite");
    }
    if (t1 > t2) {
        throw ValidationError("pulse requires t1 <= t2");
    }
    if (width <= 0.0) {
        throw ValidationError("pulse smoothing width T must be positive");
    }
}

namespace {

// tanh(a) - tanh(b) for a >= b >= 1 without cancellation.
double tail_difference(double a, double b) {
    const double eb = std::exp(-2.0 * b);
    const double ea = std::exp(-2.0 * a);
    return 2.0 * eb * -std::expm1(-2.0 * (a - b)) / ((1.0 + ea) * (1.0 + eb));
}

} // namespace

double PulseProfile::value(double t) const {
    const double a = (t - t1) / width;
    const double b = (t - t2) / width;
    // Beyond 20 widths the pulse is below exp(-40) of its amplitude.
    if (b > 20.0 || a < -20.0) {
        return 0.0;
    }
    double diff = 0.0;
    if (b >= 1.0) {
        diff = tail_difference(a, b);
    } else if (a <= -1.0) {
        diff = tail_difference(-b, -a);
    } else {
        diff = std::tanh(a) - std::tanh(b);
    }
    return 0.5 * amplitude * diff;
}

double pulse_value(const PulseProfile &profile, double t) { return profile.value(t); }

double train_value(const PulseTrain &train, double t) {
    double sum = 0.0;
    for (const auto &p : train) {
        sum += p.value(t);
    }
    return sum;
}

// Elements ---------------------------------------------------------------------

double Resonator::omega0() const { return 1.0 / std::sqrt(inductance * capacitance); }

double Resonator::capacitance_at(double t) const {
    return capacitance + train_value(capacitance_pulses, t);
}

double Bridge::inverse_inductance_at(double t) const {
    return train_value(inverse_inductance_pulses, t);
}

ResonatorNetwork::ResonatorNetwork(std::vector<Resonator> resonators, std::vector<Bridge> bridges)
    : resonators_(std::move(resonators)), bridges_(std::move(bridges)) {
    validate();
}

ResonatorNetwork ResonatorNetwork::uniform(std::size_t count, double inductance,
                                           double capacitance) {
    std::vector<Resonator> rs(count, Resonator{inductance, capacitance, {}});
    return ResonatorNetwork(std::move(rs), {});
}

std::size_t ResonatorNetwork::add_resonator(Resonator resonator) {
    if (!(resonator.inductance > 0.0) || !(resonator.capacitance > 0.0)) {
        throw ValidationError("resonator L and C must be strictly positive");
    }
    for (const auto &p : resonator.capacitance_pulses) {
        p.validate();
    }
    resonators_.push_back(std::move(resonator));
    return resonators_.size() - 1;
}

std::optional<std::size_t> ResonatorNetwork::find_bridge(std::size_t a, std::size_t b) const {
    for (std::size_t i = 0; i < bridges_.size(); ++i) {
        const auto &br = bridges_[i];
        if ((br.from == a && br.to == b) || (br.from == b && br.to == a)) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t ResonatorNetwork::add_bridge(std::size_t from, std::size_t to) {
    if (from >= resonators_.size() || to >= resonators_.size()) {
        throw ValidationError("bridge endpoint out of range");
    }
    if (from == to) {
        throw ValidationError("bridge endpoints must be distinct");
    }
    if (auto existing = find_bridge(from, to)) {
        return *existing;
    }
    bridges_.push_back(Bridge{from, to, {}});
    return bridges_.size() - 1;
}

void ResonatorNetwork::add_capacitance_pulse(std::size_t resonator, const PulseProfile &pulse) {
    if (resonator >= resonators_.size()) {
        throw ValidationError("resonator index out of range");
    }
    pulse.validate();
    resonators_[resonator].capacitance_pulses.push_back(pulse);
}

void ResonatorNetwork::add_bridge_pulse(std::size_t bridge, const PulseProfile &pulse) {
    if (bridge >= bridges_.size()) {
        throw ValidationError("bridge index out of range");
    }
    pulse.validate();
    bridges_[bridge].inverse_inductance_pulses.push_back(pulse);
}

double ResonatorNetwork::last_pulse_end() const {
    double last = -std::numeric_limits<double>::infinity();
    for (const auto &r : resonators_) {
        for (const auto &p : r.capacitance_pulses) {
            last = std::max(last, p.t2);
        }
    }
    for (const auto &b : bridges_) {
        for (const auto &p : b.inverse_inductance_pulses) {
            last = std::max(last, p.t2);
        }
    }
    return last;
}

double ResonatorNetwork::max_pulse_width() const {
    double w = 0.0;
    for (const auto &r : resonators_) {
        for (const auto &p : r.capacitance_pulses) {
            w = std::max(w, p.width);
        }
    }
    for (const auto &b : bridges_) {
        for (const auto &p : b.inverse_inductance_pulses) {
            w = std::max(w, p.width);
        }
    }
    return w;
}

void ResonatorNetwork::validate() const {
    for (const auto &r : resonators_) {
        if (!(r.inductance > 0.0) || !(r.capacitance > 0.0) || !std::isfinite(r.inductance) ||
            !std::isfinite(r.capacitance)) {
            throw ValidationError("resonator L and C must be strictly positive");
        }
        for (const auto &p : r.capacitance_pulses) {
            p.validate();
        }
    }
    for (std::size_t i = 0; i < bridges_.size(); ++i) {
        const auto &b = bridges_[i];
        if (b.from >= resonators_.size() || b.to >= resonators_.size()) {
            throw ValidationError("bridge endpoint out of range");
        }
        if (b.from == b.to) {
            throw ValidationError("bridge endpoints must be distinct");
        }
        for (const auto &p : b.inverse_inductance_pulses) {
            p.validate();
        }
        for (std::size_t k = 0; k < i; ++k) {
            const auto &o = bridges_[k];
            if ((o.from == b.from && o.to == b.to) || (o.from == b.to && o.to == b.from)) {
                throw ValidationError("at most one bridge per resonator pair");
            }
        }
    }
}

// State ------------------------------------------------------------------------

AnalogState AnalogState::zeros(const ResonatorNetwork &network, double time) {
    AnalogState s;
    s.inductor_currents.assign(network.num_resonators(), 0.0);
    s.bridge_currents.assign(network.num_bridges(), 0.0);
    s.voltages.assign(network.num_resonators(), 0.0);
    s.time = time;
    return s;
}

AnalogState AnalogState::from_flat(std::span<const double> flat, const ResonatorNetwork &network,
                                   double time) {
    const std::size_t nr = network.num_resonators();
    const std::size_t nb = network.num_bridges();
    if (flat.size() != network.state_size()) {
        throw ValidationError("flat state size does not match network");
    }
    AnalogState s;
    s.inductor_currents.assign(flat.begin(), flat.begin() + nr);
    s.bridge_currents.assign(flat.begin() + nr, flat.begin() + nr + nb);
    s.voltages.assign(flat.begin() + nr + nb, flat.end());
    s.time = time;
    return s;
}

std::vector<double> AnalogState::flatten() const {
    std::vector<double> flat;
    flat.reserve(inductor_currents.size() + bridge_currents.size() + voltages.size());
    flat.insert(flat.end(), inductor_currents.begin(), inductor_currents.end());
    flat.insert(flat.end(), bridge_currents.begin(), bridge_currents.end());
    flat.insert(flat.end(), voltages.begin(), voltages.end());
    return flat;
}

void AnalogState::validate_against(const ResonatorNetwork &network) const {
    if (inductor_currents.size() != network.num_resonators() ||
        voltages.size() != network.num_resonators() ||
        bridge_currents.size() != network.num_bridges()) {
        throw ValidationError("state dimensions do not match network");
    }
    auto finite = [](const std::vector<double> &v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    if (!finite(inductor_currents) || !finite(bridge_currents) || !finite(voltages) ||
        !std::isfinite(time)) {
        throw ValidationError("state entries must be finite");
    }
}

void SimConfig::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ValidationError("step size must be positive");
    }
    if (!(end_time >= 0.0) || !std::isfinite(end_time)) {
        throw ValidationError("end time must be non-negative");
    }
    if (sample_every == 0) {
        throw ValidationError("sample_every must be at least 1");
    }
}

// Generator --------------------------------------------------------------------

namespace {

/// Time-dependent coefficients of the generator at one instant.
struct Coefficients {
    std::vector<double> inv_l;
    std::vector<double> inv_c;
    std::vector<double> gamma;

    explicit Coefficients(const ResonatorNetwork &net)
        : inv_l(net.num_resonators()), inv_c(net.num_resonators()), gamma(net.num_bridges()) {
        for (std::size_t j = 0; j < net.num_resonators(); ++j) {
            inv_l[j] = 1.0 / net.resonators()[j].inductance;
        }
    }

    void update(const ResonatorNetwork &net, double t) {
        const auto &rs = net.resonators();
        for (std::size_t j = 0; j < rs.size(); ++j) {
            const double c = rs[j].capacitance_at(t);
            if (!(c > 0.0)) {
                throw NumericalError("modulated capacitance became non-positive");
            }
            inv_c[j] = 1.0 / c;
        }
        const auto &bs = net.bridges();
        for (std::size_t b = 0; b < bs.size(); ++b) {
            gamma[b] = bs[b].inverse_inductance_at(t);
        }
    }
};

void apply_with(const ResonatorNetwork &net, const Coefficients &k, const double *x, double *y) {
    const std::size_t nr = net.num_resonators();
    const std::size_t nb = net.num_bridges();
    const double *current = x;
    const double *bridge_current = x + nr;
    const double *voltage = x + nr + nb;
    double *d_current = y;
    double *d_bridge = y + nr;
    double *d_voltage = y + nr + nb;

    for (std::size_t j = 0; j < nr; ++j) {
        d_current[j] = voltage[j] * k.inv_l[j];
        d_voltage[j] = -current[j];
    }
    const auto &bs = net.bridges();
    for (std::size_t b = 0; b < nb; ++b) {
        const auto &br = bs[b];
        d_bridge[b] = k.gamma[b] * (voltage[br.to] - voltage[br.from]);
        d_voltage[br.from] += bridge_current[b];
        d_voltage[br.to] -= bridge_current[b];
    }
    for (std::size_t j = 0; j < nr; ++j) {
        d_voltage[j] *= k.inv_c[j];
    }
}

} // namespace

void apply_generator(const ResonatorNetwork &network, double t, std::span<const double> x,
                     std::span<double> y) {
    if (x.size() != network.state_size() || y.size() != network.state_size()) {
        throw ValidationError("generator operand size does not match network");
    }
    Coefficients k(network);
    k.update(network, t);
    apply_with(network, k, x.data(), y.data());
}

Eigen::MatrixXd assemble_generator(const ResonatorNetwork &network, double t) {
    const auto n = static_cast<Eigen::Index>(network.state_size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    std::vector<double> col(static_cast<std::size_t>(n), 0.0);
    Coefficients k(network);
    k.update(network, t);
    for (Eigen::Index c = 0; c < n; ++c) {
        e[static_cast<std::size_t>(c)] = 1.0;
        apply_with(network, k, e.data(), col.data());
        for (Eigen::Index r = 0; r < n; ++r) {
            a(r, c) = col[static_cast<std::size_t>(r)];
        }
        e[static_cast<std::size_t>(c)] = 0.0;
    }
    return a;
}

// Integration ------------------------------------------------------------------

void integrate(const ResonatorNetwork &network, const AnalogState &initial,
               const SimConfig &config, const std::function<void(const AnalogState &)> &observer) {
    config.validate();
    network.validate();
    initial.validate_against(network);
    const double t0 = initial.time;
    if (config.end_time < t0) {
        throw ValidationError("end time precedes the initial state's time");
    }

    std::vector<double> x = initial.flatten();
    observer(initial);
    if (config.end_time == t0) {
        return;
    }

    const double span = config.end_time - t0;
    const auto steps = static_cast<std::size_t>(
        std::max(1.0, std::ceil(span / config.step - 1e-9)));
    const double h = span / static_cast<double>(steps);

    const std::size_t n = x.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    Coefficients c_start(network), c_mid(network), c_end(network);
    c_end.update(network, t0);

    for (std::size_t step = 0; step < steps; ++step) {
        const double t = t0 + h * static_cast<double>(step);
        std::swap(c_start, c_end);
        c_mid.update(network, t + 0.5 * h);
        c_end.update(network, t + h);

        apply_with(network, c_start, x.data(), k1.data());
        for (std::size_t i = 0; i < n; ++i) {
            tmp[i] = x[i] + 0.5 * h * k1[i];
        }
        apply_with(network, c_mid, tmp.data(), k2.data());
        for (std::size_t i = 0; i < n; ++i) {
            tmp[i] = x[i] + 0.5 * h * k2[i];
        }
        apply_with(network, c_mid, tmp.data(), k3.data());
        for (std::size_t i = 0; i < n; ++i) {
            tmp[i] = x[i] + h * k3[i];
        }
        apply_with(network, c_end, tmp.data(), k4.data());
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            finite = finite && std::isfinite(x[i]);
        }
        if (!finite) {
            throw NumericalError("integration produced a non-finite state at t = " +
                                 format_real(t + h));
        }
        const bool last = step + 1 == steps;
        if (last || (step + 1) % config.sample_every == 0) {
            const double t_next = last ? config.end_time : t + h;
            observer(AnalogState::from_flat(x, network, t_next));
        }
    }
}

Trajectory integrate(const ResonatorNetwork &network, const AnalogState &initial,
                     const SimConfig &config) {
    Trajectory out;
    integrate(network, initial, config, [&out](const AnalogState &s) { out.push_back(s); });
    return out;
}

AnalogState integrate_final(const ResonatorNetwork &network, const AnalogState &initial,
                            const SimConfig &config) {
    SimConfig sparse = config;
    sparse.sample_every = std::numeric_limits<std::size_t>::max();
    AnalogState last;
    integrate(network, initial, sparse, [&last](const AnalogState &s) { last = s; });
    return last;
}

// Observables ------------------------------------------------------------------

double total_energy(const AnalogState &state, const ResonatorNetwork &network, double t,
                    const EnergyOptions &options) {
    state.validate_against(network);
    double energy = 0.0;
    const auto &rs = network.resonators();
    for (std::size_t j = 0; j < rs.size(); ++j) {
        const double v = state.voltages[j];
        const double i = state.inductor_currents[j];
        energy += 0.5 * rs[j].capacitance_at(t) * v * v + 0.5 * rs[j].inductance * i * i;
    }
    const auto &bs = network.bridges();
    for (std::size_t b = 0; b < bs.size(); ++b) {
        const double gamma = bs[b].inverse_inductance_at(t);
        const double i = state.bridge_currents[b];
        if (std::abs(gamma) < options.open_bridge_threshold) {
            if (std::abs(i) > options.stranded_current_tolerance) {
                throw NumericalError("stranded bridge current " + format_real(i) + " in bridge " +
                                     std::to_string(b));
            }
            continue;
        }
        energy += 0.5 * i * i / gamma;
    }
    return energy;
}

namespace {

std::complex<double> rotating_frame_amplitude(const AnalogState &state,
                                              const ResonatorNetwork &network,
                                              std::size_t resonator,
                                              const ExtractOptions &options) {
    state.validate_against(network);
    if (resonator >= network.num_resonators()) {
        throw ValidationError("resonator index out of range");
    }
    const auto &r = network.resonators()[resonator];
    if (options.require_unperturbed) {
        const double c = r.capacitance_at(state.time);
        if (std::abs(c - r.capacitance) > options.perturbation_tolerance * r.capacitance) {
            throw ValidationError("resonator " + std::to_string(resonator) +
                                  " is modulated at the sample time");
        }
    }
    const double scaled_current = std::sqrt(r.inductance / r.capacitance) *
                                  state.inductor_currents[resonator];
    const std::complex<double> z(state.voltages[resonator], scaled_current);
    return z * std::polar(1.0, -std::fmod(r.omega0() * state.time, kTwoPi));
}

} // namespace

std::complex<double> resonator_amplitude(const AnalogState &state, const ResonatorNetwork &network,
                                         std::size_t resonator, const ExtractOptions &options) {
    return rotating_frame_amplitude(state, network, resonator, options);
}

PhaseAmplitude extract_phase_amplitude(const AnalogState &state, const ResonatorNetwork &network,
                                       std::size_t resonator, const ExtractOptions &options) {
    const auto z = rotating_frame_amplitude(state, network, resonator, options);
    const double amplitude = std::abs(z);
    if (amplitude < options.degenerate_tolerance) {
        throw NumericalError("degenerate amplitude on resonator " + std::to_string(resonator));
    }
    return {amplitude, reduce_angle(std::arg(z))};
}

std::vector<std::complex<double>> to_wavefunction(const AnalogState &state,
                                                  const ResonatorNetwork &network,
                                                  std::span<const std::size_t> resonators,
                                                  std::optional<std::size_t> reference,
                                                  const ExtractOptions &options) {
    std::complex<double> frame(1.0, 0.0);
    if (reference) {
        const auto ref = rotating_frame_amplitude(state, network, *reference, options);
        if (std::abs(ref) < options.degenerate_tolerance) {
            throw NumericalError("reference resonator has degenerate amplitude");
        }
        frame = std::conj(ref) / std::abs(ref);
    }
    std::vector<std::complex<double>> alpha;
    alpha.reserve(resonators.size());
    double norm2 = 0.0;
    for (std::size_t j : resonators) {
        auto z = rotating_frame_amplitude(state, network, j, options) * frame;
        if (std::abs(z) < options.degenerate_tolerance) {
            z = 0.0;
        }
        norm2 += std::norm(z);
        alpha.push_back(z);
    }
    if (!(norm2 > 0.0)) {
        throw NumericalError("zero total amplitude; wavefunction undefined");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &a : alpha) {
        a *= inv;
    }
    return alpha;
}

std::vector<std::complex<double>> to_wavefunction(const AnalogState &state,
                                                  const ResonatorNetwork &network) {
    std::vector<std::size_t> all(network.num_resonators());
    for (std::size_t j = 0; j < all.size(); ++j) {
        all[j] = j;
    }
    return to_wavefunction(state, network, all, std::nullopt);
}

AnalogState state_from_amplitudes(const ResonatorNetwork &network,
                                  std::span<const std::size_t> resonators,
                                  std::span<const std::complex<double>> amplitudes, double t) {
    if (resonators.size() != amplitudes.size()) {
        throw ValidationError("one amplitude per listed resonator is required");
    }
    AnalogState s = AnalogState::zeros(network, t);
    for (std::size_t k = 0; k < resonators.size(); ++k) {
        const std::size_t j = resonators[k];
        if (j >= network.num_resonators()) {
            throw ValidationError("resonator index out of range");
        }
        const auto &r = network.resonators()[j];
        const auto z = amplitudes[k] * std::polar(1.0, std::fmod(r.omega0() * t, kTwoPi));
        s.voltages[j] = z.real();
        s.inductor_currents[j] = z.imag() * std::sqrt(r.capacitance / r.inductance);
    }
    return s;
}

// CSV --------------------------------------------------------------------------

std::vector<std::string> state_variable_names(const ResonatorNetwork &network) {
    std::vector<std::string> names;
    names.reserve(network.state_size());
    for (std::size_t j = 0; j < network.num_resonators(); ++j) {
        names.push_back("I" + std::to_string(j));
    }
    for (std::size_t b = 0; b < network.num_bridges(); ++b) {
        names.push_back("Ib" + std::to_string(b));
    }
    for (std::size_t j = 0; j < network.num_resonators(); ++j) {
        names.push_back("V" + std::to_string(j));
    }
    return names;
}

void write_trajectory_csv(std::ostream &out, const Trajectory &trajectory,
                          const ResonatorNetwork &network, const std::string &comment) {
    if (!comment.empty()) {
        std::size_t start = 0;
        while (start <= comment.size()) {
            const auto end = comment.find('\n', start);
            out << "# " << comment.substr(start, end - start) << '\n';
            if (end == std::string::npos) {
                break;
            }
            start = end + 1;
        }
    }
    out << "time";
    for (const auto &name : state_variable_names(network)) {
        out << ',' << name;
    }
    out << '\n';
    for (const auto &s : trajectory) {
        out << format_real(s.time);
        for (double v : s.flatten()) {
            out << ',' << format_real(v);
        }
        out << '\n';
    }
}

} // namespace lcq::circuit
