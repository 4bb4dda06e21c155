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

#include "lcq/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "lcq/angles.hpp"
#include "lcq/error.hpp"

namespace lcq::ideal {

std::uint64_t qubit_mask(int n, int s) {
    if (s < 1 || s > n) {
        throw ValidationError("qubit index " + std::to_string(s) + " outside [1, " +
                              std::to_string(n) + "]");
    }
    return std::uint64_t{1} << (n - s);
}

// Register -----------------------------------------------------------------------

namespace {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw ValidationError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
}

} // namespace

QubitRegister::QubitRegister(int num_qubits, Amplitudes amplitudes, Norm mode)
    : n_(num_qubits), amps_(std::move(amplitudes)), raw_(mode == Norm::Raw) {
    check_qubit_count(n_);
    if (amps_.size() != (std::size_t{1} << n_)) {
        throw ValidationError("register needs 2^N amplitudes");
    }
    for (const auto &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ValidationError("register amplitudes must be finite");
        }
    }
    if (!raw_ && std::abs(norm() - 1.0) > 1e-12) {
        throw ValidationError("register is not normalized");
    }
}

QubitRegister QubitRegister::basis(int num_qubits, std::size_t index) {
    check_qubit_count(num_qubits);
    Amplitudes a(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    if (index >= a.size()) {
        throw ValidationError("basis index out of range");
    }
    a[index] = 1.0;
    return QubitRegister(num_qubits, std::move(a));
}

QubitRegister QubitRegister::equal(int num_qubits) {
    check_qubit_count(num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    return QubitRegister(num_qubits,
                         Amplitudes(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0}));
}

double QubitRegister::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void QubitRegister::check_normalized(double tol) const {
    const double nm = norm();
    if (std::abs(nm - 1.0) > tol) {
        throw NumericalError("register norm drifted to " + format_real(nm));
    }
}

// Kernels ------------------------------------------------------------------------

namespace kernels {

namespace serial {

void single_qubit(Amplitudes &a, std::uint64_t mask, const Eigen::Matrix2cd &u) {
    const std::size_t dim = a.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) != 0) {
            continue;
        }
        const std::size_t j = i | mask;
        const Complex a0 = a[i];
        const Complex a1 = a[j];
        a[i] = u(0, 0) * a0 + u(0, 1) * a1;
        a[j] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void masked_phase(Amplitudes &a, std::uint64_t mask, Complex factor) {
    const std::size_t dim = a.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) {
            a[i] *= factor;
        }
    }
}

void controlled_x(Amplitudes &a, std::uint64_t control_mask, std::uint64_t target_mask) {
    const std::size_t dim = a.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & control_mask) == control_mask && (i & target_mask) == 0) {
            std::swap(a[i], a[i | target_mask]);
        }
    }
}

void walsh_hadamard(Amplitudes &a) {
    const std::size_t dim = a.size();
    for (std::size_t h = 1; h < dim; h <<= 1) {
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & h) != 0) {
                continue;
            }
            const Complex x = a[i];
            const Complex y = a[i | h];
            a[i] = x + y;
            a[i | h] = x - y;
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (auto &x : a) {
        x *= scale;
    }
}

} // namespace serial

namespace omp {

namespace {

// k-th index whose `mask` bit is clear.
inline std::size_t insert_zero(std::size_t k, std::uint64_t mask) {
    const std::size_t low = k & (mask - 1);
    return ((k - low) << 1) | low;
}

} // namespace

void single_qubit(Amplitudes &a, std::uint64_t mask, const Eigen::Matrix2cd &u) {
    const auto half = static_cast<std::ptrdiff_t>(a.size() / 2);
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < half; ++k) {
        const std::size_t i = insert_zero(static_cast<std::size_t>(k), mask);
        const std::size_t j = i | mask;
        const Complex a0 = a[i];
        const Complex a1 = a[j];
        a[i] = u00 * a0 + u01 * a1;
        a[j] = u10 * a0 + u11 * a1;
    }
}

void masked_phase(Amplitudes &a, std::uint64_t mask, Complex factor) {
    const auto dim = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < dim; ++i) {
        if ((static_cast<std::uint64_t>(i) & mask) == mask) {
            a[static_cast<std::size_t>(i)] *= factor;
        }
    }
}

void controlled_x(Amplitudes &a, std::uint64_t control_mask, std::uint64_t target_mask) {
    const auto half = static_cast<std::ptrdiff_t>(a.size() / 2);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < half; ++k) {
        const std::size_t i = insert_zero(static_cast<std::size_t>(k), target_mask);
        if ((i & control_mask) == control_mask) {
            std::swap(a[i], a[i | target_mask]);
        }
    }
}

void walsh_hadamard(Amplitudes &a) {
    const std::size_t dim = a.size();
    const auto half = static_cast<std::ptrdiff_t>(dim / 2);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
#pragma omp parallel
    {
        for (std::size_t h = 1; h < dim; h <<= 1) {
#pragma omp for schedule(static)
            for (std::ptrdiff_t k = 0; k < half; ++k) {
                const std::size_t i = insert_zero(static_cast<std::size_t>(k), h);
                const Complex x = a[i];
                const Complex y = a[i | h];
                a[i] = x + y;
                a[i | h] = x - y;
            }
        }
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(dim); ++i) {
            a[static_cast<std::size_t>(i)] *= scale;
        }
    }
}

} // namespace omp

} // namespace kernels

namespace {

bool use_parallel(const Amplitudes &a) { return a.size() >= kernels::kParallelThreshold; }

void run_single_qubit(Amplitudes &a, std::uint64_t mask, const Eigen::Matrix2cd &u) {
    use_parallel(a) ? kernels::omp::single_qubit(a, mask, u)
                    : kernels::serial::single_qubit(a, mask, u);
}

void run_masked_phase(Amplitudes &a, std::uint64_t mask, Complex factor) {
    use_parallel(a) ? kernels::omp::masked_phase(a, mask, factor)
                    : kernels::serial::masked_phase(a, mask, factor);
}

void run_controlled_x(Amplitudes &a, std::uint64_t control, std::uint64_t target) {
    use_parallel(a) ? kernels::omp::controlled_x(a, control, target)
                    : kernels::serial::controlled_x(a, control, target);
}

void check_angle(double x) {
    if (!std::isfinite(x)) {
        throw ValidationError("gate angle must be finite");
    }
}

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

// Gates --------------------------------------------------------------------------

void validate(const GateOp &gate, int n) {
    std::visit(Overloaded{
                   [n](const Hadamard &g) { (void)qubit_mask(n, g.qubit); },
                   [n](const PhaseShift &g) {
                       (void)qubit_mask(n, g.qubit);
                       check_angle(g.phi);
                   },
                   [n](const MultiControlledPhase &g) {
                       if (g.qubits.empty()) {
                           throw ValidationError("controlled-phase subset must be nonempty");
                       }
                       std::uint64_t seen = 0;
                       for (int q : g.qubits) {
                           const auto m = qubit_mask(n, q);
                           if ((seen & m) != 0) {
                               throw ValidationError("repeated qubit in controlled-phase subset");
                           }
                           seen |= m;
                       }
                       check_angle(g.phi);
                   },
                   [n](const PauliX &g) { (void)qubit_mask(n, g.qubit); },
                   [n](const Cnot &g) {
                       if (qubit_mask(n, g.control) == qubit_mask(n, g.target)) {
                           throw ValidationError("CNOT control and target must differ");
                       }
                   },
                   [n](const OneQubitUniversal &g) {
                       (void)qubit_mask(n, g.qubit);
                       check_angle(g.theta);
                       check_angle(g.phi);
                   },
               },
               gate);
}

bool is_diagonal(const GateOp &gate) {
    return std::holds_alternative<PhaseShift>(gate) ||
           std::holds_alternative<MultiControlledPhase>(gate);
}

void apply_inplace(const GateOp &gate, QubitRegister &reg) {
    const int n = reg.num_qubits();
    validate(gate, n);
    auto &a = reg.mutable_amplitudes();
    std::visit(Overloaded{
                   [&](const Hadamard &g) { run_single_qubit(a, qubit_mask(n, g.qubit), hadamard_matrix()); },
                   [&](const PhaseShift &g) {
                       run_masked_phase(a, qubit_mask(n, g.qubit), unit_phase(g.phi));
                   },
                   [&](const MultiControlledPhase &g) {
                       std::uint64_t mask = 0;
                       for (int q : g.qubits) {
                           mask |= qubit_mask(n, q);
                       }
                       run_masked_phase(a, mask, unit_phase(g.phi));
                   },
                   [&](const PauliX &g) { run_controlled_x(a, 0, qubit_mask(n, g.qubit)); },
                   [&](const Cnot &g) {
                       run_controlled_x(a, qubit_mask(n, g.control), qubit_mask(n, g.target));
                   },
                   [&](const OneQubitUniversal &g) {
                       run_single_qubit(a, qubit_mask(n, g.qubit), one_qubit_universal(g.theta, g.phi));
                   },
               },
               gate);
}

QubitRegister apply(const GateOp &gate, const QubitRegister &reg) {
    QubitRegister out = reg;
    apply_inplace(gate, out);
    return out;
}

QubitRegister apply(const Program &program, const QubitRegister &reg) {
    QubitRegister out = reg;
    for (const auto &g : program.gates) {
        apply_inplace(g, out);
    }
    if (program.global_phase != 0.0) {
        const Complex f = unit_phase(program.global_phase);
        for (auto &x : out.mutable_amplitudes()) {
            x *= f;
        }
    }
    return out;
}

QubitRegister walsh_hadamard(const QubitRegister &reg) {
    QubitRegister out = reg;
    auto &a = out.mutable_amplitudes();
    use_parallel(a) ? kernels::omp::walsh_hadamard(a) : kernels::serial::walsh_hadamard(a);
    return out;
}

Eigen::Matrix2cd hadamard_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd h;
    h << r, r, r, -r;
    return h;
}

Eigen::Matrix2cd phase_shift_matrix(double phi) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    u(1, 1) = unit_phase(phi);
    return u;
}

Eigen::Matrix2cd pauli_x_matrix() {
    Eigen::Matrix2cd x;
    x << 0.0, 1.0, 1.0, 0.0;
    return x;
}

Eigen::Matrix2cd one_qubit_universal(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex i(0.0, 1.0);
    const Complex e = std::polar(1.0, phi);
    Eigen::Matrix2cd u;
    u << c, -i * s, i * e * s, -e * c;
    return u;
}

Complex inner_product(const QubitRegister &a, const QubitRegister &b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("inner product of registers with different sizes");
    }
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < a.dim(); ++j) {
        sum += std::conj(a[j]) * b[j];
    }
    return sum;
}

// Text formats -------------------------------------------------------------------

namespace {

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        std::size_t j = i;
        if (line[i] == '{') {
            j = line.find('}', i);
            if (j == std::string_view::npos) {
                throw ValidationError("unterminated qubit set in \"" + std::string(line) + "\"");
            }
            ++j;
        } else {
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
                ++j;
            }
        }
        out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_qubit(const std::string &s) {
    std::size_t used = 0;
    int q = 0;
    try {
        q = std::stoi(s, &used);
    } catch (const std::exception &) {
        throw ValidationError("bad qubit index \"" + s + "\"");
    }
    if (used != s.size()) {
        throw ValidationError("bad qubit index \"" + s + "\"");
    }
    return q;
}

std::vector<int> parse_qubit_set(const std::string &s) {
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
        throw ValidationError("expected a qubit set like {1,2,3}");
    }
    std::vector<int> qs;
    std::string body = s.substr(1, s.size() - 2);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::string tok;
    while (in >> tok) {
        qs.push_back(parse_qubit(tok));
    }
    if (qs.empty()) {
        throw ValidationError("controlled-phase subset must be nonempty");
    }
    return qs;
}

void expect_args(const std::vector<std::string> &w, std::size_t lo, std::size_t hi) {
    if (w.size() < lo + 1 || w.size() > hi + 1) {
        throw ValidationError("wrong number of arguments for gate " + w.front());
    }
}

} // namespace

GateOp parse_gate(std::string_view line) {
    const auto w = split_words(line);
    if (w.empty()) {
        throw ValidationError("empty gate line");
    }
    std::string op = w.front();
    std::transform(op.begin(), op.end(), op.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (op == "H") {
        expect_args(w, 1, 1);
        return Hadamard{parse_qubit(w[1])};
    }
    if (op == "P") {
        expect_args(w, 2, 2);
        return PhaseShift{parse_qubit(w[1]), reduce_angle(parse_angle(w[2]))};
    }
    if (op == "Z") {
        expect_args(w, 1, 1);
        return MultiControlledPhase{{parse_qubit(w[1])}, kPi};
    }
    if (op == "X") {
        expect_args(w, 1, 1);
        return PauliX{parse_qubit(w[1])};
    }
    if (op == "CNOT" || op == "CX") {
        expect_args(w, 2, 2);
        return Cnot{parse_qubit(w[1]), parse_qubit(w[2])};
    }
    if (op == "CZ") {
        expect_args(w, 2, 3);
        const double phi = w.size() == 4 ? reduce_angle(parse_angle(w[3])) : kPi;
        return MultiControlledPhase{{parse_qubit(w[1]), parse_qubit(w[2])}, phi};
    }
    if (op == "MCZ") {
        expect_args(w, 1, 2);
        const double phi = w.size() == 3 ? reduce_angle(parse_angle(w[2])) : kPi;
        return MultiControlledPhase{parse_qubit_set(w[1]), phi};
    }
    if (op == "U") {
        expect_args(w, 3, 3);
        return OneQubitUniversal{parse_qubit(w[1]), parse_angle(w[2]), parse_angle(w[3])};
    }
    throw ValidationError("unknown gate \"" + w.front() + "\"");
}

std::string format_gate(const GateOp &gate) {
    return std::visit(
        Overloaded{
            [](const Hadamard &g) { return "H " + std::to_string(g.qubit); },
            [](const PhaseShift &g) {
                return "P " + std::to_string(g.qubit) + " " + format_real(g.phi);
            },
            [](const MultiControlledPhase &g) {
                if (g.qubits.size() == 2) {
                    return "CZ " + std::to_string(g.qubits[0]) + " " +
                           std::to_string(g.qubits[1]) + " " + format_real(g.phi);
                }
                std::string s = "MCZ {";
                for (std::size_t k = 0; k < g.qubits.size(); ++k) {
                    s += (k ? "," : "") + std::to_string(g.qubits[k]);
                }
                return s + "} " + format_real(g.phi);
            },
            [](const PauliX &g) { return "X " + std::to_string(g.qubit); },
            [](const Cnot &g) {
                return "CNOT " + std::to_string(g.control) + " " + std::to_string(g.target);
            },
            [](const OneQubitUniversal &g) {
                return "U " + std::to_string(g.qubit) + " " + format_real(g.theta) + " " +
                       format_real(g.phi);
            },
        },
        gate);
}

Program parse_program(std::istream &in) {
    Program prog;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto w = split_words(line);
        if (w.empty()) {
            continue;
        }
        try {
            if (w.front() == "GPHASE" || w.front() == "gphase") {
                expect_args(w, 1, 1);
                prog.global_phase = reduce_angle(prog.global_phase + parse_angle(w[1]));
            } else {
                prog.gates.push_back(parse_gate(line));
            }
        } catch (const ValidationError &e) {
            throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return prog;
}

void write_program(std::ostream &out, const Program &program) {
    if (program.global_phase != 0.0) {
        out << "GPHASE " << format_real(program.global_phase) << '\n';
    }
    for (const auto &g : program.gates) {
        out << format_gate(g) << '\n';
    }
}

std::string bit_string(std::size_t index, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k) {
        if ((index >> (n - 1 - k)) & 1U) {
            s[static_cast<std::size_t>(k)] = '1';
        }
    }
    return s;
}

void write_register_csv(std::ostream &out, const QubitRegister &reg) {
    out << "index,bits,re,im\n";
    for (std::size_t j = 0; j < reg.dim(); ++j) {
        out << j << ',' << bit_string(j, reg.num_qubits()) << ',' << format_real(reg[j].real())
            << ',' << format_real(reg[j].imag()) << '\n';
    }
}

} // namespace lcq::ideal
