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
 * Exact state-vector simulator for the gate set used by the resonator
 * constructions. Qubits are numbered 1..N with qubit 1 the most significant
 * bit of the basis index.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace lcq::ideal {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr int kMaxQubits = 20;

/// Bit mask of qubit `s` (1-based) in an `n`-qubit basis index.
[[nodiscard]] std::uint64_t qubit_mask(int n, int s);

class QubitRegister {
  public:
    enum class Norm { Require, Raw };

    QubitRegister() = default;
    QubitRegister(int num_qubits, Amplitudes amplitudes, Norm norm = Norm::Require);

    static QubitRegister basis(int num_qubits, std::size_t index);
    static QubitRegister zero(int num_qubits) { return basis(num_qubits, 0); }
    /// Equal-coefficient state 2^{-N/2} sum_j |j>.
    static QubitRegister equal(int num_qubits);

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] const Amplitudes &amplitudes() const { return amps_; }
    [[nodiscard]] Amplitudes &mutable_amplitudes() { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t j) const { return amps_[j]; }
    [[nodiscard]] bool raw() const { return raw_; }
    [[nodiscard]] double norm() const;

    /// Throws NumericalError when |norm - 1| exceeds tol.
    void check_normalized(double tol = 1e-12) const;

  private:
    int n_ = 0;
    Amplitudes amps_;
    bool raw_ = false;
};

struct Hadamard {
    int qubit = 1;
};
struct PhaseShift {
    int qubit = 1;
    double phi = 0.0;
};
/// Multiplies alpha_j by e^{i phi} iff every qubit of `qubits` is 1 in j.
struct MultiControlledPhase {
    std::vector<int> qubits;
    double phi = 0.0;
};
struct PauliX {
    int qubit = 1;
};
struct Cnot {
    int control = 1;
    int target = 2;
};
/// (cos t/2, -i sin t/2; i e^{i p} sin t/2, -e^{i p} cos t/2)
struct OneQubitUniversal {
    int qubit = 1;
    double theta = 0.0;
    double phi = 0.0;
};

using GateOp =
    std::variant<Hadamard, PhaseShift, MultiControlledPhase, PauliX, Cnot, OneQubitUniversal>;

/// Gate list plus an explicit global phase factor e^{i global_phase}.
struct Program {
    double global_phase = 0.0;
    std::vector<GateOp> gates;
};

/// Range and shape checks for an `n`-qubit register.
void validate(const GateOp &gate, int n);

[[nodiscard]] bool is_diagonal(const GateOp &gate);

[[nodiscard]] QubitRegister apply(const GateOp &gate, const QubitRegister &reg);
[[nodiscard]] QubitRegister apply(const Program &program, const QubitRegister &reg);
void apply_inplace(const GateOp &gate, QubitRegister &reg);

/// H on every qubit.
[[nodiscard]] QubitRegister walsh_hadamard(const QubitRegister &reg);

[[nodiscard]] Eigen::Matrix2cd hadamard_matrix();
[[nodiscard]] Eigen::Matrix2cd phase_shift_matrix(double phi);
[[nodiscard]] Eigen::Matrix2cd pauli_x_matrix();
[[nodiscard]] Eigen::Matrix2cd one_qubit_universal(double theta, double phi);

/// <a|b> = sum conj(a_j) b_j.
[[nodiscard]] Complex inner_product(const QubitRegister &a, const QubitRegister &b);

namespace kernels {

/// Registers at least this large use the OpenMP kernels.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

namespace serial {
void single_qubit(Amplitudes &a, std::uint64_t mask, const Eigen::Matrix2cd &u);
void masked_phase(Amplitudes &a, std::uint64_t mask, Complex factor);
void controlled_x(Amplitudes &a, std::uint64_t control_mask, std::uint64_t target_mask);
void walsh_hadamard(Amplitudes &a);
} // namespace serial

namespace omp {
void single_qubit(Amplitudes &a, std::uint64_t mask, const Eigen::Matrix2cd &u);
void masked_phase(Amplitudes &a, std::uint64_t mask, Complex factor);
void controlled_x(Amplitudes &a, std::uint64_t control_mask, std::uint64_t target_mask);
void walsh_hadamard(Amplitudes &a);
} // namespace omp

} // namespace kernels

// Text formats -------------------------------------------------------------------

/// Parses one gate line (`H 1`, `P 1 phi`, `Z 2`, `X 1`, `CNOT 1 2`,
/// `CZ 1 2 [phi]`, `MCZ {1,2,3} [phi]`, `U 1 theta phi`).
[[nodiscard]] GateOp parse_gate(std::string_view line);
[[nodiscard]] std::string format_gate(const GateOp &gate);

/// One gate per line; blank lines and `#` comments are skipped; `GPHASE phi`
/// accumulates into the program's global phase.
[[nodiscard]] Program parse_program(std::istream &in);
void write_program(std::ostream &out, const Program &program);

/// CSV rows: index, bit string, Re, Im.
void write_register_csv(std::ostream &out, const QubitRegister &reg);

[[nodiscard]] std::string bit_string(std::size_t index, int n);

} // namespace lcq::ideal
