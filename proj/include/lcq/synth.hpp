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
 * Sign/phase patterns of equally weighted states, their decomposition into
 * multi-controlled phase gates, and the equivalent hypergraph description.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lcq/ideal.hpp"

namespace lcq::synth {

/// Amplitude signs of a real equally weighted state, indexed by basis state.
struct SignPattern {
    int n = 0;
    std::vector<int> signs;

    void validate() const;
};

/// Amplitude phases of a complex equally weighted state; thetas[0] is 0.
struct PhasePattern {
    int n = 0;
    std::vector<double> thetas;

    void validate() const;
};

struct RewSynthesis {
    int global_sign = 1;
    std::vector<ideal::MultiControlledPhase> gates;

    [[nodiscard]] ideal::Program program() const;
};

/// Layered by Hamming weight, flipping supersets eagerly.
[[nodiscard]] RewSynthesis synthesize_rew(const SignPattern &pattern);

/// Inclusion-exclusion over bit supports; zero weights are dropped.
[[nodiscard]] std::vector<ideal::MultiControlledPhase> synthesize_cew(const PhasePattern &pattern);

/// Gates applied to the equal-coefficient state, times e^{i global_phase}.
[[nodiscard]] ideal::QubitRegister prepare(int n,
                                           const std::vector<ideal::MultiControlledPhase> &gates,
                                           double global_phase = 0.0);

/// Signs of a real register's amplitudes (zero amplitudes are rejected).
[[nodiscard]] SignPattern sign_pattern_of(const ideal::QubitRegister &reg);
/// Phases relative to amplitude 0.
[[nodiscard]] PhasePattern phase_pattern_of(const ideal::QubitRegister &reg);

// Subsets ------------------------------------------------------------------------

[[nodiscard]] std::vector<int> subset_of_mask(int n, std::uint64_t mask);
[[nodiscard]] std::uint64_t mask_of_subset(int n, const std::vector<int> &qubits);

/// Orders by cardinality, then lexicographically by sorted qubit list.
struct CanonicalLess {
    bool operator()(const std::vector<int> &a, const std::vector<int> &b) const;
};

/// Every nonempty subset mask of n qubits in canonical order.
[[nodiscard]] std::vector<std::uint64_t> canonical_masks(int n);

// Hypergraphs --------------------------------------------------------------------

struct HypergraphState {
    int n = 0;
    /// Sorted vertex subset -> weight in (-pi, pi], never 0.
    std::map<std::vector<int>, double, CanonicalLess> edges;

    [[nodiscard]] std::size_t count_of_order(std::size_t order) const;
};

[[nodiscard]] HypergraphState to_hypergraph(int n,
                                            const std::vector<ideal::MultiControlledPhase> &gates);
[[nodiscard]] std::vector<ideal::MultiControlledPhase> from_hypergraph(const HypergraphState &h);

/// `vertices N` then one `loop v`, `edge a b` or `hyper {a,b,c}` line per
/// edge, with ` w=<angle>` appended unless the weight is pi.
void write_hypergraph(std::ostream &out, const HypergraphState &h);
[[nodiscard]] HypergraphState parse_hypergraph(std::istream &in);

// Counting -----------------------------------------------------------------------

struct StateCounts {
    boost::multiprecision::cpp_int graph_states;
    boost::multiprecision::cpp_int rew_states;
    boost::multiprecision::cpp_int hypergraph_states;
};

/// (2^{N + C(N,2)}, 2^{2^N}, 2^{2^N - 1}).
[[nodiscard]] StateCounts state_counts(int n);

// Pattern files ------------------------------------------------------------------

/// One entry per line in basis order. All entries spelled `+1`/`-1` give a
/// sign pattern; anything else is read as radians.
[[nodiscard]] std::variant<SignPattern, PhasePattern> read_pattern(std::istream &in);

} // namespace lcq::synth
