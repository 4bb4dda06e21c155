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

#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "lcq/angles.hpp"
#include "lcq/error.hpp"
#include "lcq/synth.hpp"

using namespace lcq;
using namespace lcq::synth;
using boost::multiprecision::cpp_int;

namespace {

const SignPattern kX{4, {-1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}};
const SignPattern kW{4, {1, 1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}};

using SubsetSet = std::set<std::vector<int>, CanonicalLess>;

SubsetSet subsets_of(const std::vector<ideal::MultiControlledPhase> &gates) {
    SubsetSet out;
    for (const auto &g : gates) {
        EXPECT_NEAR(g.phi, kPi, 1e-15);
        auto q = g.qubits;
        std::sort(q.begin(), q.end());
        out.insert(q);
    }
    return out;
}

// Sign of amplitude j from applying the gates to the equal state, computed
// directly from the subset rule.
int oracle_sign(int n, const std::vector<ideal::MultiControlledPhase> &gates, std::size_t j) {
    int s = 1;
    for (const auto &g : gates) {
        if ((j & mask_of_subset(n, g.qubits)) == mask_of_subset(n, g.qubits)) {
            s = -s;
        }
    }
    return s;
}

} // namespace

TEST(Rew, InputStateGateList) {
    const auto r = synthesize_rew(kX);
    EXPECT_EQ(r.global_sign, -1);
    const SubsetSet want{{1}, {2}, {3}, {1, 2}, {2, 3}, {1, 3}, {1, 2, 3}};
    EXPECT_EQ(subsets_of(r.gates), want);
    EXPECT_EQ(r.gates.size(), want.size());
}

TEST(Rew, WeightStateGateList) {
    const auto r = synthesize_rew(kW);
    EXPECT_EQ(r.global_sign, 1);
    const SubsetSet want{{2}, {3}, {1, 2}, {1, 3}, {2, 4}, {1, 2, 4}, {2, 3, 4}, {1, 2, 3, 4}};
    EXPECT_EQ(subsets_of(r.gates), want);
    EXPECT_EQ(r.gates.size(), want.size());
}

TEST(Rew, GatesEmittedInHammingWeightOrder) {
    const auto r = synthesize_rew(kW);
    for (std::size_t i = 1; i < r.gates.size(); ++i) {
        EXPECT_LE(r.gates[i - 1].qubits.size(), r.gates[i].qubits.size());
    }
}

TEST(Rew, AllPlusIsEmpty) {
    const auto r = synthesize_rew(SignPattern{3, std::vector<int>(8, 1)});
    EXPECT_EQ(r.global_sign, 1);
    EXPECT_TRUE(r.gates.empty());
}

TEST(Rew, ExhaustiveThreeQubitRoundTrip) {
    int checked = 0;
    for (unsigned bits = 0; bits < 256; ++bits) {
        SignPattern p{3, {}};
        for (int j = 0; j < 8; ++j) {
            p.signs.push_back((bits >> j) & 1 ? -1 : 1);
        }
        const auto r = synthesize_rew(p);
        const auto reg = ideal::apply(r.program(), ideal::QubitRegister::equal(3));
        for (std::size_t j = 0; j < 8; ++j) {
            ASSERT_EQ(r.global_sign * oracle_sign(3, r.gates, j), p.signs[j]);
            ASSERT_NEAR(reg[j].real(), p.signs[j] / std::sqrt(8.0), 1e-12);
            ASSERT_NEAR(reg[j].imag(), 0.0, 1e-12);
        }
        EXPECT_EQ(sign_pattern_of(reg).signs, p.signs);
        if (p.signs[0] == 1) {
            ++checked;
        }
    }
    EXPECT_EQ(checked, 128);
}

TEST(Rew, RejectsInvalid) {
    EXPECT_THROW((void)synthesize_rew(SignPattern{2, {1, 1, 1}}), ValidationError);
    EXPECT_THROW((void)synthesize_rew(SignPattern{1, {1, 0}}), ValidationError);
}

TEST(Cew, PairWeightFromInclusionExclusion) {
    PhasePattern p{3, std::vector<double>(8, 0.0)};
    p.thetas[0b110] = kPi / 2;
    p.thetas[0b100] = kPi / 4;
    p.thetas[0b010] = kPi / 8;
    const auto h = to_hypergraph(3, synthesize_cew(p));
    EXPECT_NEAR(h.edges.at({1, 2}), kPi / 8, 1e-15);
    EXPECT_NEAR(h.edges.at({1}), kPi / 4, 1e-15);
    EXPECT_NEAR(h.edges.at({2}), kPi / 8, 1e-15);
    // Supersets of the nonzero entries pick up the alternating remainder.
    EXPECT_NEAR(h.edges.at({1, 3}), -kPi / 4, 1e-15);
    EXPECT_NEAR(h.edges.at({2, 3}), -kPi / 8, 1e-15);
    EXPECT_NEAR(h.edges.at({1, 2, 3}), -kPi / 8, 1e-15);
    EXPECT_EQ(h.edges.size(), 6u);
}

TEST(Cew, ZeroPatternIsEmpty) {
    EXPECT_TRUE(synthesize_cew(PhasePattern{4, std::vector<double>(16, 0.0)}).empty());
    EXPECT_THROW((void)synthesize_cew(PhasePattern{1, {0.3, 0.0}}), ValidationError);
}

TEST(Cew, RandomFourQubitRoundTrip) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    for (int trial = 0; trial < 100; ++trial) {
        PhasePattern p{4, {0.0}};
        for (int j = 1; j < 16; ++j) {
            p.thetas.push_back(ang(rng));
        }
        const auto gates = synthesize_cew(p);
        const auto reg = prepare(4, gates);
        for (std::size_t j = 0; j < 16; ++j) {
            ASSERT_NEAR(std::abs(reg[j] - std::polar(0.25, p.thetas[j])), 0.0, 1e-10);
        }
        const auto back = phase_pattern_of(reg);
        for (std::size_t j = 0; j < 16; ++j) {
            ASSERT_NEAR(reduce_angle(back.thetas[j] - p.thetas[j]), 0.0, 1e-10);
        }
    }
}

TEST(Cew, MoebiusInversionInvariant) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    PhasePattern p{3, {0.0}};
    for (int j = 1; j < 8; ++j) {
        p.thetas.push_back(ang(rng));
    }
    const auto h = to_hypergraph(3, synthesize_cew(p));
    for (std::uint64_t s = 1; s < 8; ++s) {
        double sum = 0.0;
        for (const auto &[sub, w] : h.edges) {
            const auto m = mask_of_subset(3, sub);
            if ((m & s) == m) {
                sum += w;
            }
        }
        EXPECT_NEAR(reduce_angle(sum - p.thetas[s]), 0.0, 1e-12);
    }
}

TEST(Subsets, CanonicalOrder) {
    const auto masks = canonical_masks(3);
    std::vector<std::vector<int>> got;
    for (auto m : masks) {
        got.push_back(subset_of_mask(3, m));
    }
    const std::vector<std::vector<int>> want{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
    EXPECT_EQ(got, want);
    EXPECT_EQ(mask_of_subset(3, {1, 3}), 0b101u);
}

TEST(Hypergraph, CountsAndRoundTrip) {
    const auto r = synthesize_rew(kW);
    const auto h = to_hypergraph(4, r.gates);
    EXPECT_EQ(h.count_of_order(1), 2u);
    EXPECT_EQ(h.count_of_order(2), 3u);
    EXPECT_EQ(h.count_of_order(3), 2u);
    EXPECT_EQ(h.count_of_order(4), 1u);
    std::ostringstream out;
    write_hypergraph(out, h);
    EXPECT_NE(out.str().find("vertices 4\n"), std::string::npos);
    EXPECT_NE(out.str().find("loop 2\n"), std::string::npos);
    EXPECT_NE(out.str().find("edge 2 4\n"), std::string::npos);
    EXPECT_NE(out.str().find("hyper {1,2,3,4}\n"), std::string::npos);
    std::istringstream in(out.str());
    const auto back = parse_hypergraph(in);
    EXPECT_EQ(back.n, 4);
    EXPECT_EQ(back.edges, h.edges);
    const auto reg1 = prepare(4, from_hypergraph(back));
    const auto reg2 = prepare(4, r.gates);
    for (std::size_t j = 0; j < 16; ++j) {
        EXPECT_NEAR(std::abs(reg1[j] - reg2[j]), 0.0, 1e-15);
    }
}

TEST(Hypergraph, WeightedEdgesSerialize) {
    HypergraphState h{3, {}};
    h.edges[{1, 3}] = kPi / 4;
    std::ostringstream out;
    write_hypergraph(out, h);
    std::istringstream in(out.str());
    EXPECT_NEAR(parse_hypergraph(in).edges.at({1, 3}), kPi / 4, 1e-12);
    std::istringstream bad("vertices 2\nhyper {1,5}\n");
    EXPECT_THROW((void)parse_hypergraph(bad), ValidationError);
}

TEST(Counts, ClosedFormsExact) {
    for (int n = 1; n <= 6; ++n) {
        const auto c = state_counts(n);
        const cpp_int one = 1;
        EXPECT_EQ(c.graph_states, one << (n + n * (n - 1) / 2));
        EXPECT_EQ(c.rew_states, one << (1 << n));
        EXPECT_EQ(c.hypergraph_states, one << ((1 << n) - 1));
        if (n >= 3) {
            EXPECT_GT(c.rew_states, c.graph_states);
        }
    }
    EXPECT_EQ(state_counts(6).rew_states.str(), "18446744073709551616");
}

TEST(PatternFile, SignAndPhase) {
    std::istringstream s("+1\n-1\n-1\n+1\n");
    EXPECT_TRUE(std::holds_alternative<SignPattern>(read_pattern(s)));
    std::istringstream p("0\npi/2\n# comment\n1\n-pi/4\n");
    const auto v = read_pattern(p);
    ASSERT_TRUE(std::holds_alternative<PhasePattern>(v));
    EXPECT_NEAR(std::get<PhasePattern>(v).thetas[1], kPi / 2, 1e-15);
    std::istringstream bad("+1\n-1\n+1\n");
    EXPECT_THROW((void)read_pattern(bad), ValidationError);
    std::istringstream junk("+1\nabc\n");
    try {
        (void)read_pattern(junk);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}
