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
#include <sstream>

#include <gtest/gtest.h>

#include "lcq/angles.hpp"
#include "lcq/error.hpp"
#include "lcq/ideal.hpp"
#include "lcq/planner.hpp"

using namespace lcq;
using namespace lcq::plan;

namespace {

const synth::SignPattern kX{4, {-1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}};
const synth::SignPattern kW{4, {1, 1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}};

synth::SignPattern random_signs(int n, std::mt19937_64 &rng) {
    synth::SignPattern p{n, {}};
    for (std::size_t j = 0; j < (std::size_t{1} << n); ++j) {
        p.signs.push_back(rng() & 1 ? -1 : 1);
    }
    return p;
}

// <w|x> for equally weighted states, straight from the amplitudes.
Complex direct_inner(const synth::SignPattern &x, const synth::SignPattern &w) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.signs.size(); ++j) {
        s += x.signs[j] * w.signs[j];
    }
    return s / static_cast<double>(x.signs.size());
}

} // namespace

TEST(Bridges, PairsFlipOneBit) {
    const auto pairs = hadamard_bridges(3, 1);
    ASSERT_EQ(pairs.size(), 4u);
    for (const auto &[a, b] : pairs) {
        EXPECT_LT(a, b);
        EXPECT_EQ(a ^ b, 4u);
    }
    EXPECT_THROW((void)hadamard_bridges(3, 4), ValidationError);
}

TEST(Plan, ThreeEighthsIdeal) {
    const auto p = plan_inner_product(kX, kW);
    const auto e = execute(p);
    EXPECT_NEAR(e.y[0].real(), 0.375, 1e-12);
    EXPECT_NEAR(e.y[0].imag(), 0.0, 1e-12);
    EXPECT_EQ(p.stats.phase_shifts, 5u);
}

TEST(Plan, RandomSignPatternsMatchDirectInnerProduct) {
    std::mt19937_64 rng(31);
    for (int n = 1; n <= 6; ++n) {
        for (int k = 0; k < 10; ++k) {
            const auto x = random_signs(n, rng);
            const auto w = random_signs(n, rng);
            const auto e = execute(plan_inner_product(x, w));
            EXPECT_NEAR(std::abs(e.y[0] - direct_inner(x, w)), 0.0, 1e-12);
        }
    }
}

TEST(Plan, PhasePatternsMatchRegisterInnerProduct) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    synth::PhasePattern x{3, {0.0}}, w{3, {0.0}};
    for (int j = 1; j < 8; ++j) {
        x.thetas.push_back(ang(rng));
        w.thetas.push_back(ang(rng));
    }
    Complex want = 0.0;
    for (std::size_t j = 0; j < 8; ++j) {
        want += std::polar(1.0, x.thetas[j] - w.thetas[j]) / 8.0;
    }
    const auto e = execute(plan_inner_product(x, w));
    EXPECT_NEAR(std::abs(e.y[0] - want), 0.0, 1e-12);
}

TEST(Prune, LayerCountsForSmallN) {
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 6; ++n) {
        auto x = random_signs(n, rng);
        x.signs.back() = -1;
        const auto full = plan_inner_product(x, random_signs(n, rng));
        const std::size_t per_layer_full = static_cast<std::size_t>(n) << (n - 1);
        const std::size_t per_layer_pruned = (std::size_t{1} << n) - 1;
        for (auto c : bridges_per_layer(full)) {
            EXPECT_EQ(c, per_layer_full) << n;
        }
        const auto pruned = prune(full);
        const auto layers = bridges_per_layer(pruned);
        ASSERT_EQ(layers.size(), 2u);
        for (auto c : layers) {
            EXPECT_EQ(c, per_layer_pruned) << n;
        }
        EXPECT_EQ(pruned.stats.bridges_full, 2 * per_layer_full);
        EXPECT_EQ(pruned.stats.bridges_pruned, 2 * per_layer_pruned);
        EXPECT_NEAR(std::abs(execute(full).y[0] - execute(pruned).y[0]), 0.0, 1e-10);
    }
}

TEST(Prune, TenQubitRatio) {
    std::mt19937_64 rng(10);
    const auto p = prune(plan_inner_product(random_signs(10, rng), random_signs(10, rng)));
    const double ratio =
        static_cast<double>(p.stats.bridges_pruned) / static_cast<double>(p.stats.bridges_full);
    EXPECT_NEAR(ratio, 1023.0 / 5120.0, 1e-15);
}

TEST(Prune, InputOnlyPreservesEveryOutput) {
    std::mt19937_64 rng(4);
    const auto full = plan_inner_product(random_signs(4, rng), random_signs(4, rng));
    const auto a = execute(full).y;
    const auto b = execute(prune(full, PruneMode::InputOnly)).y;
    for (std::size_t j = 0; j < a.size(); ++j) {
        EXPECT_NEAR(std::abs(a[j] - b[j]), 0.0, 1e-12);
    }
    const auto layers = bridges_per_layer(prune(full, PruneMode::InputOnly));
    EXPECT_EQ(layers.front(), 15u);
    EXPECT_EQ(layers.back(), 32u);
}

TEST(Plan, NeuroPatternsArePadded) {
    const auto x = neuro::Pattern::from_binary("x", 3, 1, "010");
    const auto w = neuro::Pattern::from_binary("w", 3, 1, "011");
    const auto p = plan_inner_product(x, w);
    EXPECT_EQ(p.n, 2);
    // 4 amplitudes: three pixels plus one +1 pad; one mismatch.
    EXPECT_NEAR(execute(p).y[0].real(), 0.5, 1e-12);
}

TEST(TextFormat, RoundTrip) {
    const auto p = prune(plan_inner_product(kX, kW));
    std::ostringstream out;
    write_plan(out, p);
    std::istringstream in(out.str());
    const auto back = parse_plan(in);
    EXPECT_EQ(back.n, 4);
    EXPECT_EQ(back.steps.size(), p.steps.size());
    EXPECT_EQ(bridges_per_layer(back), bridges_per_layer(p));
    EXPECT_NEAR(std::abs(execute(back).y[0] - execute(p).y[0]), 0.0, 1e-12);
    std::istringstream bad("N 2\nHB 1 0 1\n");
    EXPECT_THROW((void)parse_plan(bad), ValidationError);
}

TEST(Backend, ParseAndLimits) {
    EXPECT_EQ(parse_backend("analog"), Backend::Analog);
    EXPECT_THROW((void)parse_backend("spice"), ValidationError);
    std::mt19937_64 rng(2);
    ExecuteOptions o;
    o.backend = Backend::Analog;
    EXPECT_THROW((void)execute(plan_inner_product(random_signs(5, rng), random_signs(5, rng)), o),
                 ValidationError);
}

TEST(Analog, RandomSmallPlansAgreeWithIdeal) {
    std::mt19937_64 rng(50);
    ExecuteOptions o;
    o.backend = Backend::Analog;
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 3;
        const auto p = prune(plan_inner_product(random_signs(n, rng), random_signs(n, rng)));
        const auto ideal = execute(p).y[0];
        const auto analog = execute(p, o).y[0];
        EXPECT_NEAR(std::abs(analog - ideal), 0.0, 1e-2) << "trial " << k << " n " << n;
    }
}

TEST(Analog, SequentialLoweringAgrees) {
    std::mt19937_64 rng(8);
    const auto p = plan_inner_product(random_signs(2, rng), random_signs(2, rng));
    ExecuteOptions o;
    o.backend = Backend::Analog;
    o.simultaneous = false;
    EXPECT_NEAR(std::abs(execute(p, o).y[0] - execute(p).y[0]), 0.0, 1e-2);
}
