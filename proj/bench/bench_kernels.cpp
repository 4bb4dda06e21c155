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

// Serial reference kernels against their OpenMP versions.

#include <random>

#include <benchmark/benchmark.h>

#include "lcq/ideal.hpp"
#include "lcq/neuro.hpp"

namespace {

using namespace lcq;
namespace serial = ideal::kernels::serial;
namespace omp = ideal::kernels::omp;

ideal::Amplitudes random_amplitudes(int n) {
    std::mt19937_64 rng(n);
    std::normal_distribution<double> g;
    ideal::Amplitudes a(std::size_t{1} << n);
    for (auto &z : a) {
        z = {g(rng), g(rng)};
    }
    return a;
}

template <class Fn>
void run_kernel(benchmark::State &state, Fn fn) {
    const int n = static_cast<int>(state.range(0));
    auto a = random_amplitudes(n);
    for (auto _ : state) {
        fn(a, n);
        benchmark::DoNotOptimize(a.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}

void BM_SingleQubitSerial(benchmark::State &s) {
    run_kernel(s, [](auto &a, int n) {
        serial::single_qubit(a, ideal::qubit_mask(n, 1), ideal::hadamard_matrix());
    });
}
void BM_SingleQubitOmp(benchmark::State &s) {
    run_kernel(s, [](auto &a, int n) {
        omp::single_qubit(a, ideal::qubit_mask(n, 1), ideal::hadamard_matrix());
    });
}
void BM_MaskedPhaseSerial(benchmark::State &s) {
    run_kernel(s, [](auto &a, int n) {
        serial::masked_phase(a, ideal::qubit_mask(n, 1) | ideal::qubit_mask(n, n), {0.0, 1.0});
    });
}
void BM_MaskedPhaseOmp(benchmark::State &s) {
    run_kernel(s, [](auto &a, int n) {
        omp::masked_phase(a, ideal::qubit_mask(n, 1) | ideal::qubit_mask(n, n), {0.0, 1.0});
    });
}
void BM_WalshHadamardSerial(benchmark::State &s) {
    run_kernel(s, [](auto &a, int) { serial::walsh_hadamard(a); });
}
void BM_WalshHadamardOmp(benchmark::State &s) {
    run_kernel(s, [](auto &a, int) { omp::walsh_hadamard(a); });
}

neuro::PatternSet random_patterns(const char *role, int count, int side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> hue(0.0, 1.0);
    neuro::PatternSet set{role, {}};
    for (int k = 0; k < count; ++k) {
        std::vector<double> h(static_cast<std::size_t>(side * side));
        for (auto &x : h) {
            x = hue(rng);
        }
        set.patterns.push_back(neuro::Pattern::from_hues(std::to_string(k), side, side, h));
    }
    return set;
}

void BM_SimilaritySerial(benchmark::State &state) {
    const auto refs = random_patterns("reference", static_cast<int>(state.range(0)), 32, 1);
    const auto ins = random_patterns("input", static_cast<int>(state.range(0)), 32, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(neuro::similarity_matrix_serial(refs, ins));
    }
}
void BM_SimilarityOmp(benchmark::State &state) {
    const auto refs = random_patterns("reference", static_cast<int>(state.range(0)), 32, 1);
    const auto ins = random_patterns("input", static_cast<int>(state.range(0)), 32, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(neuro::similarity_matrix(refs, ins));
    }
}

} // namespace

BENCHMARK(BM_SingleQubitSerial)->DenseRange(14, 20, 3);
BENCHMARK(BM_SingleQubitOmp)->DenseRange(14, 20, 3);
BENCHMARK(BM_MaskedPhaseSerial)->DenseRange(14, 20, 3);
BENCHMARK(BM_MaskedPhaseOmp)->DenseRange(14, 20, 3);
BENCHMARK(BM_WalshHadamardSerial)->DenseRange(14, 20, 3);
BENCHMARK(BM_WalshHadamardOmp)->DenseRange(14, 20, 3);
BENCHMARK(BM_SimilaritySerial)->Arg(16)->Arg(64);
BENCHMARK(BM_SimilarityOmp)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
