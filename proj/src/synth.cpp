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

#include "lcq/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "lcq/angles.hpp"
#include "lcq/error.hpp"

namespace lcq::synth {

namespace {

constexpr double kZeroWeight = 1e-12;

void check_size(int n, std::size_t size) {
    if (n < 1 || n > ideal::kMaxQubits) {
        throw ValidationError("pattern qubit count out of range");
    }
    if (size != (std::size_t{1} << n)) {
        throw ValidationError("pattern needs 2^N entries");
    }
}

int qubits_for_size(std::size_t size) {
    if (size < 2 || !std::has_single_bit(size)) {
        throw ValidationError("pattern length " + std::to_string(size) +
                              " is not a power of two >= 2");
    }
    return std::countr_zero(size);
}

} // namespace

void SignPattern::validate() const {
    check_size(n, signs.size());
    for (int s : signs) {
        if (s != 1 && s != -1) {
            throw ValidationError("sign pattern entries must be +1 or -1");
        }
    }
}

void PhasePattern::validate() const {
    check_size(n, thetas.size());
    for (double t : thetas) {
        if (!std::isfinite(t)) {
            throw ValidationError("phase pattern entries must be finite");
        }
    }
    if (std::abs(reduce_angle(thetas[0])) > kZeroWeight) {
        throw ValidationError("phase pattern must have theta_0 = 0");
    }
}

ideal::Program RewSynthesis::program() const {
    ideal::Program p;
    p.global_phase = global_sign < 0 ? kPi : 0.0;
    p.gates.assign(gates.begin(), gates.end());
    return p;
}

// Subsets ------------------------------------------------------------------------

std::vector<int> subset_of_mask(int n, std::uint64_t mask) {
    std::vector<int> q;
    for (int s = 1; s <= n; ++s) {
        if (mask & ideal::qubit_mask(n, s)) {
            q.push_back(s);
        }
    }
    return q;
}

std::uint64_t mask_of_subset(int n, const std::vector<int> &qubits) {
    std::uint64_t m = 0;
    for (int s : qubits) {
        m |= ideal::qubit_mask(n, s);
    }
    return m;
}

bool CanonicalLess::operator()(const std::vector<int> &a, const std::vector<int> &b) const {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

std::vector<std::uint64_t> canonical_masks(int n) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<std::uint64_t> masks;
    masks.reserve(dim - 1);
    for (std::uint64_t m = 1; m < dim; ++m) {
        masks.push_back(m);
    }
    // Qubit 1 is the top bit, so at equal weight a larger mask is lexicographically smaller.
    std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        const int pa = std::popcount(a);
        const int pb = std::popcount(b);
        return pa != pb ? pa < pb : a > b;
    });
    return masks;
}

// Synthesis ----------------------------------------------------------------------

RewSynthesis synthesize_rew(const SignPattern &pattern) {
    pattern.validate();
    const int n = pattern.n;
    std::vector<int> s = pattern.signs;
    RewSynthesis out;
    if (s[0] < 0) {
        out.global_sign = -1;
        for (auto &x : s) {
            x = -x;
        }
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask : canonical_masks(n)) {
        if (s[mask] > 0) {
            continue;
        }
        out.gates.push_back({subset_of_mask(n, mask), kPi});
        for (std::uint64_t sup = mask;; sup = (sup + 1) | mask) {
            s[sup] = -s[sup];
            if (sup == full) {
                break;
            }
        }
    }
    return out;
}

std::vector<ideal::MultiControlledPhase> synthesize_cew(const PhasePattern &pattern) {
    pattern.validate();
    const int n = pattern.n;
    std::vector<double> f = pattern.thetas;
    f[0] = 0.0;
    const std::size_t dim = f.size();
    for (std::size_t bit = 1; bit < dim; bit <<= 1) {
        for (std::size_t m = 0; m < dim; ++m) {
            if (m & bit) {
                f[m] -= f[m ^ bit];
            }
        }
    }
    std::vector<ideal::MultiControlledPhase> gates;
    for (std::uint64_t mask : canonical_masks(n)) {
        const double w = reduce_angle(f[mask]);
        if (std::abs(w) > kZeroWeight) {
            gates.push_back({subset_of_mask(n, mask), w});
        }
    }
    return gates;
}

ideal::QubitRegister prepare(int n, const std::vector<ideal::MultiControlledPhase> &gates,
                             double global_phase) {
    ideal::Program p;
    p.global_phase = global_phase;
    p.gates.assign(gates.begin(), gates.end());
    return ideal::apply(p, ideal::QubitRegister::equal(n));
}

SignPattern sign_pattern_of(const ideal::QubitRegister &reg) {
    SignPattern p{reg.num_qubits(), {}};
    p.signs.reserve(reg.dim());
    for (const auto &a : reg.amplitudes()) {
        if (std::abs(a.imag()) > 1e-9 * std::abs(a) || std::abs(a.real()) < 1e-12) {
            throw ValidationError("register is not real and equally weighted");
        }
        p.signs.push_back(a.real() > 0 ? 1 : -1);
    }
    return p;
}

PhasePattern phase_pattern_of(const ideal::QubitRegister &reg) {
    PhasePattern p{reg.num_qubits(), {}};
    const auto a0 = reg[0];
    if (std::abs(a0) < 1e-12) {
        throw ValidationError("amplitude 0 vanishes; phases undefined");
    }
    for (const auto &a : reg.amplitudes()) {
        p.thetas.push_back(reduce_angle(std::arg(a / a0)));
    }
    p.thetas[0] = 0.0;
    return p;
}

// Hypergraphs --------------------------------------------------------------------

std::size_t HypergraphState::count_of_order(std::size_t order) const {
    return static_cast<std::size_t>(std::count_if(
        edges.begin(), edges.end(), [order](const auto &e) { return e.first.size() == order; }));
}

HypergraphState to_hypergraph(int n, const std::vector<ideal::MultiControlledPhase> &gates) {
    HypergraphState h{n, {}};
    for (const auto &g : gates) {
        ideal::validate(g, n);
        auto key = g.qubits;
        std::sort(key.begin(), key.end());
        h.edges[key] = reduce_angle(h.edges[key] + g.phi);
    }
    for (auto it = h.edges.begin(); it != h.edges.end();) {
        it = std::abs(it->second) <= kZeroWeight ? h.edges.erase(it) : std::next(it);
    }
    return h;
}

std::vector<ideal::MultiControlledPhase> from_hypergraph(const HypergraphState &h) {
    std::vector<ideal::MultiControlledPhase> gates;
    gates.reserve(h.edges.size());
    for (const auto &[subset, w] : h.edges) {
        gates.push_back({subset, w});
    }
    return gates;
}

void write_hypergraph(std::ostream &out, const HypergraphState &h) {
    out << "vertices " << h.n << '\n';
    for (const auto &[subset, w] : h.edges) {
        if (subset.size() == 1) {
            out << "loop " << subset[0];
        } else if (subset.size() == 2) {
            out << "edge " << subset[0] << ' ' << subset[1];
        } else {
            out << "hyper {";
            for (std::size_t k = 0; k < subset.size(); ++k) {
                out << (k ? "," : "") << subset[k];
            }
            out << '}';
        }
        if (w != kPi) {
            out << " w=" << format_real(w);
        }
        out << '\n';
    }
}

HypergraphState parse_hypergraph(std::istream &in) {
    HypergraphState h;
    std::vector<ideal::MultiControlledPhase> gates;
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
            continue;
        }
        auto fail = [&](const std::string &msg) {
            return ValidationError("line " + std::to_string(lineno) + ": " + msg);
        };
        if (kind == "vertices") {
            if (!(ls >> h.n)) {
                throw fail("bad vertex count");
            }
            continue;
        }
        std::string rest;
        std::getline(ls, rest);
        double w = kPi;
        if (const auto wpos = rest.find("w="); wpos != std::string::npos) {
            w = parse_angle(rest.substr(wpos + 2));
            rest.erase(wpos);
        }
        std::string spec;
        if (kind == "loop") {
            spec = "MCZ {" + rest + "}";
        } else if (kind == "edge") {
            std::istringstream es(rest);
            std::string a, b;
            es >> a >> b;
            spec = "MCZ {" + a + "," + b + "}";
        } else if (kind == "hyper") {
            spec = "MCZ " + rest;
        } else {
            throw fail("unknown hypergraph entry \"" + kind + "\"");
        }
        try {
            auto g = std::get<ideal::MultiControlledPhase>(ideal::parse_gate(spec));
            g.phi = w;
            gates.push_back(std::move(g));
        } catch (const ValidationError &e) {
            throw fail(e.what());
        }
    }
    if (h.n < 1) {
        throw ValidationError("hypergraph is missing its `vertices N` line");
    }
    return to_hypergraph(h.n, gates);
}

// Counting -----------------------------------------------------------------------

StateCounts state_counts(int n) {
    if (n < 1) {
        throw ValidationError("state counts need N >= 1");
    }
    using boost::multiprecision::cpp_int;
    const auto pow2 = [](cpp_int e) {
        cpp_int r = 1;
        r <<= static_cast<unsigned>(e);
        return r;
    };
    const cpp_int dim = pow2(n);
    const cpp_int pairs = cpp_int(n) * (n - 1) / 2;
    return {pow2(n + pairs), pow2(dim), pow2(dim - 1)};
}

// Pattern files ------------------------------------------------------------------

std::variant<SignPattern, PhasePattern> read_pattern(std::istream &in) {
    std::vector<std::string> tokens;
    std::vector<std::size_t> lines;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string tok, extra;
        if (!(ls >> tok)) {
            continue;
        }
        if (ls >> extra) {
            throw ValidationError("line " + std::to_string(lineno) + ": one entry per line");
        }
        tokens.push_back(tok);
        lines.push_back(lineno);
    }
    const int n = qubits_for_size(tokens.size());
    const bool signs = std::all_of(tokens.begin(), tokens.end(),
                                   [](const std::string &t) { return t == "+1" || t == "-1"; });
    if (signs) {
        SignPattern p{n, {}};
        for (const auto &t : tokens) {
            p.signs.push_back(t == "+1" ? 1 : -1);
        }
        return p;
    }
    PhasePattern p{n, {}};
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        try {
            p.thetas.push_back(parse_angle(tokens[k]));
        } catch (const ValidationError &e) {
            throw ValidationError("line " + std::to_string(lines[k]) + ": " + e.what());
        }
    }
    p.validate();
    return p;
}

} // namespace lcq::synth
