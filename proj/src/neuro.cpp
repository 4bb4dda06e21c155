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

#include "lcq/neuro.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "lcq/angles.hpp"
#include "lcq/error.hpp"

namespace lcq::neuro {

namespace {

constexpr double kUnitTolerance = 1e-9;

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw ValidationError("pattern dimensions must be positive");
    }
}

void check_compatible(const Pattern &a, const Pattern &b) {
    if (a.width != b.width || a.height != b.height || a.size() != b.size()) {
        throw ValidationError("pattern dimensions differ: " + a.label + " vs " + b.label);
    }
}

// Uniform in [0, 1) from the top 53 bits, identical on every platform.
double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

// Patterns -----------------------------------------------------------------------

bool Pattern::bipolar() const {
    return std::all_of(values.begin(), values.end(), [](const Complex &v) {
        return v.imag() == 0.0 && (v.real() == 1.0 || v.real() == -1.0);
    });
}

void Pattern::validate() const {
    check_dims(width, height);
    if (values.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw ValidationError("pattern " + label + " needs width*height values");
    }
    for (const auto &v : values) {
        if (std::abs(std::abs(v) - 1.0) > kUnitTolerance) {
            throw ValidationError("pattern " + label + " has a pixel off the unit circle");
        }
    }
}

Pattern Pattern::from_binary(std::string label, int width, int height, std::string_view bits) {
    check_dims(width, height);
    Pattern p{std::move(label), width, height, {}};
    for (char c : bits) {
        if (c == '0') {
            p.values.emplace_back(1.0, 0.0);
        } else if (c == '1') {
            p.values.emplace_back(-1.0, 0.0);
        } else {
            throw ValidationError("binary pixels must be 0 or 1");
        }
    }
    p.validate();
    return p;
}

Pattern Pattern::from_hues(std::string label, int width, int height,
                           const std::vector<double> &hues) {
    check_dims(width, height);
    Pattern p{std::move(label), width, height, {}};
    for (double h : hues) {
        p.values.push_back(std::polar(1.0, hue_to_phase(h)));
    }
    p.validate();
    return p;
}

void PatternSet::validate() const {
    std::set<std::string> seen;
    for (const auto &p : patterns) {
        p.validate();
        if (!seen.insert(p.label).second) {
            throw ValidationError("duplicate pattern label " + p.label);
        }
        check_compatible(patterns.front(), p);
    }
}

const Pattern &PatternSet::find(std::string_view label) const {
    for (const auto &p : patterns) {
        if (p.label == label) {
            return p;
        }
    }
    throw ValidationError("no pattern labelled " + std::string(label));
}

// Similarity ---------------------------------------------------------------------

Complex pixel_inner(const Pattern &w, const Pattern &x) {
    check_compatible(w, x);
    if (w.size() == 0) {
        throw ValidationError("empty pattern");
    }
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < w.size(); ++j) {
        sum += std::conj(w.values[j]) * x.values[j];
    }
    return sum / static_cast<double>(w.size());
}

std::size_t n_error(const Pattern &w, const Pattern &x) {
    check_compatible(w, x);
    if (!w.bipolar() || !x.bipolar()) {
        throw ValidationError("error count is defined for bipolar patterns only");
    }
    std::size_t errors = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        errors += w.values[j] != x.values[j] ? 1 : 0;
    }
    return errors;
}

Ratio exact_similarity(const Pattern &w, const Pattern &x) {
    const auto pixels = static_cast<std::int64_t>(w.size());
    const auto errors = static_cast<std::int64_t>(n_error(w, x));
    return Ratio(pixels - 2 * errors, pixels);
}

ideal::QubitRegister encode_pattern(const Pattern &p) {
    p.validate();
    const int n = std::max(1, static_cast<int>(std::bit_width(p.size() - 1)));
    if (n > ideal::kMaxQubits) {
        throw ValidationError("pattern too large to encode");
    }
    const std::size_t dim = std::size_t{1} << n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    ideal::Amplitudes a(dim, Complex{scale, 0.0});
    for (std::size_t j = 0; j < p.size(); ++j) {
        a[j] = p.values[j] * scale;
    }
    return ideal::QubitRegister(n, std::move(a), ideal::QubitRegister::Norm::Raw);
}

namespace {

SimilarityMatrix empty_matrix(const PatternSet &refs, const PatternSet &inputs) {
    if (refs.patterns.empty()) {
        throw ValidationError("reference set is empty");
    }
    refs.validate();
    inputs.validate();
    if (!inputs.patterns.empty()) {
        check_compatible(refs.patterns.front(), inputs.patterns.front());
    }
    SimilarityMatrix m;
    for (const auto &p : refs.patterns) {
        m.row_labels.push_back(p.label);
    }
    for (const auto &p : inputs.patterns) {
        m.col_labels.push_back(p.label);
    }
    m.entries.assign(m.row_labels.size() * m.col_labels.size(), Complex{});
    return m;
}

} // namespace

SimilarityMatrix similarity_matrix_serial(const PatternSet &refs, const PatternSet &inputs) {
    auto m = empty_matrix(refs, inputs);
    const std::size_t cols = inputs.patterns.size();
    for (std::size_t r = 0; r < refs.patterns.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.entries[r * cols + c] = pixel_inner(refs.patterns[r], inputs.patterns[c]);
        }
    }
    return m;
}

SimilarityMatrix similarity_matrix(const PatternSet &refs, const PatternSet &inputs) {
    auto m = empty_matrix(refs, inputs);
    const std::size_t cols = inputs.patterns.size();
    const auto total = static_cast<std::ptrdiff_t>(m.entries.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
        const auto r = static_cast<std::size_t>(k) / cols;
        const auto c = static_cast<std::size_t>(k) % cols;
        m.entries[static_cast<std::size_t>(k)] =
            pixel_inner(refs.patterns[r], inputs.patterns[c]);
    }
    return m;
}

std::vector<std::string> recognize(const Pattern &input, const PatternSet &refs) {
    if (refs.patterns.empty()) {
        throw ValidationError("reference set is empty");
    }
    std::vector<double> scores;
    scores.reserve(refs.patterns.size());
    for (const auto &w : refs.patterns) {
        scores.push_back(pixel_inner(w, input).real());
    }
    const double best = *std::max_element(scores.begin(), scores.end());
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (scores[k] >= best - 1e-12) {
            labels.push_back(refs.patterns[k].label);
        }
    }
    return labels;
}

// Activation ---------------------------------------------------------------------

Activation parse_activation(std::string_view name) {
    if (name == "step") {
        return Activation::Step;
    }
    if (name == "linear") {
        return Activation::Linear;
    }
    if (name == "sigmoid") {
        return Activation::Sigmoid;
    }
    if (name == "ramp") {
        return Activation::Ramp;
    }
    if (name == "complex-modulus" || name == "modulus") {
        return Activation::ComplexModulus;
    }
    throw ValidationError("unknown activation \"" + std::string(name) + "\"");
}

double activation(Activation kind, Complex value, double threshold) {
    const double v = value.real();
    switch (kind) {
    case Activation::Step:
        return v >= threshold ? 1.0 : -1.0;
    case Activation::Linear:
        return v;
    case Activation::Sigmoid:
        return 1.0 / (1.0 + std::exp(-(v - threshold)));
    case Activation::Ramp:
        return std::max(0.0, v - threshold);
    case Activation::ComplexModulus:
        return std::abs(value);
    }
    throw ValidationError("unknown activation kind");
}

// Colors -------------------------------------------------------------------------

double hue_to_phase(double hue) {
    if (!(hue >= 0.0 && hue < 1.0)) {
        throw ValidationError("hue must lie in [0, 1)");
    }
    return kTwoPi * hue;
}

Pattern perturb_colors(const Pattern &p, double epsilon, std::uint64_t seed) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ValidationError("perturbation epsilon must lie in [0, 1]");
    }
    p.validate();
    Pattern out = p;
    if (epsilon == 0.0) {
        return out;
    }
    std::mt19937_64 rng(seed);
    for (auto &v : out.values) {
        const double delta = (2.0 * uniform01(rng) - 1.0) * epsilon * kPi;
        v *= std::polar(1.0, delta);
    }
    return out;
}

// Files --------------------------------------------------------------------------

std::vector<Pattern> read_patterns(std::istream &in) {
    std::vector<Pattern> out;
    std::string line;
    std::size_t lineno = 0;
    auto next_content = [&](std::string &dst) {
        while (std::getline(in, dst)) {
            ++lineno;
            if (const auto hash = dst.find('#'); hash != std::string::npos) {
                dst.erase(hash);
            }
            if (dst.find_first_not_of(" \t\r") != std::string::npos) {
                return true;
            }
        }
        return false;
    };
    while (next_content(line)) {
        const std::size_t header_line = lineno;
        auto fail = [](std::size_t at, const std::string &msg) {
            return ValidationError("line " + std::to_string(at) + ": " + msg);
        };
        std::istringstream hs(line);
        std::string label, dims, mode, extra;
        if (!(hs >> label >> dims >> mode) || (hs >> extra)) {
            throw fail(header_line, "expected header `label WIDTHxHEIGHT binary|hue`");
        }
        const auto x = dims.find('x');
        int width = 0;
        int height = 0;
        try {
            if (x == std::string::npos) {
                throw std::invalid_argument("dims");
            }
            std::size_t used = 0;
            width = std::stoi(dims.substr(0, x), &used);
            if (used != x) {
                throw std::invalid_argument("dims");
            }
            height = std::stoi(dims.substr(x + 1), &used);
            if (used != dims.size() - x - 1) {
                throw std::invalid_argument("dims");
            }
        } catch (const std::logic_error &) {
            throw fail(header_line, "bad dimensions \"" + dims + "\"");
        }
        std::string body;
        if (!next_content(body)) {
            throw fail(header_line, "pattern " + label + " has no data line");
        }
        std::istringstream bs(body);
        std::vector<std::string> tokens;
        for (std::string t; bs >> t;) {
            tokens.push_back(t);
        }
        try {
            if (mode == "binary") {
                std::string bits;
                for (const auto &t : tokens) {
                    bits += t;
                }
                auto p = Pattern::from_binary(label, width, height, bits);
                out.push_back(std::move(p));
            } else if (mode == "hue") {
                std::vector<double> hues;
                for (const auto &t : tokens) {
                    std::size_t used = 0;
                    double h = 0.0;
                    try {
                        h = std::stod(t, &used);
                    } catch (const std::logic_error &) {
                        used = 0;
                    }
                    if (used != t.size() || used == 0) {
                        throw ValidationError("bad hue \"" + t + "\"");
                    }
                    hues.push_back(h);
                }
                out.push_back(Pattern::from_hues(label, width, height, hues));
            } else {
                throw ValidationError("unknown pattern mode \"" + mode + "\"");
            }
        } catch (const ValidationError &e) {
            throw fail(lineno, e.what());
        }
    }
    return out;
}

void write_patterns(std::ostream &out, const std::vector<Pattern> &patterns) {
    for (const auto &p : patterns) {
        p.validate();
        const bool binary = p.bipolar();
        out << p.label << ' ' << p.width << 'x' << p.height << ' ' << (binary ? "binary" : "hue")
            << '\n';
        for (std::size_t j = 0; j < p.size(); ++j) {
            out << (j ? " " : "");
            if (binary) {
                out << (p.values[j].real() > 0 ? '0' : '1');
            } else {
                double hue = std::arg(p.values[j]) / kTwoPi;
                if (hue < 0.0) {
                    hue += 1.0;
                }
                if (hue >= 1.0) {
                    hue = 0.0;
                }
                out << format_real(hue);
            }
        }
        out << '\n';
    }
}

void write_similarity_csv(std::ostream &out, const SimilarityMatrix &m,
                          const std::string &comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << "reference,input,re,im\n";
    for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
        for (std::size_t c = 0; c < m.col_labels.size(); ++c) {
            const auto &v = m.at(r, c);
            out << m.row_labels[r] << ',' << m.col_labels[c] << ',' << format_real(v.real())
                << ',' << format_real(v.imag()) << '\n';
        }
    }
}

// Corpora ------------------------------------------------------------------------

namespace {

struct DigitRecord {
    const char *reference;
    const char *input;
};

constexpr DigitRecord kDigits[10] = {
    {"11111001100110011111", "01101001100110010110"},
    {"01101010001000101111", "01100010001000100010"},
    {"11111001001001001111", "01110001001001000111"},
    {"01101001001010010110", "11111001001010011111"},
    {"10101010111100100010", "00101010111000100010"},
    {"11111000111100011111", "01101000111000011110"},
    {"11111000111110011111", "01101000111010011110"},
    {"11110001001000100100", "01100001001000100010"},
    {"11111001111110011111", "01101001011010010110"},
    {"11111001111100011111", "01101001011100010110"},
};

PatternSet digit_set(bool reference, bool verbatim) {
    PatternSet set{reference ? "reference" : "input", {}};
    for (int d = 0; d < 10; ++d) {
        const auto &rec = kDigits[d];
        const bool swap = d == 3 && !verbatim;
        const char *bits = (reference != swap) ? rec.reference : rec.input;
        set.patterns.push_back(Pattern::from_binary(std::to_string(d), 4, 5, bits));
    }
    return set;
}

} // namespace

PatternSet digit_references(bool verbatim) { return digit_set(true, verbatim); }
PatternSet digit_inputs(bool verbatim) { return digit_set(false, verbatim); }

Pattern color_wheel() {
    std::vector<double> hues;
    for (int j = 0; j < 16; ++j) {
        hues.push_back(j / 16.0);
    }
    return Pattern::from_hues("wheel", 4, 4, hues);
}

} // namespace lcq::neuro
