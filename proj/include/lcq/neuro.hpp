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
 * Artificial and complex-artificial neurons over pixel patterns:
 * similarity, activation and template recognition.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "lcq/ideal.hpp"

namespace lcq::neuro {

using Complex = std::complex<double>;
using Ratio = boost::rational<std::int64_t>;

/// Grid of unit-modulus pixel values stored row-major.
struct Pattern {
    std::string label;
    int width = 0;
    int height = 0;
    std::vector<Complex> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
    /// Every pixel is exactly +1 or -1.
    [[nodiscard]] bool bipolar() const;
    void validate() const;

    /// `bits` holds one '0' (white, +1) or '1' (black, -1) per pixel.
    static Pattern from_binary(std::string label, int width, int height, std::string_view bits);
    /// Pixel value e^{2 pi i hue}.
    static Pattern from_hues(std::string label, int width, int height,
                             const std::vector<double> &hues);
};

struct PatternSet {
    std::string role; ///< "reference" or "input"
    std::vector<Pattern> patterns;

    void validate() const;
    [[nodiscard]] const Pattern &find(std::string_view label) const;
};

struct SimilarityMatrix {
    std::vector<std::string> row_labels; ///< references
    std::vector<std::string> col_labels; ///< inputs
    std::vector<Complex> entries;        ///< row-major

    [[nodiscard]] const Complex &at(std::size_t row, std::size_t col) const {
        return entries[row * col_labels.size() + col];
    }
};

/// (1/N_pix) sum_j conj(w_j) x_j.
[[nodiscard]] Complex pixel_inner(const Pattern &w, const Pattern &x);

/// sum_j ((x_j - w_j)/2)^2 for bipolar patterns.
[[nodiscard]] std::size_t n_error(const Pattern &w, const Pattern &x);

/// (N_pix - 2 N_error) / N_pix as an exact fraction.
[[nodiscard]] Ratio exact_similarity(const Pattern &w, const Pattern &x);

/// ceil(log2 N_pix) qubits; unused amplitudes are padded with +1/sqrt(2^N).
[[nodiscard]] ideal::QubitRegister encode_pattern(const Pattern &p);

[[nodiscard]] SimilarityMatrix similarity_matrix(const PatternSet &refs, const PatternSet &inputs);
[[nodiscard]] SimilarityMatrix similarity_matrix_serial(const PatternSet &refs,
                                                        const PatternSet &inputs);

/// Every reference label whose similarity has the largest real part.
[[nodiscard]] std::vector<std::string> recognize(const Pattern &input, const PatternSet &refs);

enum class Activation { Step, Linear, Sigmoid, Ramp, ComplexModulus };

[[nodiscard]] Activation parse_activation(std::string_view name);
/// Real-valued kinds act on the real part of `value`.
[[nodiscard]] double activation(Activation kind, Complex value, double threshold = 0.0);

/// 2 pi hue; hue must lie in [0, 1).
[[nodiscard]] double hue_to_phase(double hue);

/// Multiplies every pixel by e^{i d}, d uniform in [-epsilon pi, epsilon pi].
[[nodiscard]] Pattern perturb_colors(const Pattern &p, double epsilon, std::uint64_t seed);

// Files --------------------------------------------------------------------------

/// Records of a header `label WxH binary|hue` followed by one line of entries.
[[nodiscard]] std::vector<Pattern> read_patterns(std::istream &in);
void write_patterns(std::ostream &out, const std::vector<Pattern> &patterns);

void write_similarity_csv(std::ostream &out, const SimilarityMatrix &m,
                          const std::string &comment = {});

// Bundled corpora ----------------------------------------------------------------

/// 4x5 digit bitmaps. `verbatim` keeps the published transcription, which has
/// the reference and input strings of digit 3 interchanged.
[[nodiscard]] PatternSet digit_references(bool verbatim = false);
[[nodiscard]] PatternSet digit_inputs(bool verbatim = false);

/// 4x4 color-circle pattern with hue j/16 on pixel j.
[[nodiscard]] Pattern color_wheel();

} // namespace lcq::neuro
