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

#pragma once

#include <complex>
#include <numbers>
#include <string>
#include <string_view>

namespace lcq {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{i phi}, exact at multiples of pi/2.
std::complex<double> unit_phase(double phi);

/// Reduces an angle into (-pi, pi].
double reduce_angle(double angle);

/// Parses decimal radians or symbolic multiples of pi: "0.5", "pi", "-pi/4",
/// "3pi/4", "3*pi/4", "2.5e-1". Decimals within 1e-11 of a multiple of pi/4
/// (as printed by format_real) read back as that exact multiple. Throws
/// ValidationError on anything else.
double parse_angle(std::string_view text);

/// Fixed formatting used by every text/CSV writer: 12 significant digits.
std::string format_real(double value);

} // namespace lcq
