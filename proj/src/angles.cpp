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

#include "lcq/angles.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "lcq/error.hpp"

namespace lcq {

double reduce_angle(double angle) {
    double r = std::remainder(angle, kTwoPi); // [-pi, pi]
    if (r <= -kPi) {
        r += kTwoPi;
    }
    return r;
}

namespace {

double parse_plain(std::string_view text, std::string_view whole) {
    double value = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ValidationError("cannot parse angle '" + std::string(whole) + "'");
    }
    return value;
}

double snap_quarter_pi(double value) {
    const double k = std::round(value / (kPi / 4));
    if (k != 0.0 && std::abs(k) <= 16.0 && std::abs(value - k * kPi / 4) < 1e-11) {
        return k * kPi / 4;
    }
    return value;
}

} // namespace

double parse_angle(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                             text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw ValidationError("empty angle");
    }
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos) {
        if (text.front() == '+') {
            text.remove_prefix(1);
        }
        return snap_quarter_pi(parse_plain(text, whole));
    }

    // [sign][coef][*]pi[/den]
    std::string_view coef = text.substr(0, pi_pos);
    std::string_view rest = text.substr(pi_pos + 2);
    double sign = 1.0;
    if (!coef.empty() && (coef.front() == '-' || coef.front() == '+')) {
        sign = coef.front() == '-' ? -1.0 : 1.0;
        coef.remove_prefix(1);
    }
    if (!coef.empty() && coef.back() == '*') {
        coef.remove_suffix(1);
    }
    const double factor = coef.empty() ? 1.0 : parse_plain(coef, whole);
    double denominator = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw ValidationError("cannot parse angle '" + std::string(whole) + "'");
        }
        denominator = parse_plain(rest.substr(1), whole);
        if (denominator == 0.0) {
            throw ValidationError("zero denominator in angle '" + std::string(whole) + "'");
        }
    }
    return sign * factor * kPi / denominator;
}

std::string format_real(double value) {
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::complex<double> unit_phase(double phi) {
    const double r = reduce_angle(phi);
    if (r == 0.0) {
        return 1.0;
    }
    if (r == kPi) {
        return -1.0;
    }
    if (r == kPi / 2) {
        return {0.0, 1.0};
    }
    if (r == -kPi / 2) {
        return {0.0, -1.0};
    }
    return std::polar(1.0, phi);
}

} // namespace lcq
