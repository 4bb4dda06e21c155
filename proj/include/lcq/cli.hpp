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
 * Command-line front end: `gate`, `synth`, `plan`, `recognize`, `corpus`.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lcq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitValidation = 2;

/// Everything that determines a run's outputs.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> overrides;
    std::uint64_t seed = 0;
    std::string out_dir;

    [[nodiscard]] std::string canonical_json() const;
    /// FNV-1a 64 of the canonical JSON, as 16 hex digits.
    [[nodiscard]] std::string hash() const;
    /// Comment line placed at the top of every numeric output file.
    [[nodiscard]] std::string header() const;
};

[[nodiscard]] std::uint64_t fnv1a64(const std::string &bytes);

/// Runs the CLI on `args` (without the program name); returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace lcq::cli
