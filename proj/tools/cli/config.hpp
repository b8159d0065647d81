// Copyright 2026 The dressed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON run configurations for the dressed CLI. Parsing is strict: unknown
// keys and wrong types are errors reported with a JSON pointer, syntax
// errors with line and column.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "dressed/experiments.hpp"

namespace dressed::cli {

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    SweepSpec spec;
    std::string out = "out";
    std::size_t workers = 1;

    bool operator==(const SweepConfig&) const = default;
};

struct CircuitConfig {
    CircuitSpec spec;
    std::string out = "out";

    bool operator==(const CircuitConfig&) const = default;
};

struct VerifyConfig {
    VerifyOptions options;
    std::string out = "out";

    bool operator==(const VerifyConfig&) const = default;
};

/// Parses JSON text; `source` names the input in diagnostics.
nlohmann::json parse_json_text(const std::string& text, const std::string& source);
/// Reads and parses a file. Throws ConfigError naming the path if it cannot be read.
nlohmann::json read_json_file(const std::filesystem::path& path);

SweepConfig sweep_config_from_json(const nlohmann::json& j);
CircuitConfig circuit_config_from_json(const nlohmann::json& j);
VerifyConfig verify_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepConfig& config);
nlohmann::json to_json(const CircuitConfig& config);
nlohmann::json to_json(const VerifyConfig& config);

/// "exact" | "first-order".
Frame parse_frame(const std::string& text);
std::string frame_name(Frame frame);
/// "bare" | "dressed".
Readout parse_readout(const std::string& text);
std::string readout_name(Readout readout);

}  // namespace dressed::cli
