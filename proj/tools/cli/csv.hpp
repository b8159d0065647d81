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

// CSV emission and parsing for sweep and circuit results.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dressed/experiments.hpp"

namespace dressed::cli {

class CsvError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kSweepHeader = "omega_b,alpha_abs,alpha_phase,n_max,fidelity,trace_error,tail_weight";
inline constexpr const char* kCircuitHeader = "segment,elapsed,fidelity,trace_error,readout";

/// 17 significant digits; non-finite values print as nan / inf / -inf.
std::string format_double(double v);

/// Failed rows are written with n_max = -1 and nan metrics.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_circuit_csv(std::ostream& out, const CircuitResult& result, Readout readout);

/// Parses a sweep CSV. Throws CsvError (with `source` and line number) on a
/// wrong header, a malformed row, or when there are no data rows.
std::vector<SweepRow> read_sweep_csv(std::istream& in, const std::string& source);

}  // namespace dressed::cli
