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

// Self-contained SVG line plot of fidelity against |α|.

#include <span>
#include <string>

#include "dressed/experiments.hpp"

namespace dressed::cli {

/// One polyline per (ω_b, phase) in first-appearance order, with a legend
/// and axes labeled |α| and F. Byte-deterministic for fixed input.
std::string render_sweep_svg(std::span<const SweepRow> rows);

}  // namespace dressed::cli
