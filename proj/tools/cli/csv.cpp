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

#include "cli/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "cli/config.hpp"

namespace dressed::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

double parse_cell(const std::string& cell, const std::string& where) {
    if (cell.empty()) {
        throw CsvError(where + ": empty field");
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || errno == ERANGE) {
        throw CsvError(where + ": not a number: \"" + cell + "\"");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << kSweepHeader << '\n';
    for (const SweepRow& r : result.rows) {
        out << format_double(r.omega_b) << ',' << format_double(r.alpha_abs) << ',' << format_double(r.alpha_phase)
            << ',' << (r.ok ? static_cast<long long>(r.n_max) : -1LL) << ',' << format_double(r.fidelity) << ','
            << format_double(r.trace_error) << ',' << format_double(r.tail_weight) << '\n';
    }
}

void write_circuit_csv(std::ostream& out, const CircuitResult& result, Readout readout) {
    out << kCircuitHeader << '\n';
    for (const CircuitStep& s : result.steps) {
        out << s.segment << ',' << format_double(s.elapsed) << ',' << format_double(s.fidelity) << ','
            << format_double(s.trace_error) << ',' << readout_name(readout) << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) {
        throw CsvError(source + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kSweepHeader) {
        throw CsvError(source + ":1: expected header \"" + std::string(kSweepHeader) + "\"");
    }
    std::vector<SweepRow> rows;
    for (std::size_t number = 2; std::getline(in, line); ++number) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::string where = source + ":" + std::to_string(number);
        const std::vector<std::string> cells = split(line);
        if (cells.size() != 7) {
            throw CsvError(where + ": expected 7 fields, got " + std::to_string(cells.size()));
        }
        SweepRow r;
        r.omega_b = parse_cell(cells[0], where);
        r.alpha_abs = parse_cell(cells[1], where);
        r.alpha_phase = parse_cell(cells[2], where);
        const double n_max = parse_cell(cells[3], where);
        if (n_max != std::floor(n_max)) {
            throw CsvError(where + ": n_max must be an integer");
        }
        r.n_max = static_cast<Index>(n_max);
        r.fidelity = parse_cell(cells[4], where);
        r.trace_error = parse_cell(cells[5], where);
        r.tail_weight = parse_cell(cells[6], where);
        r.ok = r.n_max >= 0 && std::isfinite(r.fidelity);
        rows.push_back(r);
    }
    if (rows.empty()) {
        throw CsvError(source + ": no data rows");
    }
    return rows;
}

}  // namespace dressed::cli
