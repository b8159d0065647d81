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

#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "cli/svg.hpp"
#include "dressed/errors.hpp"
#include "dressed/experiments.hpp"

namespace dressed::cli {

using nlohmann::json;

namespace {

// Overrides shared by the run subcommands; each is applied only if given
// on the command line or through its DRESSED_* environment variable.
struct Overrides {
    std::string config;
    std::string out;
    std::size_t workers = 0;
    std::uint64_t seed = 0;
    std::string frame;
    std::string readout;
    bool fast = false;
    bool json_output = false;
    bool print_config = false;
    std::string alpha_grid;
    bool inject_nonhermitian = false;

    CLI::Option* out_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* frame_opt = nullptr;
    CLI::Option* readout_opt = nullptr;
    CLI::Option* fast_opt = nullptr;
    CLI::Option* alpha_grid_opt = nullptr;
    CLI::Option* inject_opt = nullptr;
};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

void add_common(CLI::App& cmd, Overrides& o, bool config_required) {
    auto* config = cmd.add_option("--config", o.config, "JSON config file");
    if (config_required) {
        config->required();
    }
    o.out_opt = cmd.add_option("--out", o.out, "Output directory")->envname("DRESSED_OUT");
    o.seed_opt = cmd.add_option("--seed", o.seed, "Seed for the random initial state")->envname("DRESSED_SEED");
    cmd.add_flag("--json", o.json_output, "Print machine-readable JSON to stdout");
    cmd.add_flag("--print-config", o.print_config, "Print the resolved config as JSON and exit");
}

void add_frame_readout(CLI::App& cmd, Overrides& o) {
    o.frame_opt = cmd.add_option("--frame", o.frame, "Simulation frame")
                      ->check(CLI::IsMember({"exact", "first-order"}))
                      ->envname("DRESSED_FRAME");
    o.readout_opt = cmd.add_option("--readout", o.readout, "Readout basis")
                        ->check(CLI::IsMember({"bare", "dressed"}))
                        ->envname("DRESSED_READOUT");
}

std::vector<double> parse_alpha_grid(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v) || v < 0.0) {
            throw ConfigError("--alpha-grid: bad value \"" + s + "\"");
        }
        return v;
    };
    if (text.find(':') != std::string::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string::npos) {
            throw ConfigError("--alpha-grid: expected start:stop:count");
        }
        const double count = number(text.substr(b + 1));
        if (count < 1 || count != std::floor(count)) {
            throw ConfigError("--alpha-grid: count must be a positive integer");
        }
        return linear_grid(number(text.substr(0, a)), number(text.substr(a + 1, b - a - 1)),
                           static_cast<std::size_t>(count));
    }
    std::vector<double> grid;
    std::string cell;
    std::istringstream in(text);
    while (std::getline(in, cell, ',')) {
        grid.push_back(number(cell));
    }
    if (grid.empty()) {
        throw ConfigError("--alpha-grid: empty list");
    }
    return grid;
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw ConfigError("cannot create output directory " + dir);
    }
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary);
    file << contents;
    if (!file) {
        throw ConfigError("cannot write " + path.string());
    }
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

json row_to_json(const SweepRow& r) {
    return {{"omega_b", r.omega_b},         {"alpha_abs", r.alpha_abs},     {"alpha_phase", r.alpha_phase},
            {"n_max", r.ok ? r.n_max : -1}, {"fidelity", r.fidelity},       {"trace_error", r.trace_error},
            {"tail_weight", r.tail_weight}, {"wall_time", r.wall_time},     {"beta", r.beta},
            {"ok", r.ok},                   {"error", r.error}};
}

void print_sweep_summary(std::ostream& out, const SweepConfig& config, const SweepResult& result) {
    out << "omega_b   phase     n_max  F(max|alpha|)      min F              F>0.999 up to  failed  time[s]\n";
    for (double omega_b : config.spec.mode_freqs) {
        for (double phase : config.spec.alpha_phases) {
            Index n_max = 0;
            double f_last = std::nan("");
            double f_min = std::numeric_limits<double>::infinity();
            double keep = std::nan("");
            bool crossed = false;
            std::size_t failed = 0;
            double time = 0.0;
            for (const SweepRow& r : result.rows) {
                if (r.omega_b != omega_b || r.alpha_phase != phase) {
                    continue;
                }
                time += r.wall_time;
                if (!r.ok) {
                    ++failed;
                    continue;
                }
                n_max = std::max(n_max, r.n_max);
                f_last = r.fidelity;
                f_min = std::min(f_min, r.fidelity);
                if (!crossed && r.fidelity > 0.999) {
                    keep = r.alpha_abs;
                } else {
                    crossed = true;
                }
            }
            out << fmt("%-9.4g", omega_b) << ' ' << fmt("%-9.4g", phase) << ' ' << fmt("%-6.0f", double(n_max))
                << ' ' << fmt("%-18.15f", f_last) << ' ' << fmt("%-18.15f", f_min) << ' ' << fmt("%-14.4g", keep)
                << ' ' << fmt("%-7.0f", double(failed)) << ' ' << fmt("%.2f", time) << '\n';
        }
    }
    for (const SweepRow& r : result.rows) {
        if (!r.ok) {
            out << "failed: omega_b=" << format_double(r.omega_b) << " alpha_abs=" << format_double(r.alpha_abs)
                << " alpha_phase=" << format_double(r.alpha_phase) << ": " << r.error << '\n';
        }
    }
}

int cmd_sweep(const Overrides& o, std::ostream& out) {
    SweepConfig config = o.config.empty() ? SweepConfig{} : sweep_config_from_json(read_json_file(o.config));
    if (given(o.out_opt)) {
        config.out = o.out;
    }
    if (given(o.workers_opt)) {
        config.workers = o.workers;
    }
    if (given(o.seed_opt)) {
        config.spec.seed = o.seed;
    }
    if (given(o.frame_opt)) {
        config.spec.frame = parse_frame(o.frame);
    }
    if (given(o.readout_opt)) {
        config.spec.readout = parse_readout(o.readout);
    }
    if (given(o.fast_opt)) {
        config.spec.fast = o.fast;
    }
    if (given(o.alpha_grid_opt)) {
        config.spec.alpha_grid = parse_alpha_grid(o.alpha_grid);
    }
    config.spec.validate();
    if (o.print_config) {
        out << to_json(config).dump(2) << '\n';
        return kExitOk;
    }
    const auto dir = prepare_out_dir(config.out);

    const SweepResult result = run_sweep(config.spec, config.workers);

    std::ostringstream csv;
    write_sweep_csv(csv, result);
    write_file(dir / "sweep.csv", csv.str());
    write_file(dir / "sweep.svg", render_sweep_svg(result.rows));
    json report{{"config", to_json(config)}, {"rows", json::array()}};
    for (const SweepRow& r : result.rows) {
        report["rows"].push_back(row_to_json(r));
    }
    write_file(dir / "sweep.json", report.dump(2) + "\n");

    if (o.json_output) {
        out << report.dump(2) << '\n';
    } else {
        print_sweep_summary(out, config, result);
        out << "wrote " << (dir / "sweep.csv").string() << ", " << (dir / "sweep.svg").string() << '\n';
    }
    return result.failed() == 0 ? kExitOk : kExitFailed;
}

int cmd_circuit(const Overrides& o, std::ostream& out) {
    CircuitConfig config = circuit_config_from_json(read_json_file(o.config));
    if (given(o.out_opt)) {
        config.out = o.out;
    }
    if (given(o.seed_opt)) {
        config.spec.seed = o.seed;
    }
    if (given(o.frame_opt)) {
        config.spec.frame = parse_frame(o.frame);
    }
    if (given(o.readout_opt)) {
        config.spec.readout = parse_readout(o.readout);
    }
    if (o.print_config) {
        out << to_json(config).dump(2) << '\n';
        return kExitOk;
    }
    const auto dir = prepare_out_dir(config.out);

    const CircuitResult result = run_circuit(config.spec);

    std::ostringstream csv;
    write_circuit_csv(csv, result, config.spec.readout);
    write_file(dir / "circuit.csv", csv.str());
    if (o.json_output) {
        json report{{"config", to_json(config)}, {"n_max", result.n_max}, {"tail_weight", result.tail_weight}};
        report["steps"] = json::array();
        for (const CircuitStep& s : result.steps) {
            report["steps"].push_back({{"segment", s.segment},
                                       {"elapsed", s.elapsed},
                                       {"fidelity", s.fidelity},
                                       {"trace_error", s.trace_error}});
        }
        out << report.dump(2) << '\n';
    } else {
        out << "readout " << readout_name(config.spec.readout) << ", frame " << frame_name(config.spec.frame)
            << ", n_max";
        for (Index n : result.n_max) {
            out << ' ' << n;
        }
        out << "\nsegment  elapsed     fidelity            trace_error\n";
        for (const CircuitStep& s : result.steps) {
            out << fmt("%-8.0f", double(s.segment)) << ' ' << fmt("%-11.6g", s.elapsed) << ' '
                << fmt("%-19.15f", s.fidelity) << ' ' << fmt("%.3e", s.trace_error) << '\n';
        }
        out << "wrote " << (dir / "circuit.csv").string() << '\n';
    }
    return kExitOk;
}

int cmd_verify(const Overrides& o, std::ostream& out) {
    VerifyConfig config = o.config.empty() ? VerifyConfig{} : verify_config_from_json(read_json_file(o.config));
    if (given(o.out_opt)) {
        config.out = o.out;
    }
    if (given(o.seed_opt)) {
        config.options.seed = o.seed;
    }
    if (given(o.inject_opt)) {
        config.options.inject_nonhermitian = o.inject_nonhermitian;
    }
    if (o.print_config) {
        out << to_json(config).dump(2) << '\n';
        return kExitOk;
    }
    const auto dir = prepare_out_dir(config.out);

    const InvariantReport report = verify_invariants(config.options);

    json doc{{"passed", report.all_passed()}, {"config", to_json(config)}, {"checks", json::array()}};
    for (const CheckResult& c : report.checks) {
        doc["checks"].push_back({{"name", c.name},
                                 {"passed", c.passed},
                                 {"informational", c.informational},
                                 {"value", c.value},
                                 {"threshold", c.threshold},
                                 {"detail", c.detail}});
    }
    write_file(dir / "verify.json", doc.dump(2) + "\n");
    if (o.json_output) {
        out << doc.dump(2) << '\n';
    } else {
        for (const CheckResult& c : report.checks) {
            const char* status = c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL");
            char line[128];
            std::snprintf(line, sizeof line, "%-4s  %-36s ", status, c.name.c_str());
            out << line << c.detail << '\n';
        }
        out << (report.all_passed() ? "all checks passed" : "some checks FAILED") << '\n';
    }
    return report.all_passed() ? kExitOk : kExitFailed;
}

int cmd_plot(const std::string& csv_path, const std::string& svg_path, std::ostream& out) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read " + csv_path);
    }
    const std::vector<SweepRow> rows = read_sweep_csv(in, csv_path);
    write_file(svg_path, render_sweep_svg(rows));
    out << "wrote " << svg_path << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dressed-basis spin-boson simulator"};
    app.name("dressed");
    app.require_subcommand(1);

    Overrides sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Fidelity-vs-|alpha| sweep; writes sweep.csv and sweep.svg");
    add_common(*sweep_cmd, sweep, false);
    add_frame_readout(*sweep_cmd, sweep);
    sweep.workers_opt = sweep_cmd->add_option("--workers", sweep.workers, "Worker threads")
                            ->check(CLI::PositiveNumber)
                            ->envname("DRESSED_WORKERS");
    sweep.fast_opt = sweep_cmd->add_flag("--fast", sweep.fast, "Raise beta on rows whose cutoff exceeds 64 levels")
                         ->envname("DRESSED_FAST");
    sweep.alpha_grid_opt =
        sweep_cmd->add_option("--alpha-grid", sweep.alpha_grid, "Comma-separated |alpha| list or start:stop:count");

    Overrides circuit;
    auto* circuit_cmd = app.add_subcommand("circuit", "Dressed-frame circuit run; writes circuit.csv");
    add_common(*circuit_cmd, circuit, true);
    add_frame_readout(*circuit_cmd, circuit);

    Overrides verify;
    auto* verify_cmd = app.add_subcommand("verify", "Invariant verification suite; writes verify.json");
    add_common(*verify_cmd, verify, false);
    verify.inject_opt = verify_cmd->add_flag("--inject-nonhermitian", verify.inject_nonhermitian,
                                             "Test hook: corrupt the dressed Hamiltonian");

    std::string csv_path;
    std::string svg_path;
    auto* plot_cmd = app.add_subcommand("plot", "Render a sweep CSV as SVG");
    plot_cmd->add_option("csv", csv_path, "Input sweep CSV")->required();
    plot_cmd->add_option("svg", svg_path, "Output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sweep_cmd) {
            return cmd_sweep(sweep, out);
        }
        if (*circuit_cmd) {
            return cmd_circuit(circuit, out);
        }
        if (*verify_cmd) {
            return cmd_verify(verify, out);
        }
        return cmd_plot(csv_path, svg_path, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CsvError& e) {
        err << "csv error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BadSegment& e) {
        err << "invalid segment: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DimensionBudgetExceeded& e) {
        err << "dimension budget exceeded: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PolicyUnsatisfiable& e) {
        err << "truncation policy: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}

}  // namespace dressed::cli
