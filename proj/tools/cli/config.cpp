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

#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "dressed/errors.hpp"

namespace dressed::cli {

using nlohmann::json;

namespace {

std::string escape_pointer_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + escape_pointer_token(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError((path.empty() ? std::string("/") : path) + ": " + message);
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        fail(path, "expected a finite number");
    }
    return v;
}

double as_positive(const json& j, const std::string& path) {
    const double v = as_number(j, path);
    if (v <= 0.0) {
        fail(path, "must be > 0");
    }
    return v;
}

double as_nonnegative(const json& j, const std::string& path) {
    const double v = as_number(j, path);
    if (v < 0.0) {
        fail(path, "must be >= 0");
    }
    return v;
}

std::int64_t as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<std::int64_t>();
}

std::uint64_t as_unsigned(const json& j, const std::string& path) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) {
        fail(path, "expected true or false");
    }
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

template <class F>
auto as_list(const json& j, const std::string& path, F&& element) {
    if (!j.is_array()) {
        fail(path, "expected an array");
    }
    std::vector<decltype(element(j, path))> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(element(j[i], child(path, i)));
    }
    return out;
}

// Object view that records which keys were read; finish() rejects the rest.
class Fields {
   public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail(path_, "expected an object");
        }
    }

    const json* get(const std::string& key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }
    const json& require(const std::string& key) {
        const json* v = get(key);
        if (v == nullptr) {
            fail(path_, "missing required key \"" + key + "\"");
        }
        return *v;
    }
    std::string at(const std::string& key) const { return child(path_, key); }
    const std::string& path() const { return path_; }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                fail(child(path_, it.key()), "unknown key");
            }
        }
    }

   private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

Complex as_coupling(const json& j, const std::string& path) {
    if (j.is_array()) {
        if (j.size() != 2) {
            fail(path, "a complex coupling is [re, im]");
        }
        return {as_number(j[0], child(path, 0)), as_number(j[1], child(path, 1))};
    }
    return {as_number(j, path), 0.0};
}

json coupling_to_json(Complex a) {
    if (a.imag() == 0.0) {
        return a.real();
    }
    return json::array({a.real(), a.imag()});
}

TruncationPolicy truncation_from_json(const json& j, const std::string& path) {
    Fields f(j, path);
    std::string mode = "adaptive";
    if (const json* m = f.get("mode")) {
        mode = as_string(*m, f.at("mode"));
    }
    TruncationPolicy policy;
    try {
        if (mode == "fixed") {
            const std::int64_t n = as_integer(f.require("n_max"), f.at("n_max"));
            policy = TruncationPolicy::fixed(n);
        } else if (mode == "adaptive") {
            AdaptiveTruncation a;
            if (const json* v = f.get("tail_epsilon")) {
                a.tail_epsilon = as_positive(*v, f.at("tail_epsilon"));
            }
            if (const json* v = f.get("headroom")) {
                a.headroom = as_integer(*v, f.at("headroom"));
            }
            if (const json* v = f.get("hard_cap")) {
                a.hard_cap = as_integer(*v, f.at("hard_cap"));
            }
            policy = TruncationPolicy(a);
        } else {
            fail(f.at("mode"), "expected \"fixed\" or \"adaptive\", got \"" + mode + "\"");
        }
    } catch (const InvalidArgument& e) {
        fail(path, e.what());
    }
    f.finish();
    return policy;
}

json truncation_to_json(const TruncationPolicy& policy) {
    if (const auto* f = std::get_if<FixedTruncation>(&policy.rule())) {
        return {{"mode", "fixed"}, {"n_max", f->n_max}};
    }
    const auto& a = std::get<AdaptiveTruncation>(policy.rule());
    return {{"mode", "adaptive"}, {"tail_epsilon", a.tail_epsilon}, {"headroom", a.headroom}, {"hard_cap", a.hard_cap}};
}

std::vector<double> alpha_grid_from_json(const json& j, const std::string& path) {
    if (j.is_array()) {
        return as_list(j, path, as_nonnegative);
    }
    Fields f(j, path);
    const double start = as_nonnegative(f.require("start"), f.at("start"));
    const double stop = as_nonnegative(f.require("stop"), f.at("stop"));
    const std::int64_t count = as_integer(f.require("count"), f.at("count"));
    if (count < 1) {
        fail(f.at("count"), "must be >= 1");
    }
    f.finish();
    return linear_grid(start, stop, static_cast<std::size_t>(count));
}

// Model fields shared by circuit and verify configs.
void model_from_fields(Fields& f, ModelParams& p) {
    if (const json* v = f.get("qubit_freqs")) {
        p.qubit_freqs = as_list(*v, f.at("qubit_freqs"), as_nonnegative);
    }
    if (const json* v = f.get("mode_freqs")) {
        p.mode_freqs = as_list(*v, f.at("mode_freqs"), as_positive);
    }
    if (const json* v = f.get("couplings")) {
        p.couplings = as_list(*v, f.at("couplings"), as_coupling);
    }
    if (const json* v = f.get("beta")) {
        p.beta = as_positive(*v, f.at("beta"));
    }
    if (const json* v = f.get("truncation")) {
        p.truncation = truncation_from_json(*v, f.at("truncation"));
    }
    if (p.qubit_freqs.empty()) {
        fail(f.at("qubit_freqs"), "must not be empty");
    }
    if (p.mode_freqs.empty()) {
        fail(f.at("mode_freqs"), "must not be empty");
    }
    if (p.couplings.size() != p.mode_freqs.size()) {
        fail(f.at("couplings"), "needs one entry per mode (" + std::to_string(p.mode_freqs.size()) + ")");
    }
}

void model_to_json(const ModelParams& p, json& j) {
    j["qubit_freqs"] = p.qubit_freqs;
    j["mode_freqs"] = p.mode_freqs;
    json couplings = json::array();
    for (Complex a : p.couplings) {
        couplings.push_back(coupling_to_json(a));
    }
    j["couplings"] = couplings;
    j["beta"] = p.beta;
    j["truncation"] = truncation_to_json(p.truncation);
}

ControlSegment segment_from_json(const json& j, const std::string& path, std::size_t n_qubits) {
    Fields f(j, path);
    ControlSegment seg;
    seg.duration = as_positive(f.require("duration"), f.at("duration"));
    if (const json* v = f.get("eta")) {
        seg.eta = as_list(*v, f.at("eta"), as_number);
        if (seg.eta.size() != n_qubits) {
            fail(f.at("eta"), "needs one amplitude per qubit (" + std::to_string(n_qubits) + ")");
        }
    }
    if (const json* v = f.get("yy")) {
        const std::string yy_path = f.at("yy");
        if (!v->is_array()) {
            fail(yy_path, "expected an array");
        }
        for (std::size_t k = 0; k < v->size(); ++k) {
            Fields term((*v)[k], child(yy_path, k));
            const std::uint64_t i = as_unsigned(term.require("i"), term.at("i"));
            const std::uint64_t q = as_unsigned(term.require("j"), term.at("j"));
            const double value = as_number(term.require("J"), term.at("J"));
            term.finish();
            if (i >= n_qubits) {
                fail(term.at("i"), "qubit index " + std::to_string(i) + " out of range for " +
                                       std::to_string(n_qubits) + " qubits");
            }
            if (q >= n_qubits) {
                fail(term.at("j"), "qubit index " + std::to_string(q) + " out of range for " +
                                       std::to_string(n_qubits) + " qubits");
            }
            if (i == q) {
                fail(term.path(), "i and j must differ");
            }
            const auto key = std::minmax<std::size_t>(i, q);
            if (seg.yy.count(key)) {
                fail(term.path(), "duplicate coupling for this pair");
            }
            seg.yy[key] = value;
        }
    }
    f.finish();
    return seg;
}

json segment_to_json(const ControlSegment& seg) {
    json j{{"duration", seg.duration}};
    if (!seg.eta.empty()) {
        j["eta"] = seg.eta;
    }
    if (!seg.yy.empty()) {
        json yy = json::array();
        for (const auto& [pair, value] : seg.yy) {
            yy.push_back({{"i", pair.first}, {"j", pair.second}, {"J", value}});
        }
        j["yy"] = yy;
    }
    return j;
}

void read_frame_readout(Fields& f, Frame& frame, Readout& readout);

std::string read_out(Fields& f, std::string fallback) {
    if (const json* v = f.get("out")) {
        fallback = as_string(*v, f.at("out"));
        if (fallback.empty()) {
            fail(f.at("out"), "must not be empty");
        }
    }
    return fallback;
}

}  // namespace

Frame parse_frame(const std::string& text) {
    if (text == "exact") {
        return Frame::exact_dressed;
    }
    if (text == "first-order") {
        return Frame::literal_first_order;
    }
    throw ConfigError("frame must be \"exact\" or \"first-order\", got \"" + text + "\"");
}

std::string frame_name(Frame frame) { return frame == Frame::exact_dressed ? "exact" : "first-order"; }

Readout parse_readout(const std::string& text) {
    if (text == "bare") {
        return Readout::bare;
    }
    if (text == "dressed") {
        return Readout::dressed;
    }
    throw ConfigError("readout must be \"bare\" or \"dressed\", got \"" + text + "\"");
}

std::string readout_name(Readout readout) { return readout == Readout::bare ? "bare" : "dressed"; }

namespace {

void read_frame_readout(Fields& f, Frame& frame, Readout& readout) {
    if (const json* v = f.get("frame")) {
        const std::string text = as_string(*v, f.at("frame"));
        try {
            frame = parse_frame(text);
        } catch (const ConfigError& e) {
            fail(f.at("frame"), e.what());
        }
    }
    if (const json* v = f.get("readout")) {
        const std::string text = as_string(*v, f.at("readout"));
        try {
            readout = parse_readout(text);
        } catch (const ConfigError& e) {
            fail(f.at("readout"), e.what());
        }
    }
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (const auto pos = what.find("syntax error"); pos != std::string::npos) {
            what = what.substr(pos);
        }
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path.string());
}

SweepConfig sweep_config_from_json(const json& j) {
    Fields f(j, "");
    SweepConfig c;
    SweepSpec& s = c.spec;
    if (const json* v = f.get("omega0")) {
        s.omega0 = as_nonnegative(*v, f.at("omega0"));
    }
    if (const json* v = f.get("mode_freqs")) {
        s.mode_freqs = as_list(*v, f.at("mode_freqs"), as_positive);
    }
    if (const json* v = f.get("alpha_grid")) {
        s.alpha_grid = alpha_grid_from_json(*v, f.at("alpha_grid"));
    }
    if (const json* v = f.get("alpha_phase")) {
        s.alpha_phases = v->is_array() ? as_list(*v, f.at("alpha_phase"), as_number)
                                       : std::vector<double>{as_number(*v, f.at("alpha_phase"))};
    }
    if (const json* v = f.get("t_final")) {
        s.t_final = as_positive(*v, f.at("t_final"));
    }
    if (const json* v = f.get("beta")) {
        s.beta = as_positive(*v, f.at("beta"));
    }
    if (const json* v = f.get("seed")) {
        s.seed = as_unsigned(*v, f.at("seed"));
    }
    if (const json* v = f.get("truncation")) {
        s.truncation = truncation_from_json(*v, f.at("truncation"));
    }
    read_frame_readout(f, s.frame, s.readout);
    if (const json* v = f.get("fast")) {
        s.fast = as_bool(*v, f.at("fast"));
    }
    c.out = read_out(f, c.out);
    if (const json* v = f.get("workers")) {
        c.workers = as_unsigned(*v, f.at("workers"));
        if (c.workers < 1) {
            fail(f.at("workers"), "must be >= 1");
        }
    }
    f.finish();
    for (const char* key : {"mode_freqs", "alpha_grid", "alpha_phase"}) {
        if (j.contains(key) && j[key].is_array() && j[key].empty()) {
            fail(f.at(key), "must not be empty");
        }
    }
    return c;
}

json to_json(const SweepConfig& c) {
    const SweepSpec& s = c.spec;
    json j;
    j["omega0"] = s.omega0;
    j["mode_freqs"] = s.mode_freqs;
    j["alpha_grid"] = s.alpha_grid;
    j["alpha_phase"] = s.alpha_phases.size() == 1 ? json(s.alpha_phases.front()) : json(s.alpha_phases);
    j["t_final"] = s.t_final;
    j["beta"] = s.beta;
    j["seed"] = s.seed;
    j["truncation"] = truncation_to_json(s.truncation);
    j["frame"] = frame_name(s.frame);
    j["readout"] = readout_name(s.readout);
    j["fast"] = s.fast;
    j["out"] = c.out;
    j["workers"] = c.workers;
    return j;
}

CircuitConfig circuit_config_from_json(const json& j) {
    Fields f(j, "");
    CircuitConfig c;
    CircuitSpec& s = c.spec;
    model_from_fields(f, s.params);
    if (const json* v = f.get("segments")) {
        const std::string path = f.at("segments");
        if (!v->is_array()) {
            fail(path, "expected an array");
        }
        for (std::size_t k = 0; k < v->size(); ++k) {
            s.segments.push_back(segment_from_json((*v)[k], child(path, k), s.params.n_qubits()));
        }
    }
    read_frame_readout(f, s.frame, s.readout);
    if (const json* v = f.get("seed")) {
        s.seed = as_unsigned(*v, f.at("seed"));
    }
    if (const json* v = f.get("max_qubits")) {
        s.max_qubits = as_unsigned(*v, f.at("max_qubits"));
    }
    if (const json* v = f.get("max_dimension")) {
        s.max_dimension = static_cast<Index>(as_unsigned(*v, f.at("max_dimension")));
    }
    c.out = read_out(f, c.out);
    f.finish();
    return c;
}

json to_json(const CircuitConfig& c) {
    const CircuitSpec& s = c.spec;
    json j;
    model_to_json(s.params, j);
    json segments = json::array();
    for (const ControlSegment& seg : s.segments) {
        segments.push_back(segment_to_json(seg));
    }
    j["segments"] = segments;
    j["frame"] = frame_name(s.frame);
    j["readout"] = readout_name(s.readout);
    j["seed"] = s.seed;
    j["max_qubits"] = s.max_qubits;
    j["max_dimension"] = s.max_dimension;
    j["out"] = c.out;
    return j;
}

VerifyConfig verify_config_from_json(const json& j) {
    Fields f(j, "");
    VerifyConfig c;
    model_from_fields(f, c.options.params);
    if (const json* v = f.get("residual_alpha")) {
        c.options.residual_alpha = as_positive(*v, f.at("residual_alpha"));
    }
    if (const json* v = f.get("seed")) {
        c.options.seed = as_unsigned(*v, f.at("seed"));
    }
    if (const json* v = f.get("inject_nonhermitian")) {
        c.options.inject_nonhermitian = as_bool(*v, f.at("inject_nonhermitian"));
    }
    c.out = read_out(f, c.out);
    f.finish();
    return c;
}

json to_json(const VerifyConfig& c) {
    json j;
    model_to_json(c.options.params, j);
    j["residual_alpha"] = c.options.residual_alpha;
    j["seed"] = c.options.seed;
    j["inject_nonhermitian"] = c.options.inject_nonhermitian;
    j["out"] = c.out;
    return j;
}

}  // namespace dressed::cli
