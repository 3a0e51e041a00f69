/**
 * Copyright 2026 The ngbs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ngbs/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ngbs::config {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) fail(where + ": unknown key '" + item.key() + "'");
    }
}

Complex read_complex(const json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    fail(where + ": expected a number or an [re, im] pair");
}

json write_complex(Complex z) { return json::array({z.real(), z.imag()}); }

std::vector<Complex> read_complex_list(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where + ": expected a non-empty list");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_complex(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

double read_number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where + ": expected a number");
    return v.get<double>();
}

int read_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where + ": expected an integer");
    return v.get<int>();
}

TargetEntry read_target(const json& v, const std::string& where) {
    TargetEntry e;
    if (v.is_string()) {
        e.preset = v.get<std::string>();
        if (e.preset != "single_photon") fail(where + ": preset '" + e.preset + "' needs parameters");
        return e;
    }
    if (v.is_array()) {
        e.coeffs = read_complex_list(v, where);
        return e;
    }
    if (!v.is_object()) fail(where + ": expected a preset name, a coefficient list or an object");
    check_keys(v, {"preset", "n", "alpha", "degree", "amplitudes", "creation_coeffs", "r", "t"}, where);
    if (v.contains("r")) e.r = read_number(v["r"], where + ".r");
    if (v.contains("t")) e.t = read_number(v["t"], where + ".t");

    const int forms = static_cast<int>(v.contains("preset")) + static_cast<int>(v.contains("amplitudes")) +
                      static_cast<int>(v.contains("creation_coeffs"));
    if (forms != 1) fail(where + ": give exactly one of preset, amplitudes, creation_coeffs");

    if (v.contains("amplitudes")) {
        e.coeffs = read_complex_list(v["amplitudes"], where + ".amplitudes");
        return e;
    }
    if (v.contains("creation_coeffs")) {
        e.coeffs = read_complex_list(v["creation_coeffs"], where + ".creation_coeffs");
        e.creation = true;
        return e;
    }
    if (!v["preset"].is_string()) fail(where + ".preset: expected a string");
    e.preset = v["preset"].get<std::string>();
    if (e.preset == "single_photon") {
        return e;
    }
    if (e.preset == "fock_n") {
        if (!v.contains("n")) fail(where + ": fock_n needs n");
        e.n = read_int(v["n"], where + ".n");
        if (e.n < 0) fail(where + ".n: must be >= 0");
        return e;
    }
    if (e.preset == "cat_even") {
        if (!v.contains("alpha") || !v.contains("degree")) fail(where + ": cat_even needs alpha and degree");
        e.alpha = read_complex(v["alpha"], where + ".alpha");
        e.degree = read_int(v["degree"], where + ".degree");
        if (e.degree < 0) fail(where + ".degree: must be >= 0");
        return e;
    }
    fail(where + ": unknown preset '" + e.preset + "'");
}

json write_target(const TargetEntry& e) {
    json out = json::object();
    if (e.preset.empty()) {
        json list = json::array();
        for (Complex z : e.coeffs) list.push_back(write_complex(z));
        out[e.creation ? "creation_coeffs" : "amplitudes"] = list;
    } else {
        out["preset"] = e.preset;
        if (e.preset == "fock_n") out["n"] = e.n;
        if (e.preset == "cat_even") {
            out["alpha"] = write_complex(e.alpha);
            out["degree"] = e.degree;
        }
    }
    if (e.r) out["r"] = *e.r;
    if (e.t) out["t"] = *e.t;
    return out;
}

InterferometerEntry read_interferometer(const json& v) {
    const std::string where = "interferometer";
    InterferometerEntry e;
    if (!v.is_object()) fail(where + ": expected an object");
    check_keys(v, {"preset", "size", "matrix"}, where);
    if (v.contains("preset") == v.contains("matrix")) fail(where + ": give exactly one of preset, matrix");
    if (v.contains("preset")) {
        if (!v["preset"].is_string()) fail(where + ".preset: expected a string");
        e.preset = v["preset"].get<std::string>();
        if (e.preset != "identity" && e.preset != "dft" && e.preset != "bs50") {
            fail(where + ": unknown preset '" + e.preset + "'");
        }
        if (!v.contains("size")) fail(where + ": preset needs size");
        e.size = read_int(v["size"], where + ".size");
        if (e.size < 1) fail(where + ".size: must be >= 1");
        if (e.preset == "bs50" && e.size < 2) fail(where + ": bs50 needs size >= 2");
        return e;
    }
    if (v.contains("size")) fail(where + ": size only applies to presets");
    const json& m = v["matrix"];
    if (!m.is_array() || m.empty()) fail(where + ".matrix: expected a non-empty list of rows");
    const auto n = static_cast<Index>(m.size());
    e.matrix.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        const std::string row_where = where + ".matrix[" + std::to_string(i) + "]";
        const json& row = m[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) fail(row_where + ": expected a square matrix");
        for (Index j = 0; j < n; ++j) {
            e.matrix(i, j) = read_complex(row[static_cast<std::size_t>(j)], row_where);
        }
    }
    e.size = static_cast<int>(n);
    const double defect = unitarity_defect(e.matrix);
    if (defect > 1e-10) {
        std::ostringstream msg;
        msg << where << ".matrix: not unitary, max |U^dagger U - I| = " << defect;
        fail(msg.str());
    }
    return e;
}

json write_interferometer(const InterferometerEntry& e) {
    json out = json::object();
    if (!e.preset.empty()) {
        out["preset"] = e.preset;
        out["size"] = e.size;
        return out;
    }
    json rows = json::array();
    for (Index i = 0; i < e.matrix.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < e.matrix.cols(); ++j) row.push_back(write_complex(e.matrix(i, j)));
        rows.push_back(row);
    }
    out["matrix"] = rows;
    return out;
}

}  // namespace

prep::TargetState TargetEntry::target() const {
    if (preset == "single_photon") return prep::TargetState::single_photon();
    if (preset == "fock_n") return prep::TargetState::fock(n);
    if (preset == "cat_even") return prep::TargetState::even_cat(alpha, degree);
    if (!preset.empty()) fail("unknown target preset '" + preset + "'");
    return creation ? prep::TargetState::from_creation_coeffs(coeffs) : prep::TargetState::from_amplitudes(coeffs);
}

CMatrix InterferometerEntry::unitary() const {
    if (preset.empty()) return matrix;
    const Index n = size;
    CMatrix u = CMatrix::Identity(n, n);
    if (preset == "dft") {
        const double norm = 1.0 / std::sqrt(static_cast<double>(n));
        for (Index j = 0; j < n; ++j) {
            for (Index k = 0; k < n; ++k) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
                u(j, k) = std::polar(norm, angle);
            }
        }
    } else if (preset == "bs50") {
        const double h = std::numbers::sqrt2 / 2.0;
        u(0, 0) = h;
        u(0, 1) = h;
        u(1, 0) = -h;
        u(1, 1) = h;
    }
    return u;
}

std::vector<prep::TargetState> ExperimentConfig::target_states() const {
    std::vector<prep::TargetState> out;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        try {
            out.push_back(targets[k].target());
        } catch (const Error& e) {
            fail("targets[" + std::to_string(k) + "]: " + e.what());
        }
    }
    return out;
}

std::vector<SourceSpec> ExperimentConfig::sources() const {
    const auto states = target_states();
    std::vector<SourceSpec> out;
    for (std::size_t k = 0; k < states.size(); ++k) {
        const double rk = targets[k].r.value_or(r);
        const double tk = targets[k].t.value_or(t);
        try {
            SourceSpec spec = prep::source_for_target(states[k], rk, tk);
            spec.validate();
            out.push_back(std::move(spec));
        } catch (const Error& e) {
            fail("targets[" + std::to_string(k) + "]: " + e.what());
        }
    }
    return out;
}

Experiment ExperimentConfig::experiment() const {
    Experiment exp;
    exp.sources = sources();
    exp.interferometer = interferometer.unitary();
    exp.wiring = wiring;
    exp.cutoff = cutoff;
    try {
        exp.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    return exp;
}

ExperimentConfig parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("top level: expected an object");
    check_keys(doc, {"targets", "source_params", "interferometer", "wiring", "cutoff", "seed"}, "top level");

    ExperimentConfig cfg;
    if (doc.contains("targets")) {
        if (!doc["targets"].is_array()) fail("targets: expected a list");
        for (std::size_t k = 0; k < doc["targets"].size(); ++k) {
            cfg.targets.push_back(read_target(doc["targets"][k], "targets[" + std::to_string(k) + "]"));
        }
    }
    if (doc.contains("source_params")) {
        const json& sp = doc["source_params"];
        if (!sp.is_object()) fail("source_params: expected an object");
        check_keys(sp, {"r", "t"}, "source_params");
        if (sp.contains("r")) cfg.r = read_number(sp["r"], "source_params.r");
        if (sp.contains("t")) cfg.t = read_number(sp["t"], "source_params.t");
    }
    const int k_sources = static_cast<int>(cfg.targets.size());
    if (doc.contains("interferometer")) {
        cfg.interferometer = read_interferometer(doc["interferometer"]);
    } else {
        cfg.interferometer.preset = "identity";
        cfg.interferometer.size = std::max(k_sources, 1);
    }
    if (doc.contains("wiring")) {
        if (!doc["wiring"].is_array()) fail("wiring: expected a list of mode indices");
        for (std::size_t k = 0; k < doc["wiring"].size(); ++k) {
            cfg.wiring.push_back(read_int(doc["wiring"][k], "wiring[" + std::to_string(k) + "]"));
        }
    } else {
        for (int k = 0; k < k_sources; ++k) cfg.wiring.push_back(k);
    }
    if (doc.contains("cutoff")) {
        cfg.cutoff = read_int(doc["cutoff"], "cutoff");
        if (cfg.cutoff < 0) fail("cutoff: must be >= 0");
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) fail("seed: expected a non-negative integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    return cfg;
}

ExperimentConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string to_text(const ExperimentConfig& config) {
    json doc = json::object();
    json targets = json::array();
    for (const auto& t : config.targets) targets.push_back(write_target(t));
    doc["targets"] = targets;
    doc["source_params"] = {{"r", config.r}, {"t", config.t}};
    doc["interferometer"] = write_interferometer(config.interferometer);
    doc["wiring"] = config.wiring;
    doc["cutoff"] = config.cutoff;
    doc["seed"] = config.seed;
    return doc.dump(2) + "\n";
}

}  // namespace ngbs::config
