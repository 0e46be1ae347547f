// Copyright 2026 The darkopt Authors
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

#include "darkopt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace darkopt::io {

namespace {

const json &field(const json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

double number(const json &j, const std::string &where) {
    if (!j.is_number()) {
        throw FormatError(where + ": expected a number");
    }
    return j.get<double>();
}

Complex entry_from_json(const json &j, const std::string &where) {
    if (j.is_number()) {
        return {j.get<double>(), 0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw FormatError(where + ": expected [re, im] pair");
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void render(const json &j, const std::string &path, std::string &out) {
    auto scalar = [](const json &v) -> std::string {
        if (v.is_number_float()) {
            return format_number(v.get<double>());
        }
        if (v.is_string()) {
            return v.get<std::string>();
        }
        return v.dump();
    };
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            render(v, path.empty() ? k : path + "." + k, out);
        }
        return;
    }
    if (j.is_array()) {
        bool flat = std::all_of(j.begin(), j.end(), [](const json &v) { return v.is_number(); });
        if (flat) {
            out += path + " =";
            for (const auto &v : j) {
                out += " " + scalar(v);
            }
            out += "\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); i++) {
            render(j[i], path + "[" + std::to_string(i) + "]", out);
        }
        return;
    }
    out += path + " = " + scalar(j) + "\n";
}

}  // namespace

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw FormatError("matrix: expected a non-empty array");
    }
    // A row has as many entries as there are rows; a flat list of pairs does
    // not (its length is a perfect square, a pair has two numbers).
    bool nested = j[0].is_array() && !j[0].empty() && (j[0][0].is_array() || j[0].size() == j.size());
    if (nested) {
        auto n = static_cast<Eigen::Index>(j.size());
        ComplexMatrix m(n, n);
        for (Eigen::Index r = 0; r < n; r++) {
            const json &row = j[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
                throw FormatError("matrix: row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
            }
            for (Eigen::Index c = 0; c < n; c++) {
                m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)],
                                          "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
            }
        }
        return m;
    }
    auto count = static_cast<Eigen::Index>(j.size());
    auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
    if (n * n != count) {
        throw FormatError("matrix: flat entry list length " + std::to_string(count) + " is not a perfect square");
    }
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < count; i++) {
        m(i / n, i % n) = entry_from_json(j[static_cast<std::size_t>(i)], "matrix[" + std::to_string(i) + "]");
    }
    return m;
}

json povm_to_json(const Povm &povm) {
    json effects = json::array();
    for (const auto &e : povm.effects()) {
        effects.push_back(matrix_to_json(e.matrix()));
    }
    return {{"dim", povm.dim()}, {"effects", std::move(effects)}};
}

Povm povm_from_json(const json &j, double tol) {
    const json &effects = field(j, "effects", "povm");
    if (!effects.is_array()) {
        throw FormatError("povm.effects: expected an array");
    }
    std::vector<HermitianOperator> ops;
    for (std::size_t k = 0; k < effects.size(); k++) {
        ops.emplace_back(matrix_from_json(effects[k]));
    }
    if (j.contains("dim")) {
        auto dim = static_cast<std::size_t>(number(j.at("dim"), "povm.dim"));
        for (std::size_t k = 0; k < ops.size(); k++) {
            if (ops[k].dim() != dim) {
                throw DimensionError(
                    "effect " + std::to_string(k) + " does not match declared dim " + std::to_string(dim));
            }
        }
    }
    return validate_povm(std::move(ops), tol);
}

DensityMatrix state_from_json(const json &j, double tol) {
    const json &m = j.is_object() ? field(j, "state", "state file") : j;
    return validate_density(HermitianOperator(matrix_from_json(m)), tol);
}

json ensemble_to_json(const Ensemble &ensemble) {
    if (const auto *d = std::get_if<DiscreteEnsemble>(&ensemble)) {
        json members = json::array();
        for (const auto &m : d->members()) {
            members.push_back({{"weight", m.weight}, {"state", matrix_to_json(m.state.matrix())}});
        }
        return {{"kind", "discrete"}, {"members", std::move(members)}};
    }
    if (const auto *a = std::get_if<AmplitudeDampingFamily>(&ensemble)) {
        return {{"kind", "amplitude_damping"}, {"delta", a->delta}, {"quadrature_points", a->quadrature_points}};
    }
    const auto &u = std::get<UniformFullSpace>(ensemble);
    return {{"kind", "uniform"}, {"dim", u.dim}};
}

Ensemble ensemble_from_json(const json &j, double tol) {
    const json &kind_j = field(j, "kind", "ensemble");
    if (!kind_j.is_string()) {
        throw FormatError("ensemble.kind: expected a string");
    }
    const auto kind = kind_j.get<std::string>();
    if (kind == "discrete") {
        const json &members = field(j, "members", "ensemble");
        if (!members.is_array()) {
            throw FormatError("ensemble.members: expected an array");
        }
        std::vector<WeightedState> out;
        for (std::size_t i = 0; i < members.size(); i++) {
            std::string where = "ensemble.members[" + std::to_string(i) + "]";
            double w = number(field(members[i], "weight", where), where + ".weight");
            auto rho = validate_density(HermitianOperator(matrix_from_json(field(members[i], "state", where))), tol);
            out.push_back({w, std::move(rho)});
        }
        return DiscreteEnsemble(std::move(out));
    }
    if (kind == "amplitude_damping") {
        AmplitudeDampingFamily f{.delta = number(field(j, "delta", "ensemble"), "ensemble.delta")};
        if (j.contains("quadrature_points")) {
            f.quadrature_points = static_cast<int>(number(j.at("quadrature_points"), "ensemble.quadrature_points"));
        }
        f.validate();
        return f;
    }
    if (kind == "uniform") {
        double dim = number(field(j, "dim", "ensemble"), "ensemble.dim");
        if (!(dim >= 1) || dim != std::floor(dim)) {
            throw FormatError("ensemble.dim: expected a positive integer");
        }
        return UniformFullSpace{static_cast<std::size_t>(dim)};
    }
    throw FormatError("ensemble.kind: unknown kind \"" + kind + "\"");
}

json map_to_json(const AffineOutcomeMap &map) {
    return {{"m", map.m}, {"t_max", map.t_max}, {"offsets", map.offsets}};
}

AffineOutcomeMap map_from_json(const json &j) {
    AffineOutcomeMap map;
    map.m = static_cast<std::size_t>(number(field(j, "m", "map"), "map.m"));
    map.t_max = number(field(j, "t_max", "map"), "map.t_max");
    const json &offsets = field(j, "offsets", "map");
    if (!offsets.is_array()) {
        throw FormatError("map.offsets: expected an array");
    }
    for (std::size_t k = 0; k < offsets.size(); k++) {
        map.offsets.push_back(number(offsets[k], "map.offsets[" + std::to_string(k) + "]"));
    }
    map.validate();
    return map;
}

json optimization_result_to_json(const OptimizationResult &result) {
    return {
        {"optimized", povm_to_json(result.optimized)},
        {"map", map_to_json(result.map)},
        {"original_profile", result.original_profile.values()},
    };
}

OptimizationResult optimization_result_from_json(const json &j, double tol) {
    Povm optimized = povm_from_json(field(j, "optimized", "result"), tol);
    AffineOutcomeMap map = map_from_json(field(j, "map", "result"));
    const json &profile = field(j, "original_profile", "result");
    if (!profile.is_array()) {
        throw FormatError("result.original_profile: expected an array");
    }
    std::vector<double> t;
    for (const auto &v : profile) {
        t.push_back(number(v, "result.original_profile"));
    }
    if (t.size() != map.m || optimized.size() != map.m) {
        throw FormatError("result: optimized POVM, map and profile disagree on m");
    }
    return OptimizationResult{std::move(optimized), std::move(map), TraceProfile(std::move(t))};
}

json click_record_to_json(const ClickRecord &record) {
    return {
        {"counts", record.counts},
        {"trials", record.trials},
        {"total_clicks", record.total_clicks},
        {"no_click_trials", record.no_click_trials},
    };
}

json load_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("FileNotFoundError", "cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path &path, const json &j) {
    std::ofstream out(path);
    if (!out) {
        throw Error("FileError", "cannot write " + path.string());
    }
    out << j.dump(2) << "\n";
}

std::string render_text(const json &j) {
    std::string out;
    render(j, "", out);
    return out;
}

}  // namespace darkopt::io
