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

#ifndef DARKOPT_IO_HPP
#define DARKOPT_IO_HPP

#include <filesystem>
#include <string>

#include "darkopt/optimizer.hpp"
#include "darkopt/simulator.hpp"
#include "json.hpp"

namespace darkopt::io {

using json = nlohmann::json;

/// Raised for malformed documents; carries the JSON path of the problem.
class FormatError : public Error {
   public:
    explicit FormatError(const std::string &message) : Error("FormatError", message) {
    }
};

// Matrix literal: row-major nested rows of [re, im] pairs,
// e.g. [[[1,0],[0,0]],[[0,0],[1,0]]]. Readers also accept a flat list of
// n*n pairs and bare real numbers in place of pairs.
json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &j);

// POVM file: {"dim": n, "effects": [matrix, ...]}. Completeness is always
// recomputed by validate_povm.
json povm_to_json(const Povm &povm);
Povm povm_from_json(const json &j, double tol = kCompletenessTol);

// State file: a bare matrix literal or {"state": matrix}.
DensityMatrix state_from_json(const json &j, double tol = kDefaultTol);

// Ensemble file, tagged on "kind":
//   {"kind":"discrete","members":[{"weight":w,"state":matrix},...]}
//   {"kind":"amplitude_damping","delta":d}   (optional "quadrature_points")
//   {"kind":"uniform","dim":n}
json ensemble_to_json(const Ensemble &ensemble);
Ensemble ensemble_from_json(const json &j, double tol = kDefaultTol);

// {"m": m, "t_max": T, "offsets": [...]}
json map_to_json(const AffineOutcomeMap &map);
AffineOutcomeMap map_from_json(const json &j);

// {"optimized": povm, "map": map, "original_profile": [...]}
json optimization_result_to_json(const OptimizationResult &result);
OptimizationResult optimization_result_from_json(const json &j, double tol = kCompletenessTol);

json click_record_to_json(const ClickRecord &record);

json load_json_file(const std::filesystem::path &path);
void write_json_file(const std::filesystem::path &path, const json &j);

/// Flattens a document into "path = value" lines; numeric arrays share one
/// line. Numbers use 17 significant digits.
std::string render_text(const json &j);

}  // namespace darkopt::io

#endif
