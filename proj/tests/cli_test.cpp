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

#include "darkopt/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "darkopt/io.hpp"
#include "gtest/gtest.h"

using namespace darkopt;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("darkopt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
        write("basis.json", R"({"dim": 2, "effects": [[[[1,0],[0,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[0,0],[1,0]]]]})");
        write("half.json", R"({"dim": 2, "effects": [[[0.5,0],[0,0]], [[0,0],[0,0.5]]]})");
        write("overcomplete.json", R"({"dim": 2, "effects": [[[1,0],[0,0]], [[0.5,0],[0,1]]]})");
        write("ad005.json", R"({"kind": "amplitude_damping", "delta": 0.05})");
        write("uniform2.json", R"({"kind": "uniform", "dim": 2})");
        write("state.json", R"({"state": [[0.3,0],[0,0.7]]})");
    }
    void TearDown() override {
        fs::remove_all(dir);
    }
    std::string path(const std::string &name) const {
        return (dir / name).string();
    }
    void write(const std::string &name, const std::string &text) const {
        std::ofstream(dir / name) << text;
    }

    fs::path dir;
};

/// Independent flattening of JSON numbers, keyed like the text renderer.
void collect(const json &j, const std::string &path, std::map<std::string, std::vector<double>> &out) {
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            collect(v, path.empty() ? k : path + "." + k, out);
        }
    } else if (j.is_array()) {
        bool numeric = !j.empty();
        for (const auto &v : j) {
            numeric = numeric && v.is_number();
        }
        if (numeric) {
            for (const auto &v : j) {
                out[path].push_back(v.get<double>());
            }
        } else {
            for (std::size_t i = 0; i < j.size(); i++) {
                collect(j[i], path + "[" + std::to_string(i) + "]", out);
            }
        }
    } else if (j.is_number()) {
        out[path].push_back(j.get<double>());
    }
}

std::map<std::string, std::vector<double>> parse_text(const std::string &text) {
    std::map<std::string, std::vector<double>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto eq = line.find(" = ");
        if (eq == std::string::npos) {
            eq = line.find(" =");
        }
        std::string key = line.substr(0, eq);
        std::istringstream values(line.substr(eq + 2));
        std::string token;
        std::vector<double> nums;
        bool numeric = true;
        while (values >> token) {
            try {
                std::size_t used = 0;
                nums.push_back(std::stod(token, &used));
                numeric = numeric && used == token.size();
            } catch (const std::exception &) {
                numeric = false;
            }
        }
        if (numeric && !nums.empty()) {
            out[key] = nums;
        }
    }
    return out;
}

}  // namespace

TEST_F(CliTest, optimize_amplitude_damping_family) {
    auto r = run({"optimize", "--povm", path("basis.json"), "--ensemble", path("ad005.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    // T = (0.025, 0.975): T_max = 0.975, y = (0.95, 0), mT = 1.95.
    ASSERT_NEAR(j["map"]["t_max"].get<double>(), 0.975, 1e-15);
    ASSERT_NEAR(j["map"]["offsets"][0].get<double>(), 0.95, 1e-15);
    ASSERT_EQ(j["map"]["offsets"][1].get<double>(), 0);
    auto result = io::optimization_result_from_json(j);
    auto profile = trace_profile(result.optimized, average_state(AmplitudeDampingFamily{.delta = 0.05}));
    ASSERT_NEAR(profile[0], 0.5, 1e-15);
    ASSERT_NEAR(profile[1], 0.5, 1e-15);
    // M'_0 = diag(1 + 0.95, 0.95) / 1.95.
    ASSERT_NEAR(result.optimized.effect(0).matrix()(0, 0).real(), 1.95 / 1.95, 1e-15);
    ASSERT_NEAR(result.optimized.effect(0).matrix()(1, 1).real(), 0.95 / 1.95, 1e-15);
}

TEST_F(CliTest, optimize_output_file_revalidates_complete) {
    auto r = run({"optimize", "--povm", path("basis.json"), "--state", path("state.json"), "-o", path("opt.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = io::load_json_file(path("opt.json"));
    auto reloaded = io::povm_from_json(j["optimized"]);
    ASSERT_TRUE(reloaded.is_complete());
    auto v = run({"validate", "--povm", path("opt.json")});
    ASSERT_EQ(v.code, 1);  // an optimization result is not a bare POVM file
    std::ofstream(path("opt_povm.json")) << j["optimized"].dump();
    v = run({"validate", "--povm", path("opt_povm.json")});
    ASSERT_EQ(v.code, 0) << v.err;
    ASSERT_EQ(json::parse(v.out)["povm"]["completeness"], "Complete");
}

TEST_F(CliTest, optimize_sub_normalized_requires_completion) {
    auto r = run({"optimize", "--povm", path("half.json"), "--ensemble", path("uniform2.json")});
    ASSERT_EQ(r.code, 1);
    ASSERT_EQ(json::parse(r.out)["error"]["kind"], "IncompleteInputError");
    r = run({"optimize", "--complete-first", "--povm", path("half.json"), "--ensemble", path("uniform2.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(json::parse(r.out)["map"]["m"], 3);
}

TEST_F(CliTest, darkcount_report_lifetime) {
    auto r = run({"darkcount-report", "--profile", "0.25,0.25,0.25,0.25", "--epsilon", "0.01", "--lifetime", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_EQ(j["original"]["lifetime_capacity"].get<double>(), 400.0);
    ASSERT_NEAR(j["original"]["gm_figure_of_merit"].get<double>(), 0.04, 1e-15);

    r = run({"darkcount-report", "--profile", "0.05,0.05,0.1,0.8", "--epsilon", "0.01", "--lifetime", "100",
             "--with-optimized", "--eta", "0.005"});
    ASSERT_EQ(r.code, 0) << r.err;
    j = json::parse(r.out);
    ASSERT_EQ(j["original"]["lifetime_capacity"].get<double>(), 125.0);
    ASSERT_EQ(j["optimized"]["lifetime_capacity"].get<double>(), 400.0);
    ASSERT_EQ(j["original"]["subtraction_residual"].size(), 4u);
}

TEST_F(CliTest, darkcount_report_from_povm) {
    auto r = run({"darkcount-report", "--povm", path("basis.json"), "--ensemble", path("ad005.json"), "--epsilon",
                  "1e-4"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_NEAR(j["original"]["max_inflation"].get<double>(), 1.004, 1e-12);
    ASSERT_NEAR(j["optimized"]["max_inflation"].get<double>(), 1.0002, 1e-12);
}

TEST_F(CliTest, validate_reports_errors) {
    auto r = run({"validate", "--povm", path("overcomplete.json")});
    ASSERT_EQ(r.code, 1);
    ASSERT_EQ(json::parse(r.out)["error"]["kind"], "OvercompleteError");
    ASSERT_NE(r.err.find("OvercompleteError"), std::string::npos);

    r = run({"validate", "--povm", path("half.json"), "--ensemble", path("ad005.json"), "--state", path("state.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_EQ(j["povm"]["completeness"], "SubNormalized");
    ASSERT_EQ(j["ensemble"]["kind"], "amplitude_damping");

    r = run({"validate", "--povm", path("missing.json")});
    ASSERT_EQ(r.code, 1);
    ASSERT_EQ(json::parse(r.out)["error"]["kind"], "FileNotFoundError");

    write("broken.json", "{ not json");
    r = run({"validate", "--povm", path("broken.json")});
    ASSERT_EQ(r.code, 1);
    ASSERT_EQ(json::parse(r.out)["error"]["kind"], "FormatError");
}

TEST_F(CliTest, usage_errors_exit_2) {
    ASSERT_EQ(run({}).code, 2);
    ASSERT_EQ(run({"frobnicate"}).code, 2);
    ASSERT_EQ(run({"darkcount-report", "--profile", "0.5,0.5"}).code, 2);  // --epsilon missing
    ASSERT_EQ(run({"darkcount-report", "--profile", "0.5,x", "--epsilon", "0.1"}).code, 2);
    ASSERT_EQ(run({"profile", "--povm", path("basis.json")}).code, 2);  // no state source
    ASSERT_EQ(run({"--format", "xml", "validate", "--povm", path("basis.json")}).code, 2);
    ASSERT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, profile_and_average_state) {
    auto r = run({"profile", "--povm", path("basis.json"), "--ensemble", path("ad005.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_NEAR(j["profile"][0].get<double>(), 0.025, 1e-15);
    ASSERT_FALSE(j["balanced"].get<bool>());
    ASSERT_FALSE(j["d_trace_optimality"]["optimal"].get<bool>());

    r = run({"average-state", "--ensemble", path("ad005.json"), "--quadrature-check"});
    ASSERT_EQ(r.code, 0) << r.err;
    j = json::parse(r.out);
    ASSERT_LE(j["trapezoid_max_deviation"].get<double>(), 1e-8);
    ASSERT_NEAR(j["average_state"][0][0][0].get<double>(), 0.025, 1e-15);
}

TEST_F(CliTest, simulate_is_deterministic) {
    std::vector<std::string> args{"simulate", "--povm", path("basis.json"), "--state", path("state.json"),
                                  "--epsilon", "0.01", "--trials", "20000", "--seed", "17", "--shards", "2"};
    auto a = run(args);
    auto b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(a.out, b.out);
    auto j = json::parse(a.out);
    ASSERT_EQ(j["record"]["trials"], 20000);
    ASSERT_EQ(j["record"]["no_click_trials"], 0);
    ASSERT_NEAR(j["analytic_distribution"][0].get<double>(), 0.31 / 1.02, 1e-15);
}

TEST_F(CliTest, text_and_json_carry_identical_numbers) {
    std::vector<std::vector<std::string>> commands{
        {"optimize", "--povm", path("basis.json"), "--ensemble", path("ad005.json")},
        {"profile", "--povm", path("basis.json"), "--ensemble", path("uniform2.json")},
        {"average-state", "--ensemble", path("ad005.json"), "--quadrature-check"},
        {"darkcount-report", "--profile", "0.05,0.05,0.1,0.8", "--epsilon", "0.01", "--lifetime", "100", "--eta",
         "0.003", "--with-optimized"},
        {"simulate", "--povm", path("basis.json"), "--ensemble", path("ad005.json"), "--epsilon", "0.001", "--trials",
         "5000", "--seed", "2"},
        {"tomography", "--trials", "2000", "--reps", "3", "--epsilon", "0.001", "--seed", "8", "--table"},
        {"validate", "--povm", path("basis.json")},
    };
    for (auto args : commands) {
        auto as_json = run(args);
        ASSERT_EQ(as_json.code, 0) << args[0] << ": " << as_json.err;
        args.insert(args.begin(), {"--format", "text"});
        auto as_text = run(args);
        ASSERT_EQ(as_text.code, 0) << args[2] << ": " << as_text.err;

        std::string body = as_json.out.substr(0, as_json.out.rfind('}') + 1);
        std::map<std::string, std::vector<double>> from_json;
        collect(json::parse(body), "", from_json);
        auto from_text = parse_text(as_text.out);
        ASSERT_FALSE(from_json.empty());
        ASSERT_EQ(from_json, from_text) << args[2];
    }
}

TEST_F(CliTest, format_flag_after_subcommand) {
    auto r = run({"validate", "--povm", path("basis.json"), "--format", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_NE(r.out.find("povm.completeness = Complete"), std::string::npos);
}

TEST_F(CliTest, tomography_outputs) {
    auto r = run({"tomography", "--trials", "5000", "--reps", "4", "--seed", "3", "--data-out", path("est.dat")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    ASSERT_EQ(j["pipelines"].size(), 3u);
    ASSERT_EQ(j["pipelines"][0]["name"], "RAW");
    ASSERT_NEAR(j["inflation"]["raw_max_inflation"].get<double>(), 1.004, 1e-12);

    std::ifstream data(path("est.dat"));
    std::string label;
    double value;
    int lines = 0;
    while (data >> label >> value) {
        lines++;
        ASSERT_TRUE(label == "RAW" || label == "SUBTRACT" || label == "OPTIMIZED");
    }
    ASSERT_EQ(lines, 12);

    auto again = run({"tomography", "--trials", "5000", "--reps", "4", "--seed", "3"});
    ASSERT_EQ(again.out, r.out);
}
