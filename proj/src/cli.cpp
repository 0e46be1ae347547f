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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "darkopt/io.hpp"
#include "darkopt/tomography.hpp"

namespace darkopt {

namespace {

using io::json;

struct Options {
    std::string format = "json";
    double tol = kCompletenessTol;
    uint64_t seed = 0;
    std::string output;

    std::string povm_path;
    std::string state_path;
    std::string ensemble_path;

    bool complete_first = false;
    bool quadrature_check = false;

    std::string profile;
    double epsilon = 0;
    std::optional<double> eta;
    std::optional<double> lifetime;
    bool with_optimized = false;

    uint64_t trials = 1'000'000;
    uint64_t shards = 1;

    double delta = 0.05;
    double p = 0.02;
    double tomo_epsilon = ExperimentSpec{}.epsilon;
    uint64_t reps = 100;
    bool table = false;
    std::string data_out;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_profile(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error &) {
            throw UsageError("--profile: cannot parse \"" + item + "\" as a number");
        }
    }
    if (out.empty()) {
        throw UsageError("--profile: expected a comma-separated list of numbers");
    }
    return out;
}

/// Average state from --ensemble or --state; exactly one must be given.
DensityMatrix load_average_state(const Options &o) {
    if (o.ensemble_path.empty() == o.state_path.empty()) {
        throw UsageError("give exactly one of --ensemble or --state");
    }
    if (!o.ensemble_path.empty()) {
        return average_state(io::ensemble_from_json(io::load_json_file(o.ensemble_path)));
    }
    return io::state_from_json(io::load_json_file(o.state_path));
}

Povm load_povm(const Options &o) {
    if (o.povm_path.empty()) {
        throw UsageError("--povm is required");
    }
    return io::povm_from_json(io::load_json_file(o.povm_path), o.tol);
}

json povm_summary(const Povm &povm) {
    return {
        {"valid", true},
        {"dim", povm.dim()},
        {"m", povm.size()},
        {"completeness", std::string(to_string(povm.completeness()))},
    };
}

json optimality_to_json(const OptimalityReport &r) {
    json failed = json::array();
    for (const auto &f : r.failed_probes) {
        failed.push_back({{"probe", f.probe_index}, {"probability_sum", f.probability_sum}});
    }
    return {
        {"optimal", r.optimal},
        {"balanced", r.balanced},
        {"complete_on_probes", r.complete_on_probes},
        {"spread", r.spread},
        {"probes_checked", r.probes_checked},
        {"failed_probes", std::move(failed)},
        {"explanation", r.explain()},
    };
}

json darkcount_block(const TraceProfile &profile, const Options &o) {
    DarkCountModel model(o.epsilon);
    json block{{"profile", profile.values()}};
    if (profile.is_normalized()) {
        block["observed_distribution"] = observed_distribution(profile, model);
    }
    if (profile.min() > 1e-12) {
        auto ratios = inflation_ratios(profile, model);
        block["inflation_ratios"] = ratios;
        block["max_inflation"] = *std::max_element(ratios.begin(), ratios.end());
        if (o.epsilon > 0) {
            block["gm_figure_of_merit"] = gm_figure_of_merit(profile, model);
        }
        if (o.eta) {
            block["subtraction_residual"] = subtraction_residual(profile, o.epsilon, *o.eta);
        }
    } else {
        std::size_t k = static_cast<std::size_t>(
            std::min_element(profile.values().begin(), profile.values().end()) - profile.values().begin());
        block["zero_effect"] = k;
    }
    if (o.lifetime) {
        block["lifetime_capacity"] = lifetime_capacity(profile, LifetimeModel(*o.lifetime));
    }
    return block;
}

json cmd_validate(const Options &o) {
    if (o.povm_path.empty() && o.state_path.empty() && o.ensemble_path.empty()) {
        throw UsageError("validate needs --povm, --state or --ensemble");
    }
    json report = json::object();
    if (!o.povm_path.empty()) {
        report["povm"] = povm_summary(load_povm(o));
    }
    if (!o.state_path.empty()) {
        auto rho = io::state_from_json(io::load_json_file(o.state_path));
        report["state"] = {{"valid", true}, {"dim", rho.dim()}, {"trace", rho.op().trace()}};
    }
    if (!o.ensemble_path.empty()) {
        auto ens = io::ensemble_from_json(io::load_json_file(o.ensemble_path));
        report["ensemble"] = {{"valid", true}, {"dim", ensemble_dim(ens)}, {"kind", io::ensemble_to_json(ens)["kind"]}};
    }
    return report;
}

json cmd_average_state(const Options &o) {
    if (o.ensemble_path.empty()) {
        throw UsageError("average-state needs --ensemble");
    }
    auto ens = io::ensemble_from_json(io::load_json_file(o.ensemble_path));
    auto avg = average_state(ens);
    json report{
        {"dim", avg.dim()},
        {"average_state", io::matrix_to_json(avg.matrix())},
        {"trace", avg.op().trace()},
    };
    if (const auto *fam = std::get_if<AmplitudeDampingFamily>(&ens); fam && o.quadrature_check) {
        auto trap = trapezoid_average_state(*fam);
        report["trapezoid_max_deviation"] = max_abs_diff(trap.matrix(), avg.matrix());
    }
    return report;
}

json cmd_profile(const Options &o) {
    Povm povm = load_povm(o);
    json report;
    TraceProfile profile = trace_profile(povm, load_average_state(o));
    report["profile"] = profile.values();
    report["sum"] = profile.sum();
    report["spread"] = profile.max() - profile.min();
    report["balanced"] = is_balanced(profile);
    if (!o.ensemble_path.empty()) {
        auto ens = io::ensemble_from_json(io::load_json_file(o.ensemble_path));
        report["d_trace_optimality"] = optimality_to_json(is_d_trace_optimal(povm, ens));
    }
    return report;
}

json cmd_optimize(const Options &o) {
    Povm povm = load_povm(o);
    if (o.complete_first) {
        povm = complete_first(povm).povm;
    }
    auto result = optimize(povm, load_average_state(o));
    return io::optimization_result_to_json(result);
}

json cmd_darkcount_report(const Options &o) {
    json report{{"epsilon", o.epsilon}};
    if (o.eta) {
        report["eta"] = *o.eta;
    }
    if (o.lifetime) {
        report["lifetime"] = *o.lifetime;
    }
    if (!o.profile.empty()) {
        if (!o.povm_path.empty()) {
            throw UsageError("give either --profile or --povm, not both");
        }
        TraceProfile profile(parse_profile(o.profile));
        report["original"] = darkcount_block(profile, o);
        if (o.with_optimized) {
            if (!profile.is_normalized()) {
                throw ValidationError("ProfileError", "--with-optimized needs a profile summing to 1");
            }
            double m = static_cast<double>(profile.size());
            report["optimized"] = darkcount_block(TraceProfile(std::vector<double>(profile.size(), 1 / m)), o);
        }
        return report;
    }
    Povm povm = load_povm(o);
    auto avg = load_average_state(o);
    TraceProfile profile = trace_profile(povm, avg);
    report["original"] = darkcount_block(profile, o);
    if (povm.is_complete()) {
        auto result = optimize(povm, avg);
        report["optimized"] = darkcount_block(trace_profile(result.optimized, avg), o);
    }
    return report;
}

json cmd_simulate(const Options &o) {
    Povm povm = load_povm(o);
    // Per-trial draws from an ensemble have the Born statistics of its average.
    auto rho = load_average_state(o);
    DarkCountModel model(o.epsilon);
    SimConfig cfg{.trials = o.trials, .seed = o.seed, .shards = o.shards};
    auto record = sample_clicks(povm, rho, model, cfg);

    auto q = born_probabilities(povm, rho);
    double denom = std::accumulate(q.begin(), q.end(), 0.0) + static_cast<double>(q.size()) * o.epsilon;
    std::vector<double> analytic;
    for (double v : q) {
        analytic.push_back((v + o.epsilon) / denom);
    }
    json report{
        {"config", {{"trials", o.trials}, {"seed", o.seed}, {"shards", o.shards}, {"epsilon", o.epsilon}}},
        {"record", io::click_record_to_json(record)},
        {"born_probabilities", q},
        {"analytic_distribution", analytic},
    };
    if (record.total_clicks > 0) {
        report["empirical_distribution"] = empirical_distribution(record);
    }
    return report;
}

json cmd_tomography(const Options &o, std::string &table) {
    ExperimentSpec spec{
        .delta = o.delta,
        .true_p = o.p,
        .epsilon = o.tomo_epsilon,
        .eta = o.eta.value_or(0),
        .trials = o.trials,
        .seed = o.seed,
        .repetitions = o.reps,
    };
    auto reports = run_experiment(spec);
    auto predicted = predicted_estimates(spec);
    auto inflation = inflation_comparison(spec);

    json pipelines = json::array();
    for (std::size_t i = 0; i < reports.size(); i++) {
        const auto &r = reports[i];
        double mean = r.bias + spec.true_p;
        pipelines.push_back({
            {"name", r.estimator_name},
            {"mean", mean},
            {"bias", r.bias},
            {"mse", r.mse},
            {"predicted_mean", predicted[i]},
            {"estimates", r.estimates},
        });
    }
    json report{
        {"experiment",
         {{"delta", spec.delta},
          {"true_p", spec.true_p},
          {"epsilon", spec.epsilon},
          {"eta", spec.eta},
          {"trials", spec.trials},
          {"repetitions", spec.repetitions},
          {"seed", spec.seed}}},
        {"pipelines", std::move(pipelines)},
        {"inflation",
         {{"raw_profile", inflation.raw_profile.values()},
          {"optimized_profile", inflation.optimized_profile.values()},
          {"raw_max_inflation", inflation.raw_max_inflation},
          {"optimized_max_inflation", inflation.optimized_max_inflation},
          {"raw_gm", inflation.raw_gm},
          {"optimized_gm", inflation.optimized_gm}}},
    };

    if (o.table) {
        char line[160];
        table += "# pipeline        mean                  bias                  mse\n";
        for (const auto &r : reports) {
            std::snprintf(line, sizeof(line), "# %-10s %21.17g %21.17g %21.17g\n", r.estimator_name.c_str(),
                          r.bias + spec.true_p, r.bias, r.mse);
            table += line;
        }
    }
    if (!o.data_out.empty()) {
        std::ofstream data(o.data_out);
        if (!data) {
            throw Error("FileError", "cannot write " + o.data_out);
        }
        char line[64];
        for (const auto &r : reports) {
            for (double e : r.estimates) {
                std::snprintf(line, sizeof(line), "%.17g", e);
                data << r.estimator_name << " " << line << "\n";
            }
        }
    }
    return report;
}

void add_input_flags(CLI::App *cmd, Options &o, bool povm, bool state, bool ensemble) {
    if (povm) {
        cmd->add_option("--povm", o.povm_path, "POVM JSON file");
    }
    if (state) {
        cmd->add_option("--state", o.state_path, "density matrix JSON file");
    }
    if (ensemble) {
        cmd->add_option("--ensemble", o.ensemble_path, "ensemble JSON file");
    }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Dark-count robust POVM toolkit", "darkopt"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--tol", o.tol, "completeness tolerance for POVM validation");
    app.add_option("--seed", o.seed, "seed for stochastic commands");
    app.add_option("-o,--output", o.output, "write the report to this file instead of stdout");

    auto *validate = app.add_subcommand("validate", "validate POVM, state or ensemble files");
    add_input_flags(validate, o, true, true, true);

    auto *average = app.add_subcommand("average-state", "average state of an ensemble");
    add_input_flags(average, o, false, false, true);
    average->add_flag("--quadrature-check", o.quadrature_check, "cross-check the damping family by trapezoid rule");

    auto *profile = app.add_subcommand("profile", "trace profile and optimality predicates");
    add_input_flags(profile, o, true, true, true);

    auto *opt = app.add_subcommand("optimize", "rebalance a POVM against an average state");
    add_input_flags(opt, o, true, true, true);
    opt->add_flag("--complete-first", o.complete_first, "append I - sum(M_k) to a sub-normalized POVM first");

    auto *dark = app.add_subcommand("darkcount-report", "closed-form dark-count analytics");
    add_input_flags(dark, o, true, true, true);
    dark->add_option("--profile", o.profile, "inline comma-separated profile");
    dark->add_option("--epsilon", o.epsilon, "dark count rate")->required();
    dark->add_option("--eta", o.eta, "assumed dark count rate for subtraction");
    dark->add_option("--lifetime", o.lifetime, "clicks a detector survives");
    dark->add_flag("--with-optimized", o.with_optimized, "add the balanced block for an inline profile");

    auto *sim = app.add_subcommand("simulate", "Monte Carlo click simulation");
    add_input_flags(sim, o, true, true, true);
    sim->add_option("--epsilon", o.epsilon, "dark count rate");
    sim->add_option("--trials", o.trials, "measurement windows")->check(CLI::PositiveNumber);
    sim->add_option("--shards", o.shards, "independent sub-streams")->check(CLI::PositiveNumber);

    auto *tomo = app.add_subcommand("tomography", "amplitude damping estimation benchmark");
    tomo->add_option("--delta", o.delta, "upper bound of the damping strength");
    tomo->add_option("--p", o.p, "true damping strength");
    tomo->add_option("--epsilon", o.tomo_epsilon, "actual dark count rate")->capture_default_str();
    tomo->add_option("--eta", o.eta, "assumed dark count rate for SUBTRACT");
    tomo->add_option("--trials", o.trials, "trials per repetition")->check(CLI::PositiveNumber);
    tomo->add_option("--reps", o.reps, "independent repetitions")->check(CLI::PositiveNumber);
    tomo->add_flag("--table", o.table, "append a summary table (lines start with '#')");
    tomo->add_option("--data-out", o.data_out, "write 'pipeline estimate' lines for plotting");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "darkopt: " << e.what() << "\n";
        return kExitUsage;
    }

    json report;
    std::string table;
    try {
        if (validate->parsed()) {
            report = cmd_validate(o);
        } else if (average->parsed()) {
            report = cmd_average_state(o);
        } else if (profile->parsed()) {
            report = cmd_profile(o);
        } else if (opt->parsed()) {
            report = cmd_optimize(o);
        } else if (dark->parsed()) {
            report = cmd_darkcount_report(o);
        } else if (sim->parsed()) {
            report = cmd_simulate(o);
        } else {
            report = cmd_tomography(o, table);
        }
    } catch (const UsageError &e) {
        err << "darkopt: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        json payload{{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        out << (o.format == "text" ? io::render_text(payload) : payload.dump(2) + "\n");
        err << "darkopt: " << e.kind() << ": " << e.what() << "\n";
        return kExitFailure;
    }

    std::string rendered = o.format == "text" ? io::render_text(report) + table : report.dump(2) + "\n" + table;
    if (o.output.empty()) {
        out << rendered;
    } else {
        std::ofstream file(o.output);
        if (!file) {
            err << "darkopt: cannot write " << o.output << "\n";
            return kExitFailure;
        }
        file << rendered;
    }
    return kExitOk;
}

}  // namespace darkopt
