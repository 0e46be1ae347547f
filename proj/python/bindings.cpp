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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "darkopt/darkcount.hpp"
#include "darkopt/optimizer.hpp"
#include "darkopt/simulator.hpp"
#include "darkopt/tomography.hpp"

namespace py = pybind11;
using namespace darkopt;

namespace {

PyObject *error_type = nullptr;

std::vector<HermitianOperator> to_operators(const std::vector<ComplexMatrix> &mats) {
    std::vector<HermitianOperator> out;
    out.reserve(mats.size());
    for (const auto &m : mats) {
        out.emplace_back(m);
    }
    return out;
}

DensityMatrix to_density(const ComplexMatrix &m) {
    return validate_density(HermitianOperator(m));
}

Ensemble to_ensemble(const py::handle &obj) {
    if (py::isinstance<DiscreteEnsemble>(obj)) {
        return obj.cast<DiscreteEnsemble>();
    }
    if (py::isinstance<AmplitudeDampingFamily>(obj)) {
        return obj.cast<AmplitudeDampingFamily>();
    }
    if (py::isinstance<UniformFullSpace>(obj)) {
        return obj.cast<UniformFullSpace>();
    }
    throw py::type_error("expected DiscreteEnsemble, AmplitudeDampingFamily or UniformFullSpace");
}

std::vector<ComplexMatrix> effect_matrices(const Povm &povm) {
    std::vector<ComplexMatrix> out;
    for (const auto &e : povm.effects()) {
        out.push_back(e.matrix());
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dark-count aware POVM optimization.";

    error_type = PyErr_NewException("darkopt._core.DarkoptError", PyExc_ValueError, nullptr);
    m.attr("DarkoptError") = py::handle(error_type);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::object instance = py::reinterpret_borrow<py::object>(error_type)(e.what());
            instance.attr("kind") = e.kind();
            PyErr_SetObject(error_type, instance.ptr());
        }
    });

    py::class_<Povm>(m, "Povm")
        .def_property_readonly("dim", &Povm::dim)
        .def_property_readonly("size", &Povm::size)
        .def_property_readonly("effects", &effect_matrices)
        .def_property_readonly("completeness", [](const Povm &p) { return std::string(to_string(p.completeness())); })
        .def_property_readonly("is_complete", &Povm::is_complete)
        .def("__len__", &Povm::size)
        .def("__repr__", [](const Povm &p) {
            return "<Povm dim=" + std::to_string(p.dim()) + " size=" + std::to_string(p.size()) + " " +
                   std::string(to_string(p.completeness())) + ">";
        });

    m.def(
        "validate_povm",
        [](const std::vector<ComplexMatrix> &effects, double tol) { return validate_povm(to_operators(effects), tol); },
        py::arg("effects"), py::arg("tol") = kCompletenessTol);
    m.def("computational_basis", &computational_basis, py::arg("dim"));
    m.def("sic_povm_qubit", &sic_povm_qubit);
    m.def(
        "born_probabilities", [](const Povm &povm, const ComplexMatrix &rho) {
            return born_probabilities(povm, to_density(rho));
        },
        py::arg("povm"), py::arg("rho"));

    py::class_<DiscreteEnsemble>(m, "DiscreteEnsemble")
        .def(py::init([](const std::vector<double> &weights, const std::vector<ComplexMatrix> &states) {
                 if (weights.size() != states.size()) {
                     throw DimensionError("weights and states differ in length");
                 }
                 std::vector<WeightedState> members;
                 for (std::size_t i = 0; i < weights.size(); i++) {
                     members.push_back({weights[i], to_density(states[i])});
                 }
                 return DiscreteEnsemble(std::move(members));
             }),
             py::arg("weights"), py::arg("states"))
        .def_property_readonly("dim", &DiscreteEnsemble::dim);
    py::class_<AmplitudeDampingFamily>(m, "AmplitudeDampingFamily")
        .def(py::init([](double delta) {
                 AmplitudeDampingFamily f{.delta = delta};
                 f.validate();
                 return f;
             }),
             py::arg("delta"))
        .def_readonly("delta", &AmplitudeDampingFamily::delta);
    py::class_<UniformFullSpace>(m, "UniformFullSpace")
        .def(py::init([](std::size_t dim) {
                 if (dim == 0) {
                     throw DimensionError("dimension must be positive");
                 }
                 return UniformFullSpace{dim};
             }),
             py::arg("dim"))
        .def_readonly("dim", &UniformFullSpace::dim);

    m.def(
        "average_state", [](const py::object &e) { return ComplexMatrix(average_state(to_ensemble(e)).matrix()); },
        py::arg("ensemble"));
    m.def(
        "trace_profile",
        [](const Povm &povm, const ComplexMatrix &avg) { return trace_profile(povm, to_density(avg)).values(); },
        py::arg("povm"), py::arg("avg_state"));
    m.def(
        "is_d_trace_optimal",
        [](const Povm &povm, const py::object &e, double tol) {
            auto r = is_d_trace_optimal(povm, to_ensemble(e), tol);
            py::dict d;
            d["optimal"] = r.optimal;
            d["balanced"] = r.balanced;
            d["complete_on_probes"] = r.complete_on_probes;
            d["profile"] = r.profile.values();
            d["spread"] = r.spread;
            d["explanation"] = r.explain();
            return d;
        },
        py::arg("povm"), py::arg("ensemble"), py::arg("tol") = kBalanceTol);

    py::class_<AffineOutcomeMap>(m, "AffineOutcomeMap")
        .def_readonly("m", &AffineOutcomeMap::m)
        .def_readonly("t_max", &AffineOutcomeMap::t_max)
        .def_readonly("offsets", &AffineOutcomeMap::offsets)
        .def_property_readonly("scale", &AffineOutcomeMap::scale)
        .def("map", [](const AffineOutcomeMap &map, const std::vector<double> &p) { return map_probabilities(map, p); })
        .def("unmap",
             [](const AffineOutcomeMap &map, const std::vector<double> &p) { return unmap_probabilities(map, p); });

    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_readonly("optimized", &OptimizationResult::optimized)
        .def_readonly("map", &OptimizationResult::map)
        .def_property_readonly("original_profile",
                               [](const OptimizationResult &r) { return r.original_profile.values(); });

    m.def(
        "optimize", [](const Povm &povm, const ComplexMatrix &avg) { return optimize(povm, to_density(avg)); },
        py::arg("povm"), py::arg("avg_state"));
    m.def(
        "complete_first", [](const Povm &povm) { return complete_first(povm).povm; }, py::arg("povm"));

    m.def(
        "observed_distribution",
        [](const std::vector<double> &t, double eps) { return observed_distribution(TraceProfile(t), DarkCountModel(eps)); },
        py::arg("profile"), py::arg("epsilon"));
    m.def(
        "inflation_ratios",
        [](const std::vector<double> &t, double eps) { return inflation_ratios(TraceProfile(t), DarkCountModel(eps)); },
        py::arg("profile"), py::arg("epsilon"));
    m.def(
        "gm_figure_of_merit",
        [](const std::vector<double> &t, double eps) { return gm_figure_of_merit(TraceProfile(t), DarkCountModel(eps)); },
        py::arg("profile"), py::arg("epsilon"));
    m.def(
        "subtraction_residual",
        [](const std::vector<double> &t, double eps, double eta) { return subtraction_residual(TraceProfile(t), eps, eta); },
        py::arg("profile"), py::arg("epsilon"), py::arg("eta"));
    m.def(
        "lifetime_capacity",
        [](const std::vector<double> &t, double clicks) { return lifetime_capacity(TraceProfile(t), LifetimeModel(clicks)); },
        py::arg("profile"), py::arg("clicks_per_detector"));

    py::class_<ClickRecord>(m, "ClickRecord")
        .def_readonly("counts", &ClickRecord::counts)
        .def_readonly("trials", &ClickRecord::trials)
        .def_readonly("total_clicks", &ClickRecord::total_clicks)
        .def_readonly("no_click_trials", &ClickRecord::no_click_trials)
        .def("empirical_distribution", &empirical_distribution)
        .def("__eq__", [](const ClickRecord &a, const ClickRecord &b) { return a == b; });

    m.def(
        "sample_clicks",
        [](const std::vector<double> &q, double eps, uint64_t trials, uint64_t seed, uint64_t shards) {
            py::gil_scoped_release release;
            return sample_clicks(q, eps, SimConfig{.trials = trials, .seed = seed, .shards = shards});
        },
        py::arg("probabilities"), py::arg("epsilon"), py::arg("trials"), py::arg("seed") = 0, py::arg("shards") = 1);
    m.def(
        "sample_povm_clicks",
        [](const Povm &povm, const ComplexMatrix &rho, double eps, uint64_t trials, uint64_t seed, uint64_t shards) {
            auto state = to_density(rho);
            py::gil_scoped_release release;
            return sample_clicks(povm, state, DarkCountModel(eps),
                                 SimConfig{.trials = trials, .seed = seed, .shards = shards});
        },
        py::arg("povm"), py::arg("rho"), py::arg("epsilon"), py::arg("trials"), py::arg("seed") = 0,
        py::arg("shards") = 1);

    m.def(
        "run_experiment",
        [](double delta, double true_p, double eps, double eta, uint64_t trials, uint64_t seed, uint64_t reps) {
            ExperimentSpec spec{.delta = delta,
                                .true_p = true_p,
                                .epsilon = eps,
                                .eta = eta,
                                .trials = trials,
                                .seed = seed,
                                .repetitions = reps};
            std::vector<EstimatorReport> reports;
            {
                py::gil_scoped_release release;
                reports = run_experiment(spec);
            }
            py::list out;
            for (const auto &r : reports) {
                py::dict d;
                d["name"] = r.estimator_name;
                d["estimates"] = r.estimates;
                d["bias"] = r.bias;
                d["mse"] = r.mse;
                out.append(d);
            }
            return out;
        },
        py::arg("delta") = 0.05, py::arg("true_p") = 0.02, py::arg("epsilon") = 1e-4, py::arg("eta") = 0.0,
        py::arg("trials") = 1'000'000, py::arg("seed") = 0, py::arg("repetitions") = 100);
}
