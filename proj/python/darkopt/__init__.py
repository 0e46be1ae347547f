# Copyright 2026 The darkopt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Dark-count aware POVM rebalancing, simulation and tomography."""

from darkopt._core import (
    AffineOutcomeMap,
    AmplitudeDampingFamily,
    ClickRecord,
    DarkoptError,
    DiscreteEnsemble,
    OptimizationResult,
    Povm,
    UniformFullSpace,
    average_state,
    born_probabilities,
    complete_first,
    computational_basis,
    gm_figure_of_merit,
    inflation_ratios,
    is_d_trace_optimal,
    lifetime_capacity,
    observed_distribution,
    optimize,
    run_experiment,
    sample_clicks,
    sample_povm_clicks,
    sic_povm_qubit,
    subtraction_residual,
    trace_profile,
    validate_povm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
