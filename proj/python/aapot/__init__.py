# Copyright (c) 2026, The aapot Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Volume potentials of -Delta + lambda^2 by boundary-corrected Gaussian cubature."""

from ._aapot import (
    ConfigError,
    Evaluator,
    NumericalError,
    QuadratureRule,
    RunParams,
    a_coeff,
    b_scaled,
    convergence,
    eta,
    hermite,
    laguerre,
    moment_defect,
    p_poly,
    phi_k,
    project_to_ellipse,
)

__all__ = [
    "ConfigError",
    "Evaluator",
    "NumericalError",
    "QuadratureRule",
    "RunParams",
    "a_coeff",
    "b_scaled",
    "convergence",
    "eta",
    "hermite",
    "laguerre",
    "moment_defect",
    "p_poly",
    "phi_k",
    "project_to_ellipse",
]
