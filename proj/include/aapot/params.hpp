// Copyright (c) 2026, The aapot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

namespace aapot {

/// Parameters shared by every cubature evaluation.
struct RunParams {
    double h = 1.0 / 128.0;  ///< grid step
    double D = 3.0;          ///< shape parameter
    int M = 3;               ///< generating-function order, N = 2M
    double r = 6.0;          ///< support radius in units of h sqrt(D)
    double lambda2 = 1.0;    ///< lambda^2 > 0
    int n = 2;               ///< dimension; assembly is planar

    /// Throws ConfigError on h <= 0, D < 1, M outside {1,2,3}, r <= 0,
    /// lambda2 <= 0 or n != 2.
    void validate() const;

    double scale() const { return h * std::sqrt(D); }
    /// lambda^2 h^2 D, the dimensionless decay rate of the scaled integrands.
    double lam2h2D() const { return lambda2 * h * h * D; }
    /// Width r h sqrt(D) of the boundary strip.
    double strip_width() const { return r * scale(); }
};

}  // namespace aapot
