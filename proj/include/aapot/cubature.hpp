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

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "aapot/densities.hpp"
#include "aapot/geometry.hpp"
#include "aapot/params.hpp"
#include "aapot/quadrature.hpp"

namespace aapot {

struct PotentialResult {
    double value = 0.0;
    std::optional<double> exact;
    std::optional<double> abs_error;
    std::optional<double> rel_error;  ///< absent when the exact value is zero
};

struct EvalOptions {
    /// Interior coefficients from the integer-key table; when false every
    /// coefficient is integrated from the scaled offset, as for off-grid points.
    bool use_interior_cache = true;
    int threads = 1;
    /// Strip nodes whose scaled offset rho/(h sqrt(D)) is at or below this
    /// value use the free-space coefficient instead of the half-plane one.
    double collapse_below = -std::numeric_limits<double>::infinity();
};

/// Boundary-corrected cubature
///   V(x) = C h^2 [ sum_interior f(hm) a(x - hm) + sum_strip f(hm) b(x, m) ],
/// C = D^{1-n/2} / pi^{n/2}, for one domain, density, parameter set and rule.
/// Node classification, density samples and interior coefficients are
/// shared across evaluations.
class CubatureEvaluator {
public:
    CubatureEvaluator(const Domain& dom, const Density& density, const RunParams& params,
                      const QuadratureRule& rule, const EvalOptions& options = {});

    const NodeSet& nodes() const { return nodes_; }
    const RunParams& params() const { return params_; }
    const InteriorCoefficientTable& interior_table() const { return table_; }

    PotentialResult at_grid(const GridIndex& k);
    PotentialResult at_point(const Point2& x) const;

private:
    template <class ACoeff, class Offset>
    double assemble(ACoeff&& a_of, Offset&& offset) const;
    PotentialResult finish(const Point2& x, double sum) const;

    const Density& density_;
    RunParams params_;
    EvalOptions options_;
    NodeSet nodes_;
    DeNodes de_;
    InteriorCoefficientTable table_;
    std::vector<std::size_t> span_offset_;
    std::vector<double> interior_f_;
    std::vector<double> strip_f_;
    double inv_sqrt_d_;
    double prefactor_;
};

/// Grid index of x for step h; throws ConfigError naming the point and h
/// when x is not a grid point.
GridIndex grid_index_of(const Point2& x, double h);

enum class Reference {
    exact,       ///< error against the density's exact potential
    finest,      ///< error against the finest level v_L
    richardson,  ///< error against v_L + (v_L - v_{L-1}) / (2^p - 1) of the two finest levels
};

struct ConvergenceOptions {
    Reference reference = Reference::exact;
    int richardson_order = 2;
    EvalOptions eval;
};

struct ConvergenceRow {
    double h = 0.0;
    std::size_t point = 0;
    Point2 x{};
    double value = 0.0;
    double reference = 0.0;
    double error = 0.0;  ///< relative when the reference is exact and non-zero
    bool relative = false;
    std::optional<double> rate;  ///< log2(error(2h) / error(h))
};

struct ConvergenceTable {
    std::vector<double> h_list;
    /// Grouped by point, coarse to fine within a group. In finest and richardson modes
    /// the finest level serves as reference only and has no row.
    std::vector<ConvergenceRow> rows;
    /// Per point, log2 |v_{L-2} - v_{L-1}| / |v_{L-1} - v_L| over the three
    /// finest levels when at least three are given.
    std::vector<std::optional<double>> observed_order;
};

/// h_list is sorted coarse to fine; every point must be on every grid.
ConvergenceTable convergence_study(const Domain& dom, const Density& density,
                                   std::span<const Point2> points, std::span<const double> h_list,
                                   const RunParams& base, const QuadratureRule& rule,
                                   const ConvergenceOptions& options = {});

}  // namespace aapot
