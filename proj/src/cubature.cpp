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

#include "aapot/cubature.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "aapot/error.hpp"
#include "aapot/parallel.hpp"

namespace aapot {

namespace {

constexpr std::size_t kSpanBlock = 8;
constexpr std::size_t kStripBlock = 2048;

std::size_t blocks_of(std::size_t n, std::size_t block) { return (n + block - 1) / block; }

}  // namespace

CubatureEvaluator::CubatureEvaluator(const Domain& dom, const Density& density,
                                     const RunParams& params, const QuadratureRule& rule,
                                     const EvalOptions& options)
    : density_(density),
      params_(params),
      options_(options),
      nodes_(classify_nodes(dom, params, options.threads)),
      de_(rule),
      table_(params, rule),
      inv_sqrt_d_(1.0 / std::sqrt(params.D)),
      prefactor_(params.h * params.h * std::pow(params.D, 1.0 - 0.5 * params.n) /
                 std::pow(std::numbers::pi, 0.5 * params.n)) {
    const double h = params_.h;
    span_offset_.reserve(nodes_.interior.size() + 1);
    span_offset_.push_back(0);
    for (const auto& s : nodes_.interior)
        span_offset_.push_back(span_offset_.back() + static_cast<std::size_t>(s.size()));
    interior_f_.resize(span_offset_.back());
    parallel_blocks(nodes_.interior.size(), options_.threads, [&](std::size_t q) {
        const RowSpan& s = nodes_.interior[q];
        double* out = interior_f_.data() + span_offset_[q];
        for (std::int64_t j = s.j_begin; j < s.j_end; ++j)
            *out++ = density_.value({h * static_cast<double>(s.i), h * static_cast<double>(j)});
    });
    strip_f_.resize(nodes_.strip.size());
    for (std::size_t q = 0; q < nodes_.strip.size(); ++q) {
        const GridIndex& m = nodes_.strip[q].m;
        strip_f_[q] = density_.value({h * static_cast<double>(m.i), h * static_cast<double>(m.j)});
    }
    for (double v : interior_f_)
        if (!std::isfinite(v)) throw NumericalError("density '" + density_.name() + "' is not finite at an interior node");
    for (double v : strip_f_)
        if (!std::isfinite(v)) throw NumericalError("density '" + density_.name() + "' is not finite at a strip node");
}

template <class ACoeff, class Offset>
double CubatureEvaluator::assemble(ACoeff&& a_of, Offset&& offset) const {
    const std::size_t span_blocks = blocks_of(nodes_.interior.size(), kSpanBlock);
    const std::size_t strip_blocks = blocks_of(nodes_.strip.size(), kStripBlock);
    std::vector<double> partial(span_blocks + strip_blocks, 0.0);
    const int M = params_.M;
    const int n = params_.n;
    const double lam = params_.lam2h2D();
    const double inv_scale = 1.0 / params_.scale();

    parallel_blocks(span_blocks + strip_blocks, options_.threads, [&](std::size_t b) {
        double acc = 0.0;
        if (b < span_blocks) {
            const std::size_t end = std::min(nodes_.interior.size(), (b + 1) * kSpanBlock);
            for (std::size_t q = b * kSpanBlock; q < end; ++q) {
                const RowSpan& s = nodes_.interior[q];
                const double* f = interior_f_.data() + span_offset_[q];
                for (std::int64_t j = s.j_begin; j < s.j_end; ++j) acc += *f++ * a_of(s.i, j);
            }
        } else {
            const std::size_t sb = b - span_blocks;
            const std::size_t end = std::min(nodes_.strip.size(), (sb + 1) * kStripBlock);
            for (std::size_t q = sb * kStripBlock; q < end; ++q) {
                const StripNode& node = nodes_.strip[q];
                const Point2 d = offset(node.m);
                const double a = node.frame.rho * inv_scale;
                double c;
                if (a <= options_.collapse_below) {
                    const double r0 = d[0] * inv_sqrt_d_;
                    const double r1 = d[1] * inv_sqrt_d_;
                    c = coeff::a_scaled(M, n, r0 * r0 + r1 * r1, lam, de_);
                } else {
                    c = coeff::b_scaled(M, n, coeff::strip_point(d, node.frame, inv_sqrt_d_), a, lam,
                                        de_);
                }
                acc += strip_f_[q] * c;
            }
        }
        partial[b] = acc;
    });

    double interior = 0.0;
    for (std::size_t b = 0; b < span_blocks; ++b) interior += partial[b];
    double strip = 0.0;
    for (std::size_t b = span_blocks; b < partial.size(); ++b) strip += partial[b];
    return interior + strip;
}

PotentialResult CubatureEvaluator::finish(const Point2& x, double sum) const {
    PotentialResult r;
    r.value = prefactor_ * sum;
    if (!std::isfinite(r.value)) throw NumericalError("cubature produced a non-finite value");
    if (density_.has_exact()) {
        const double u = density_.exact_potential(x);
        r.exact = u;
        r.abs_error = std::fabs(r.value - u);
        if (u != 0.0) r.rel_error = *r.abs_error / std::fabs(u);
    }
    return r;
}

PotentialResult CubatureEvaluator::at_grid(const GridIndex& k) {
    const Point2 x{params_.h * static_cast<double>(k.i), params_.h * static_cast<double>(k.j)};
    auto offset = [&](const GridIndex& m) {
        return Point2{static_cast<double>(k.i - m.i), static_cast<double>(k.j - m.j)};
    };
    if (!options_.use_interior_cache) {
        const int M = params_.M;
        const int n = params_.n;
        const double lam = params_.lam2h2D();
        auto a_of = [&](std::int64_t i, std::int64_t j) {
            const double r0 = static_cast<double>(k.i - i) * inv_sqrt_d_;
            const double r1 = static_cast<double>(k.j - j) * inv_sqrt_d_;
            return coeff::a_scaled(M, n, r0 * r0 + r1 * r1, lam, de_);
        };
        return finish(x, assemble(a_of, offset));
    }
    for (const auto& s : nodes_.interior) {
        const std::int64_t di = k.i - s.i;
        for (std::int64_t j = s.j_begin; j < s.j_end; ++j) {
            const std::int64_t dj = k.j - j;
            table_.mark(di * di + dj * dj);
        }
    }
    table_.fill(options_.threads);
    const InteriorCoefficientTable& table = table_;
    auto a_of = [&](std::int64_t i, std::int64_t j) {
        const std::int64_t di = k.i - i;
        const std::int64_t dj = k.j - j;
        return table(di * di + dj * dj);
    };
    return finish(x, assemble(a_of, offset));
}

PotentialResult CubatureEvaluator::at_point(const Point2& x) const {
    const double h = params_.h;
    const int M = params_.M;
    const int n = params_.n;
    const double lam = params_.lam2h2D();
    auto a_of = [&](std::int64_t i, std::int64_t j) {
        const double r0 = (x[0] - h * static_cast<double>(i)) / h * inv_sqrt_d_;
        const double r1 = (x[1] - h * static_cast<double>(j)) / h * inv_sqrt_d_;
        return coeff::a_scaled(M, n, r0 * r0 + r1 * r1, lam, de_);
    };
    auto offset = [&](const GridIndex& m) {
        return Point2{(x[0] - h * static_cast<double>(m.i)) / h,
                      (x[1] - h * static_cast<double>(m.j)) / h};
    };
    return finish(x, assemble(a_of, offset));
}

namespace {

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

GridIndex grid_index_of(const Point2& x, double h) {
    GridIndex k;
    for (int c = 0; c < 2; ++c) {
        const double q = x[c] / h;
        const double r = std::nearbyint(q);
        if (!std::isfinite(q) || std::fabs(q - r) > 1e-9 * std::max(1.0, std::fabs(q))) {
            throw ConfigError("point (" + shortest(x[0]) + ", " + shortest(x[1]) +
                              ") is not on the grid with h=" + shortest(h));
        }
        (c == 0 ? k.i : k.j) = static_cast<std::int64_t>(r);
    }
    return k;
}

ConvergenceTable convergence_study(const Domain& dom, const Density& density,
                                   std::span<const Point2> points, std::span<const double> h_list,
                                   const RunParams& base, const QuadratureRule& rule,
                                   const ConvergenceOptions& options) {
    if (h_list.empty()) throw ConfigError("convergence study needs at least one h");
    for (std::size_t l = 1; l < h_list.size(); ++l) {
        if (!(h_list[l] < h_list[l - 1])) throw ConfigError("h list must be strictly decreasing");
    }
    const bool exact = options.reference == Reference::exact;
    const bool richardson = options.reference == Reference::richardson;
    if (exact && !density.has_exact()) {
        throw ConfigError("density '" + density.name() +
                          "' has no exact potential; use the finest or richardson reference");
    }
    if (!exact && h_list.size() < 2) {
        throw ConfigError("a level-based reference needs at least two h values");
    }
    if (richardson && options.richardson_order < 1) {
        throw ConfigError("richardson order must be positive");
    }
    std::vector<std::vector<GridIndex>> index(h_list.size());
    for (std::size_t l = 0; l < h_list.size(); ++l)
        for (const Point2& x : points) index[l].push_back(grid_index_of(x, h_list[l]));

    // values[p][l]
    std::vector<std::vector<double>> values(points.size(), std::vector<double>(h_list.size()));
    for (std::size_t l = 0; l < h_list.size(); ++l) {
        RunParams p = base;
        p.h = h_list[l];
        CubatureEvaluator ev(dom, density, p, rule, options.eval);
        for (std::size_t q = 0; q < points.size(); ++q) values[q][l] = ev.at_grid(index[l][q]).value;
    }

    ConvergenceTable table;
    table.h_list.assign(h_list.begin(), h_list.end());
    const std::size_t L = h_list.size();
    const std::size_t levels = exact ? L : L - 1;
    for (std::size_t q = 0; q < points.size(); ++q) {
        const auto& v = values[q];
        double ref_l = v[L - 1];
        if (richardson) {
            ref_l += (v[L - 1] - v[L - 2]) / (std::ldexp(1.0, options.richardson_order) - 1.0);
        }
        std::optional<double> prev;
        for (std::size_t l = 0; l < levels; ++l) {
            ConvergenceRow row;
            row.h = h_list[l];
            row.point = q;
            row.x = points[q];
            row.value = v[l];
            row.reference = exact ? density.exact_potential(points[q]) : ref_l;
            row.error = std::fabs(row.value - row.reference);
            if (exact && row.reference != 0.0) {
                row.error /= std::fabs(row.reference);
                row.relative = true;
            }
            if (prev) row.rate = std::log2(*prev / row.error) / std::log2(h_list[l - 1] / h_list[l]);
            prev = row.error;
            table.rows.push_back(row);
        }
        if (L >= 3) {
            const double d1 = std::fabs(v[L - 3] - v[L - 2]);
            const double d2 = std::fabs(v[L - 2] - v[L - 1]);
            table.observed_order.push_back(std::log2(d1 / d2) / std::log2(h_list[L - 2] / h_list[L - 1]));
        } else {
            table.observed_order.push_back(std::nullopt);
        }
    }
    return table;
}

}  // namespace aapot
