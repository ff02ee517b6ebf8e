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

#include "aapot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aapot/error.hpp"
#include "aapot/parallel.hpp"

namespace aapot {

double Domain::boundary_distance_lower_bound(const Point2&) const { return 0.0; }

EllipseDomain::EllipseDomain(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ConfigError("ellipse semi-axes must be positive and finite");
    }
    if (b > a) {
        std::ostringstream msg;
        msg << "ellipse requires b <= a (got a=" << a << ", b=" << b << ")";
        throw ConfigError(msg.str());
    }
}

bool EllipseDomain::contains(const Point2& x) const {
    const double u = x[0] / a_;
    const double v = x[1] / b_;
    return u * u + v * v <= 1.0;
}

Point2 EllipseDomain::nearest_boundary_point(const Point2& x) const {
    if (is_circle() && x[0] == 0.0 && x[1] == 0.0) return {a_, 0.0};
    return project_to_ellipse(*this, x);
}

Point2 EllipseDomain::inner_normal(const Point2& p) const {
    const double gx = -p[0] / (a_ * a_);
    const double gy = -p[1] / (b_ * b_);
    const double len = std::hypot(gx, gy);
    return {gx / len, gy / len};
}

BoundingBox EllipseDomain::bounds() const { return {{-a_, -b_}, {a_, b_}}; }

double EllipseDomain::boundary_distance_lower_bound(const Point2& x) const {
    const double u = x[0] / a_;
    const double v = x[1] / b_;
    const double q = std::sqrt(u * u + v * v);
    // The level set {q = s} with s < 1 lies at distance >= (1 - s) b from the
    // boundary; outside, the ellipse fits in the disc of radius a.
    if (q < 1.0) return (1.0 - q) * b_;
    return std::max(0.0, std::hypot(x[0], x[1]) - a_);
}

namespace {

// Root s > -1 of G(s) = (r0 z0/(s + r0))^2 + (z1/(s + 1))^2 - 1 for
// z0, z1 > 0, r0 = (e0/e1)^2 >= 1. G is convex and decreasing on the bracket.
double lagrange_root(double r0, double z0, double z1, double g0) {
    const double n0 = r0 * z0;
    double lo = z1 - 1.0;
    double hi = g0 < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0;
    auto eval = [&](double s, double& dg) {
        const double p = n0 / (s + r0);
        const double q = z1 / (s + 1.0);
        dg = -2.0 * (p * p / (s + r0) + q * q / (s + 1.0));
        return p * p + q * q - 1.0;
    };
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {
        double dg = 0.0;
        const double g = eval(s, dg);
        if (g == 0.0) return s;
        if (g > 0.0) lo = s; else hi = s;
        double next = s - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double tol = 1e-14 * std::max(1.0, std::fabs(next));
        if (std::fabs(next - s) <= tol || hi - lo <= tol) return next;
        s = next;
    }
    throw NumericalError("ellipse projection: Newton iteration did not converge");
}

// Closest point for e0 >= e1 > 0 and y in the closed first quadrant.
Point2 project_first_quadrant(double e0, double e1, double y0, double y1) {
    if (y1 > 0.0) {
        if (y0 > 0.0) {
            const double z0 = y0 / e0;
            const double z1 = y1 / e1;
            const double g = z0 * z0 + z1 * z1 - 1.0;
            if (g == 0.0) return {y0, y1};
            const double r0 = (e0 / e1) * (e0 / e1);
            const double s = lagrange_root(r0, z0, z1, g);
            return {r0 * y0 / (s + r0), y1 / (s + 1.0)};
        }
        return {0.0, e1};
    }
    const double numer = e0 * y0;
    const double denom = e0 * e0 - e1 * e1;
    if (numer < denom) {
        const double xi = numer / denom;
        return {e0 * xi, e1 * std::sqrt(1.0 - xi * xi)};
    }
    return {e0, 0.0};
}

}  // namespace

Point2 project_to_ellipse(const EllipseDomain& dom, const Point2& x) {
    if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
        throw ConfigError("ellipse projection: non-finite point");
    }
    if (dom.is_circle() && x[0] == 0.0 && x[1] == 0.0) {
        throw ConfigError("ellipse projection: the centre of a circle has no unique nearest point");
    }
    const Point2 p = project_first_quadrant(dom.a(), dom.b(), std::fabs(x[0]), std::fabs(x[1]));
    return {std::copysign(p[0], x[0]), std::copysign(p[1], x[1])};
}

LocalFrame local_frame(const Domain& dom, const Point2& node) {
    LocalFrame f;
    f.boundary_point = dom.nearest_boundary_point(node);
    const double d = std::hypot(node[0] - f.boundary_point[0], node[1] - f.boundary_point[1]);
    f.rho = dom.contains(node) ? -d : d;
    f.normal = dom.inner_normal(f.boundary_point);
    f.tangent = {f.normal[1], -f.normal[0]};
    return f;
}

NodeKind classify_node(const Domain& dom, const Point2& x, double width) {
    const bool inside = dom.contains(x);
    if (dom.boundary_distance_lower_bound(x) >= width) {
        return inside ? NodeKind::interior : NodeKind::excluded;
    }
    const Point2 p = dom.nearest_boundary_point(x);
    const double d = std::hypot(x[0] - p[0], x[1] - p[1]);
    if (d < width) return NodeKind::strip;
    return inside ? NodeKind::interior : NodeKind::excluded;
}

std::size_t NodeSet::interior_count() const {
    std::size_t c = 0;
    for (const auto& s : interior) c += static_cast<std::size_t>(s.size());
    return c;
}

std::size_t NodeSet::box_count() const {
    return static_cast<std::size_t>(box_upper.i - box_lower.i + 1) *
           static_cast<std::size_t>(box_upper.j - box_lower.j + 1);
}

NodeSet classify_nodes(const Domain& dom, const RunParams& params, int threads) {
    params.validate();
    NodeSet out;
    out.h = params.h;
    out.width = params.strip_width();
    const BoundingBox bb = dom.bounds();
    const double h = params.h;
    out.box_lower = {static_cast<std::int64_t>(std::floor((bb.lower[0] - out.width) / h)),
                     static_cast<std::int64_t>(std::floor((bb.lower[1] - out.width) / h))};
    out.box_upper = {static_cast<std::int64_t>(std::ceil((bb.upper[0] + out.width) / h)),
                     static_cast<std::int64_t>(std::ceil((bb.upper[1] + out.width) / h))};

    const std::int64_t rows = out.box_upper.i - out.box_lower.i + 1;
    struct RowResult {
        std::vector<RowSpan> spans;
        std::vector<StripNode> strip;
        std::size_t excluded = 0;
    };
    std::vector<RowResult> per_row(static_cast<std::size_t>(rows));
    parallel_blocks(static_cast<std::size_t>(rows), threads, [&](std::size_t r) {
        RowResult& res = per_row[r];
        const std::int64_t i = out.box_lower.i + static_cast<std::int64_t>(r);
        RowSpan open{i, 0, 0};
        bool in_span = false;
        for (std::int64_t j = out.box_lower.j; j <= out.box_upper.j; ++j) {
            const Point2 x{h * static_cast<double>(i), h * static_cast<double>(j)};
            const NodeKind kind = classify_node(dom, x, out.width);
            if (kind == NodeKind::interior) {
                if (!in_span) open.j_begin = j;
                in_span = true;
                open.j_end = j + 1;
                continue;
            }
            if (in_span) res.spans.push_back(open);
            in_span = false;
            if (kind == NodeKind::strip) {
                res.strip.push_back({{i, j}, local_frame(dom, x)});
            } else {
                ++res.excluded;
            }
        }
        if (in_span) res.spans.push_back(open);
    });
    for (auto& res : per_row) {
        out.interior.insert(out.interior.end(), res.spans.begin(), res.spans.end());
        out.strip.insert(out.strip.end(), res.strip.begin(), res.strip.end());
        out.excluded += res.excluded;
    }
    return out;
}

}  // namespace aapot
