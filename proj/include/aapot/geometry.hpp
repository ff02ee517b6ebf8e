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

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "aapot/params.hpp"

namespace aapot {

using Point2 = std::array<double, 2>;

struct GridIndex {
    std::int64_t i = 0;
    std::int64_t j = 0;
    auto operator<=>(const GridIndex&) const = default;
};

struct BoundingBox {
    Point2 lower{};
    Point2 upper{};
};

/// Smooth bounded planar domain.
class Domain {
public:
    virtual ~Domain() = default;

    /// Closed domain: boundary points are contained.
    virtual bool contains(const Point2& x) const = 0;
    /// A boundary point at minimal distance from x. Where several exist the
    /// implementation picks one deterministically.
    virtual Point2 nearest_boundary_point(const Point2& x) const = 0;
    /// Unit normal at boundary point p pointing into the domain.
    virtual Point2 inner_normal(const Point2& p) const = 0;
    virtual BoundingBox bounds() const = 0;
    /// Cheap lower bound on d(x, boundary), used to skip projections when
    /// classifying nodes far from the boundary. Zero is always valid.
    virtual double boundary_distance_lower_bound(const Point2& x) const;
};

/// x1^2/a^2 + x2^2/b^2 <= 1 with 0 < b <= a.
class EllipseDomain final : public Domain {
public:
    EllipseDomain(double a, double b);

    double a() const { return a_; }
    double b() const { return b_; }
    bool is_circle() const { return a_ == b_; }

    bool contains(const Point2& x) const override;
    /// Same as project_to_ellipse except at the centre of a circle, where
    /// every boundary point is nearest and (a, 0) is returned.
    Point2 nearest_boundary_point(const Point2& x) const override;
    Point2 inner_normal(const Point2& p) const override;
    BoundingBox bounds() const override;
    double boundary_distance_lower_bound(const Point2& x) const override;

private:
    double a_;
    double b_;
};

/// Closest point on the ellipse boundary. Safeguarded Newton on the
/// one-variable Lagrange equation (bisection fallback), parameter tolerance
/// 1e-14. On the medial segment of the major axis the upper branch is
/// returned. Throws ConfigError at the centre of a circle and NumericalError
/// if the iteration fails.
Point2 project_to_ellipse(const EllipseDomain& dom, const Point2& x);

/// Tangential frame of a node relative to its nearest boundary point.
///
/// rho is the signed distance, negative inside the domain and positive
/// outside; a node on the boundary gets rho = 0. omega maps local
/// coordinates (xi_1, xi_2) to global ones; its second column is the inner
/// normal, so the tangential half-plane through the boundary point is
/// {xi_2 > rho} in coordinates centred at the node.
struct LocalFrame {
    double rho = 0.0;
    Point2 tangent{1.0, 0.0};
    Point2 normal{0.0, 1.0};
    Point2 boundary_point{};

    /// omega^T v
    Point2 to_local(const Point2& v) const {
        return {tangent[0] * v[0] + tangent[1] * v[1], normal[0] * v[0] + normal[1] * v[1]};
    }
    /// omega v
    Point2 to_global(const Point2& v) const {
        return {tangent[0] * v[0] + normal[0] * v[1], tangent[1] * v[0] + normal[1] * v[1]};
    }
};

LocalFrame local_frame(const Domain& dom, const Point2& node);

/// Interior nodes of one grid row: j in [j_begin, j_end).
struct RowSpan {
    std::int64_t i = 0;
    std::int64_t j_begin = 0;
    std::int64_t j_end = 0;
    std::int64_t size() const { return j_end - j_begin; }
};

struct StripNode {
    GridIndex m;
    LocalFrame frame;
};

enum class NodeKind { interior, strip, excluded };

/// Grid nodes split for the two sums of the cubature:
///   interior: h m in the domain with d(h m, boundary) >= r h sqrt(D),
///   strip:    d(h m, boundary) <  r h sqrt(D), on either side,
///   excluded: everything else in the index box.
/// Interior nodes are stored as row spans, strip nodes individually with
/// their frames; both in lexicographic (i, j) order.
struct NodeSet {
    double h = 0.0;
    double width = 0.0;
    GridIndex box_lower;
    GridIndex box_upper;  ///< inclusive
    std::vector<RowSpan> interior;
    std::vector<StripNode> strip;
    std::size_t excluded = 0;

    std::size_t interior_count() const;
    std::size_t box_count() const;
};

/// Classification of a single node, shared by classify_nodes.
NodeKind classify_node(const Domain& dom, const Point2& x, double width);

NodeSet classify_nodes(const Domain& dom, const RunParams& params, int threads = 1);

}  // namespace aapot
