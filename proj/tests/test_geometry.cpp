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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aapot/error.hpp"
#include "aapot/geometry.hpp"

using namespace aapot;
constexpr double kPi = std::numbers::pi;

namespace {

double dist(const Point2& p, const Point2& q) { return std::hypot(p[0] - q[0], p[1] - q[1]); }

Point2 sweep_projection(const EllipseDomain& dom, const Point2& x, int samples) {
    Point2 best{};
    double best_d = INFINITY;
    for (int i = 0; i < samples; ++i) {
        const double th = 2.0 * kPi * i / samples;
        const Point2 q{dom.a() * std::cos(th), dom.b() * std::sin(th)};
        const double d = dist(x, q);
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    // Golden-section refinement inside the winning sample bracket.
    const double step = 2.0 * kPi / samples;
    double th0 = std::atan2(best[1] / dom.b(), best[0] / dom.a());
    double lo = th0 - step, hi = th0 + step;
    auto d_at = [&](double th) { return dist(x, {dom.a() * std::cos(th), dom.b() * std::sin(th)}); };
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 60; ++it) {
        const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
        if (d_at(m1) < d_at(m2)) hi = m2; else lo = m1;
    }
    th0 = 0.5 * (lo + hi);
    return {dom.a() * std::cos(th0), dom.b() * std::sin(th0)};
}

}  // namespace

TEST_CASE("projection examples") {
    const EllipseDomain circle(1.5, 1.5);
    const Point2 p = project_to_ellipse(circle, {3.0, 0.0});
    CHECK(p[0] == doctest::Approx(1.5));
    CHECK(p[1] == doctest::Approx(0.0));
    const EllipseDomain ell(1.5, 1.0);
    const Point2 q = project_to_ellipse(ell, {0.0, 2.0});
    CHECK(q[0] == 0.0);
    CHECK(q[1] == 1.0);
    CHECK_THROWS_AS(project_to_ellipse(circle, {0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(EllipseDomain(1.0, 1.5), ConfigError);
}

TEST_CASE("projection against a dense parameter sweep") {
    const EllipseDomain ell(1.5, 0.5);
    const Point2 x{0.7, 0.3};
    const Point2 p = project_to_ellipse(ell, x);
    const Point2 q = sweep_projection(ell, x, 10'000'000);
    CHECK(dist(p, q) <= 1e-7);
}

TEST_CASE("projection optimality") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ua(0.3, 2.0), ux(-3.0, 3.0), uth(0.0, 2 * kPi);
    for (int s = 0; s < 1000; ++s) {
        double a = ua(rng), b = ua(rng);
        if (b > a) std::swap(a, b);
        const EllipseDomain dom(a, b);
        const Point2 x{ux(rng), ux(rng)};
        const Point2 p = project_to_ellipse(dom, x);
        CHECK(std::fabs(p[0] * p[0] / (a * a) + p[1] * p[1] / (b * b) - 1.0) <= 1e-12);
        const double d = dist(x, p);
        for (int r = 0; r < 1000; ++r) {
            const double th = uth(rng);
            const Point2 q{a * std::cos(th), b * std::sin(th)};
            if (!(d <= dist(x, q) + 1e-10)) {
                CHECK(d <= dist(x, q) + 1e-10);
                break;
            }
        }
    }
}

TEST_CASE("boundary points project to themselves") {
    const EllipseDomain dom(1.5, 0.8);
    for (double th = 0.05; th < 2 * kPi; th += 0.3) {
        const Point2 p{1.5 * std::cos(th), 0.8 * std::sin(th)};
        CHECK(dist(project_to_ellipse(dom, p), p) <= 1e-13);
    }
}

TEST_CASE("local frame examples") {
    const EllipseDomain circle(1.5, 1.5);
    LocalFrame f = local_frame(circle, {1.4, 0.0});
    CHECK(f.rho == doctest::Approx(-0.1));
    CHECK(f.normal[0] == doctest::Approx(-1.0));
    CHECK(f.normal[1] == doctest::Approx(0.0));
    f = local_frame(circle, {1.6, 0.0});
    CHECK(f.rho == doctest::Approx(0.1));
    const EllipseDomain ell(1.5, 0.5);
    f = local_frame(ell, {0.0, 0.45});
    CHECK(f.rho == doctest::Approx(-0.05));
    CHECK(f.normal[0] == doctest::Approx(0.0));
    CHECK(f.normal[1] == doctest::Approx(-1.0));
}

TEST_CASE("frame consistency and sign convention") {
    const EllipseDomain dom(1.5, 0.7);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    for (int s = 0; s < 2000; ++s) {
        const Point2 x{ux(rng), ux(rng)};
        const LocalFrame f = local_frame(dom, x);
        const double det = f.tangent[0] * f.normal[1] - f.normal[0] * f.tangent[1];
        CHECK(det == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::fabs(f.tangent[0] * f.normal[0] + f.tangent[1] * f.normal[1]) <= 1e-14);
        CHECK(std::hypot(f.normal[0], f.normal[1]) == doctest::Approx(1.0).epsilon(1e-14));
        // Stepping along the inner normal from the boundary point enters the domain.
        const Point2 in{f.boundary_point[0] + 1e-6 * f.normal[0], f.boundary_point[1] + 1e-6 * f.normal[1]};
        CHECK(dom.contains(in));
        CHECK(dom.contains(x) == (f.rho <= 0.0));
        if (f.rho != 0.0) CHECK(dom.contains(x) == (f.rho < 0.0));
        // Local normal coordinate of the boundary point relative to the node is rho.
        const Point2 rel{f.boundary_point[0] - x[0], f.boundary_point[1] - x[1]};
        CHECK(f.to_local(rel)[1] == doctest::Approx(f.rho).scale(1.0).epsilon(1e-12));
        const Point2 back = f.to_global(f.to_local(rel));
        CHECK(back[0] == doctest::Approx(rel[0]).scale(1.0).epsilon(1e-14));
    }
    const LocalFrame on = local_frame(dom, {1.5, 0.0});
    CHECK(on.rho == 0.0);
}

TEST_CASE("classification against brute force") {
    const EllipseDomain circle(1.5, 1.5);
    RunParams p;
    p.h = 0.5;
    p.r = 1.0;
    p.D = 1.0;
    const NodeSet set = classify_nodes(circle, p);
    const double w = 0.5;
    std::size_t interior = 0, strip = 0, excluded = 0;
    for (std::int64_t i = set.box_lower.i; i <= set.box_upper.i; ++i) {
        for (std::int64_t j = set.box_lower.j; j <= set.box_upper.j; ++j) {
            const double r = std::hypot(0.5 * i, 0.5 * j);
            const double d = std::fabs(1.5 - r);
            if (d < w) ++strip;
            else if (r <= 1.5) ++interior;
            else ++excluded;
        }
    }
    CHECK(set.interior_count() == interior);
    CHECK(set.strip.size() == strip);
    CHECK(set.excluded == excluded);
    CHECK(set.interior_count() + set.strip.size() + set.excluded == set.box_count());
}

TEST_CASE("classification completeness and ordering") {
    const EllipseDomain dom(1.5, 0.5);
    RunParams p;
    p.h = 1.0 / 32.0;
    p.D = 4.0;
    const NodeSet set = classify_nodes(dom, p, 3);
    const NodeSet serial = classify_nodes(dom, p, 1);
    CHECK(set.strip.size() == serial.strip.size());
    CHECK(set.interior.size() == serial.interior.size());
    CHECK(set.interior_count() + set.strip.size() + set.excluded == set.box_count());
    for (std::size_t q = 1; q < set.strip.size(); ++q) CHECK(set.strip[q - 1].m < set.strip[q].m);
    for (const auto& s : set.strip) CHECK(std::fabs(s.frame.rho) < set.width);
    // No node near the domain is excluded.
    for (std::int64_t i = set.box_lower.i; i <= set.box_upper.i; ++i) {
        for (std::int64_t j = set.box_lower.j; j <= set.box_upper.j; ++j) {
            const Point2 x{p.h * i, p.h * j};
            const NodeKind k = classify_node(dom, x, set.width);
            if (k == NodeKind::excluded) {
                const Point2 b = dom.nearest_boundary_point(x);
                CHECK((!dom.contains(x) && dist(x, b) >= set.width));
            }
        }
    }
}

TEST_CASE("tie and narrow strip") {
    // Node (1, 0) is exactly 0.5 from the circle of radius 1.5.
    const EllipseDomain circle(1.5, 1.5);
    CHECK(classify_node(circle, {1.0, 0.0}, 0.5) == NodeKind::interior);
    CHECK(classify_node(circle, {2.0, 0.0}, 0.5) == NodeKind::excluded);
    CHECK(classify_node(circle, {1.25, 0.0}, 0.5) == NodeKind::strip);
    RunParams p;
    p.h = 0.1;
    p.r = 0.01;
    p.D = 1.0;
    const NodeSet set = classify_nodes(circle, p);
    for (const auto& s : set.strip) CHECK(std::fabs(s.frame.rho) < 0.001);
}
