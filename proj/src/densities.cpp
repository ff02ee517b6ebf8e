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

#include "aapot/densities.hpp"

#include <cmath>
#include <numbers>

#include "aapot/error.hpp"

namespace aapot {

double Density::exact_potential(const Point2&) const {
    throw ConfigError("density '" + name() + "' has no exact potential");
}

ManufacturedDensity::ManufacturedDensity(const EllipseDomain& dom, double lambda2)
    : dom_(dom), lambda2_(lambda2) {
    if (!(lambda2 > 0.0)) throw ConfigError("lambda2 must be positive");
}

double ManufacturedDensity::level(const Point2& x) const {
    const double u = x[0] / dom_.a();
    const double v = x[1] / dom_.b();
    return 1.0 - u * u - v * v;
}

Point2 ManufacturedDensity::level_grad(const Point2& x) const {
    return {-2.0 * x[0] / (dom_.a() * dom_.a()), -2.0 * x[1] / (dom_.b() * dom_.b())};
}

double ManufacturedDensity::level_laplacian() const {
    return -2.0 / (dom_.a() * dom_.a()) - 2.0 / (dom_.b() * dom_.b());
}

double ManufacturedDensity::value(const Point2& x) const {
    return -laplacian_u(x) + lambda2_ * u(x);
}

double ManufacturedDensity::exact_potential(const Point2& x) const {
    return dom_.contains(x) ? u(x) : 0.0;
}

// u = sin(w^2): grad u = 2 w cos(w^2) grad w,
// Lap u = (2 cos(w^2) - 4 w^2 sin(w^2)) |grad w|^2 + 2 w cos(w^2) Lap w.
double DensityF::u(const Point2& x) const {
    const double w = level(x);
    return std::sin(w * w);
}

Point2 DensityF::grad_u(const Point2& x) const {
    const double w = level(x);
    const Point2 g = level_grad(x);
    const double s = 2.0 * w * std::cos(w * w);
    return {s * g[0], s * g[1]};
}

double DensityF::laplacian_u(const Point2& x) const {
    const double w = level(x);
    const Point2 g = level_grad(x);
    const double w2 = w * w;
    const double c = std::cos(w2);
    return (2.0 * c - 4.0 * w2 * std::sin(w2)) * (g[0] * g[0] + g[1] * g[1]) +
           2.0 * w * c * level_laplacian();
}

// u = w^2 p with p = 1 + |x|^2:
// Lap u = (2 |grad w|^2 + 2 w Lap w) p + 2 grad(w^2).grad p + w^2 Lap p.
double DensityG::u(const Point2& x) const {
    const double w = level(x);
    return w * w * (1.0 + x[0] * x[0] + x[1] * x[1]);
}

Point2 DensityG::grad_u(const Point2& x) const {
    const double w = level(x);
    const Point2 g = level_grad(x);
    const double p = 1.0 + x[0] * x[0] + x[1] * x[1];
    return {2.0 * w * g[0] * p + w * w * 2.0 * x[0], 2.0 * w * g[1] * p + w * w * 2.0 * x[1]};
}

double DensityG::laplacian_u(const Point2& x) const {
    const double w = level(x);
    const Point2 g = level_grad(x);
    const double p = 1.0 + x[0] * x[0] + x[1] * x[1];
    const double lap_w2 = 2.0 * (g[0] * g[0] + g[1] * g[1]) + 2.0 * w * level_laplacian();
    const double cross = 2.0 * w * (g[0] * 2.0 * x[0] + g[1] * 2.0 * x[1]);
    return lap_w2 * p + 2.0 * cross + w * w * 4.0;
}

// u = w^2 q with q = 1/p: grad q = -2x/p^2, Lap q = -4/p^2 + 8|x|^2/p^3.
double DensityGDiv::u(const Point2& x) const {
    const double w = level(x);
    return w * w / (1.0 + x[0] * x[0] + x[1] * x[1]);
}

Point2 DensityGDiv::grad_u(const Point2& x) const {
    const double w = level(x);
    const Point2 g = level_grad(x);
    const double p = 1.0 + x[0] * x[0] + x[1] * x[1];
    const double s = -2.0 * w * w / (p * p);
    return {2.0 * w * g[0] / p + s * x[0], 2.0 * w * g[1] / p + s * x[1]};
}

double DensityGDiv::laplacian_u(const Point2& x) const {
    const double w = level(x);
    const Point2 g = level_grad(x);
    const double r2 = x[0] * x[0] + x[1] * x[1];
    const double p = 1.0 + r2;
    const double lap_w2 = 2.0 * (g[0] * g[0] + g[1] * g[1]) + 2.0 * w * level_laplacian();
    const double cross = 2.0 * w * (g[0] * x[0] + g[1] * x[1]) * (-2.0 / (p * p));
    const double lap_q = -4.0 / (p * p) + 8.0 * r2 / (p * p * p);
    return lap_w2 / p + 2.0 * cross + w * w * lap_q;
}

DensityOscill::DensityOscill(double lambda2)
    : amplitude_(1800.0 * std::numbers::pi * std::numbers::pi + lambda2) {
    if (!(lambda2 > 0.0)) throw ConfigError("lambda2 must be positive");
}

double DensityOscill::value(const Point2& x) const {
    constexpr double k = 30.0 * std::numbers::pi;
    return amplitude_ * std::cos(k * x[0]) * std::cos(k * x[1]);
}

std::unique_ptr<Density> density_f(const EllipseDomain& dom, double lambda2) {
    return std::make_unique<DensityF>(dom, lambda2);
}

std::unique_ptr<Density> density_g(const EllipseDomain& dom, double lambda2) {
    return std::make_unique<DensityG>(dom, lambda2);
}

std::unique_ptr<Density> density_g_div(const EllipseDomain& dom, double lambda2) {
    return std::make_unique<DensityGDiv>(dom, lambda2);
}

std::unique_ptr<Density> density_oscill(double lambda2) {
    return std::make_unique<DensityOscill>(lambda2);
}

std::unique_ptr<Density> make_density(const std::string& name, const EllipseDomain& dom,
                                      double lambda2) {
    if (name == "f") return density_f(dom, lambda2);
    if (name == "g") return density_g(dom, lambda2);
    if (name == "g_div") return density_g_div(dom, lambda2);
    if (name == "oscill") return density_oscill(lambda2);
    throw ConfigError("unknown density '" + name + "' (expected f, g, g_div or oscill)");
}

}  // namespace aapot
