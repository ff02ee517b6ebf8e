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

#include <memory>
#include <string>

#include "aapot/geometry.hpp"

namespace aapot {

/// Right-hand side of (-Delta + lambda^2) u = f, evaluated everywhere.
class Density {
public:
    virtual ~Density() = default;
    virtual std::string name() const = 0;
    virtual double value(const Point2& x) const = 0;
    virtual bool has_exact() const { return false; }
    /// Exact volume potential; throws ConfigError when has_exact() is false.
    virtual double exact_potential(const Point2& x) const;
};

/// Density built from u = phi(w) with w = 1 - x1^2/a^2 - x2^2/b^2 times an
/// optional radial weight; subclasses supply u, grad u and Laplacian of u.
class ManufacturedDensity : public Density {
public:
    ManufacturedDensity(const EllipseDomain& dom, double lambda2);

    double value(const Point2& x) const override;
    bool has_exact() const override { return true; }
    double exact_potential(const Point2& x) const override;

    virtual double u(const Point2& x) const = 0;
    virtual Point2 grad_u(const Point2& x) const = 0;
    virtual double laplacian_u(const Point2& x) const = 0;

protected:
    double level(const Point2& x) const;  // w
    Point2 level_grad(const Point2& x) const;
    double level_laplacian() const;

    EllipseDomain dom_;
    double lambda2_;
};

/// u = sin(w^2).
class DensityF final : public ManufacturedDensity {
public:
    using ManufacturedDensity::ManufacturedDensity;
    std::string name() const override { return "f"; }
    double u(const Point2& x) const override;
    Point2 grad_u(const Point2& x) const override;
    double laplacian_u(const Point2& x) const override;
};

/// u = w^2 (1 + |x|^2).
class DensityG final : public ManufacturedDensity {
public:
    using ManufacturedDensity::ManufacturedDensity;
    std::string name() const override { return "g"; }
    double u(const Point2& x) const override;
    Point2 grad_u(const Point2& x) const override;
    double laplacian_u(const Point2& x) const override;
};

/// u = w^2 / (1 + |x|^2), the other reading of the weighted test function.
class DensityGDiv final : public ManufacturedDensity {
public:
    using ManufacturedDensity::ManufacturedDensity;
    std::string name() const override { return "g_div"; }
    double u(const Point2& x) const override;
    Point2 grad_u(const Point2& x) const override;
    double laplacian_u(const Point2& x) const override;
};

/// f = (1800 pi^2 + lambda^2) cos(30 pi x1) cos(30 pi x2); no exact potential.
class DensityOscill final : public Density {
public:
    explicit DensityOscill(double lambda2);
    std::string name() const override { return "oscill"; }
    double value(const Point2& x) const override;

private:
    double amplitude_;
};

std::unique_ptr<Density> density_f(const EllipseDomain& dom, double lambda2);
std::unique_ptr<Density> density_g(const EllipseDomain& dom, double lambda2);
std::unique_ptr<Density> density_g_div(const EllipseDomain& dom, double lambda2);
std::unique_ptr<Density> density_oscill(double lambda2);
/// By name: "f", "g", "g_div" or "oscill"; throws ConfigError otherwise.
std::unique_ptr<Density> make_density(const std::string& name, const EllipseDomain& dom,
                                      double lambda2);

}  // namespace aapot
