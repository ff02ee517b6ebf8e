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

#include "aapot/quadrature.hpp"

#include <algorithm>
#include <limits>

#include "aapot/parallel.hpp"

namespace aapot {

namespace {

constexpr double kUnderflowExponent = 745.0;

}  // namespace

DePoint de_transform(double u, double alpha, double beta) {
    const double e = std::exp(-u);
    const double inner = beta * (u - e);
    const double outer = std::exp(inner);
    const double phi = std::exp(alpha * beta * (u - e) + alpha * outer);
    return {phi, phi * alpha * beta * (1.0 + e) * (1.0 + outer)};
}

void QuadratureRule::validate() const {
    std::ostringstream msg;
    if (!(alpha > 0.0) || !(beta > 0.0) || !(tau > 0.0)) {
        msg << "quadrature: alpha, beta and tau must be positive (alpha=" << alpha
            << ", beta=" << beta << ", tau=" << tau << ")";
        throw ConfigError(msg.str());
    }
    if (!(s_min < 0 && s_max > 0)) {
        msg << "quadrature: need s_min < 0 < s_max (got " << s_min << ", " << s_max << ")";
        throw ConfigError(msg.str());
    }
    const double lo = de_transform(s_min * tau, alpha, beta).phi;
    const double hi = de_transform(s_max * tau, alpha, beta).phi;
    if (!(lo < 1e-10)) {
        msg << "quadrature: lower end Phi(" << s_min * tau << ")=" << lo << " is not below 1e-10";
        throw ConfigError(msg.str());
    }
    if (!(hi >= 1e8)) {
        msg << "quadrature: upper end Phi(" << s_max * tau << ")=" << hi << " is not above 1e8";
        throw ConfigError(msg.str());
    }
}

QuadratureRule QuadratureRule::coarse() { return {4.0, 2.0, 0.01, -80, 100}; }
QuadratureRule QuadratureRule::fine() { return {4.0, 2.0, 0.006, -160, 200}; }
QuadratureRule QuadratureRule::refined() const {
    return {alpha, beta, 0.5 * tau, 2 * s_min, 2 * s_max};
}

DeNodes::DeNodes(const QuadratureRule& rule) : rule_(rule) {
    rule_.validate();
    const std::size_t count = static_cast<std::size_t>(rule_.s_max - rule_.s_min + 1);
    t_.reserve(count);
    w_.reserve(count);
    for (int s = rule_.s_min; s <= rule_.s_max; ++s) {
        const DePoint p = de_transform(s * rule_.tau, rule_.alpha, rule_.beta);
        if (!std::isfinite(p.phi) || !std::isfinite(p.dphi)) {
            saturated_ = static_cast<std::size_t>(rule_.s_max - s + 1);
            break;
        }
        t_.push_back(p.phi);
        w_.push_back(rule_.tau * p.dphi);
    }
}

std::size_t DeNodes::active(double decay) const {
    if (!(decay > 0.0)) return t_.size();
    const double t_cut = kUnderflowExponent / decay;
    return static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), t_cut) - t_.begin());
}

double trapezoid_de(const std::function<double(double)>& f, const QuadratureRule& rule) {
    return trapezoid_de(f, DeNodes(rule));
}

namespace coeff {

double a_scaled(int M, int n, double x_normsq, double lam2h2D, const DeNodes& nodes) {
    const std::size_t count = nodes.active(0.25 * lam2h2D);
    return 0.25 * trapezoid_de(
                      [&](double t) { return kernels::freespace_integrand(M, n, x_normsq, t, lam2h2D); },
                      nodes, count);
}

double b_scaled(int M, int n, const kernels::ScaledPoint& xs, double a, double lam2h2D,
                const DeNodes& nodes) {
    const std::size_t count = nodes.active(0.25 * lam2h2D);
    return 0.125 * trapezoid_de(
                       [&](double t) { return kernels::halfspace_integrand(M, n, xs, t, a, lam2h2D); },
                       nodes, count);
}

kernels::ScaledPoint strip_point(const Point2& d, const LocalFrame& frame, double inv_sqrt_d) {
    const Point2 loc = frame.to_local(d);
    const double tang = loc[0] * inv_sqrt_d;
    return {tang * tang, loc[1] * inv_sqrt_d};
}

}  // namespace coeff

double a_coeff(int M, int n, std::int64_t ksq, const RunParams& params, const QuadratureRule& rule) {
    if (ksq < 0) throw ConfigError("a_coeff: ksq must be non-negative");
    RunParams p = params;
    p.M = M;
    p.validate();
    return coeff::a_scaled(M, n, static_cast<double>(ksq) / p.D, p.lam2h2D(), DeNodes(rule));
}

double b_coeff(int M, int n, const GridIndex& k, const GridIndex& m, const LocalFrame& frame,
               const RunParams& params, const QuadratureRule& rule) {
    RunParams p = params;
    p.M = M;
    p.validate();
    const double inv_sqrt_d = 1.0 / std::sqrt(p.D);
    const Point2 d{static_cast<double>(k.i - m.i), static_cast<double>(k.j - m.j)};
    const double a = frame.rho / p.scale();
    return coeff::b_scaled(M, n, coeff::strip_point(d, frame, inv_sqrt_d), a, p.lam2h2D(),
                           DeNodes(rule));
}

InteriorCoefficientTable::InteriorCoefficientTable(const RunParams& params,
                                                   const QuadratureRule& rule)
    : params_(params), nodes_(rule) {
    params_.validate();
}

void InteriorCoefficientTable::mark(std::int64_t ksq) {
    if (ksq < 0) throw ConfigError("interior coefficient key must be non-negative");
    const auto idx = static_cast<std::size_t>(ksq);
    if (idx >= state_.size()) {
        state_.resize(idx + 1, 0);
        values_.resize(idx + 1, 0.0);
    }
    if (state_[idx] == 0) state_[idx] = 1;
}

std::size_t InteriorCoefficientTable::fill(int threads) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < state_.size(); ++i)
        if (state_[i] == 1) todo.push_back(i);
    constexpr std::size_t kBlock = 256;
    const std::size_t blocks = (todo.size() + kBlock - 1) / kBlock;
    const double lam = params_.lam2h2D();
    const double inv_d = 1.0 / params_.D;
    parallel_blocks(blocks, threads, [&](std::size_t b) {
        const std::size_t end = std::min(todo.size(), (b + 1) * kBlock);
        for (std::size_t q = b * kBlock; q < end; ++q) {
            const std::size_t key = todo[q];
            values_[key] = coeff::a_scaled(params_.M, params_.n, static_cast<double>(key) * inv_d,
                                           lam, nodes_);
        }
    });
    for (std::size_t key : todo) state_[key] = 2;
    computed_ += todo.size();
    return todo.size();
}

bool InteriorCoefficientTable::ready(std::int64_t ksq) const {
    return ksq >= 0 && static_cast<std::size_t>(ksq) < state_.size() &&
           state_[static_cast<std::size_t>(ksq)] == 2;
}

double InteriorCoefficientTable::operator()(std::int64_t ksq) const {
    if (!ready(ksq)) {
        std::ostringstream msg;
        msg << "interior coefficient for ksq=" << ksq << " was not computed";
        throw NumericalError(msg.str());
    }
    return values_[static_cast<std::size_t>(ksq)];
}

}  // namespace aapot
