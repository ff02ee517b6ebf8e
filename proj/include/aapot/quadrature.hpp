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
#include <cstdint>
#include <functional>
#include <sstream>
#include <vector>

#include "aapot/error.hpp"
#include "aapot/geometry.hpp"
#include "aapot/kernels.hpp"
#include "aapot/params.hpp"

namespace aapot {

/// Trapezoid rule on the double-exponential substitution t = Phi(s tau),
/// s = s_min..s_max.
struct QuadratureRule {
    double alpha = 4.0;
    double beta = 2.0;
    double tau = 0.01;
    int s_min = -80;
    int s_max = 100;

    /// Throws ConfigError unless alpha, beta, tau > 0, s_min < 0 < s_max,
    /// Phi(s_min tau) < 1e-10 and Phi(s_max tau) >= 1e8.
    void validate() const;

    /// alpha=4, beta=2, tau=0.01, s in [-80, 100].
    static QuadratureRule coarse();
    /// alpha=4, beta=2, tau=0.006, s in [-160, 200].
    static QuadratureRule fine();
    /// Half the step, twice the node indices (same span in u).
    QuadratureRule refined() const;
};

struct DePoint {
    double phi = 0.0;
    double dphi = 0.0;
};

/// Phi(u) = exp(ab(u - e^-u) + a exp(b(u - e^-u))) and its derivative.
/// Either value may saturate to 0 or +inf at extreme u.
DePoint de_transform(double u, double alpha, double beta);

/// Abscissae t_s = Phi(s tau) and weights tau Phi'(s tau), ascending in s.
/// Nodes where Phi overflows are dropped and counted in saturated().
class DeNodes {
public:
    explicit DeNodes(const QuadratureRule& rule);

    const QuadratureRule& rule() const { return rule_; }
    std::size_t size() const { return t_.size(); }
    double t(std::size_t i) const { return t_[i]; }
    double weight(std::size_t i) const { return w_[i]; }
    int s(std::size_t i) const { return rule_.s_min + static_cast<int>(i); }
    std::size_t saturated() const { return saturated_; }

    /// Number of leading nodes with decay * t below the underflow threshold
    /// of e^{-decay t}; the remaining nodes contribute exactly zero.
    std::size_t active(double decay) const;

private:
    QuadratureRule rule_;
    std::vector<double> t_;
    std::vector<double> w_;
    std::size_t saturated_ = 0;
};

/// sum_s tau Phi'(s tau) f(Phi(s tau)), ascending in s, over the first
/// `count` nodes. Throws NumericalError naming t on a non-finite value.
template <class F>
double trapezoid_de(F&& f, const DeNodes& nodes, std::size_t count) {
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = nodes.t(i);
        const double v = f(t);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "non-finite integrand at t=" << t << " (s=" << nodes.s(i) << ")";
            throw NumericalError(msg.str());
        }
        sum += nodes.weight(i) * v;
    }
    return sum;
}

template <class F>
double trapezoid_de(F&& f, const DeNodes& nodes) {
    return trapezoid_de(std::forward<F>(f), nodes, nodes.size());
}

double trapezoid_de(const std::function<double(double)>& f, const QuadratureRule& rule);

namespace coeff {

/// (1/4) int_0^inf e^{-c t} e^{-x2/(1+t)} P_M(x2, t) dt with c = lam2h2D/4
/// and x2 the squared scaled offset.
double a_scaled(int M, int n, double x_normsq, double lam2h2D, const DeNodes& nodes);

/// (1/8) int_0^inf of the half-space integrand at scaled point xs with
/// scaled half-space offset a.
double b_scaled(int M, int n, const kernels::ScaledPoint& xs, double a, double lam2h2D,
                const DeNodes& nodes);

/// Scaled local point of the offset d = (x - h m)/h seen from a strip frame.
kernels::ScaledPoint strip_point(const Point2& d, const LocalFrame& frame, double inv_sqrt_d);

}  // namespace coeff

/// Interior coefficient for integer squared offset ksq = |k - m|^2.
double a_coeff(int M, int n, std::int64_t ksq, const RunParams& params, const QuadratureRule& rule);

/// Strip coefficient of node m evaluated at grid index k.
double b_coeff(int M, int n, const GridIndex& k, const GridIndex& m, const LocalFrame& frame,
               const RunParams& params, const QuadratureRule& rule);

/// Interior coefficients a(ksq) stored densely by ksq. Keys are marked and
/// then filled in bulk; reads of unfilled keys throw.
class InteriorCoefficientTable {
public:
    InteriorCoefficientTable(const RunParams& params, const QuadratureRule& rule);

    /// Marks ksq as needed, growing the table as required.
    void mark(std::int64_t ksq);
    /// Computes every marked, not yet computed key. Returns how many were
    /// computed.
    std::size_t fill(int threads = 1);
    double operator()(std::int64_t ksq) const;
    bool ready(std::int64_t ksq) const;
    std::size_t computed() const { return computed_; }
    const DeNodes& nodes() const { return nodes_; }

private:
    RunParams params_;
    DeNodes nodes_;
    std::vector<double> values_;
    std::vector<std::uint8_t> state_;  // 0 unused, 1 marked, 2 computed
    std::size_t computed_ = 0;
};

}  // namespace aapot
