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

#include <span>

/// One-dimensional integrands for the potential of a Gaussian-Laguerre basis
/// function over the whole space and over a half-space {x_n > a}.
///
/// Everything here is expressed in scaled variables: a point x is measured in
/// units of h sqrt(D) from the centre of the basis function, and the heat
/// parameter t runs over (0, inf). For a half-space the potential is
///
///   u(x) = 1/(8 pi^{n/2}) int_0^inf halfspace_integrand(t) dt,
///
/// and for the whole space the same with 1/(4 pi^{n/2}) and
/// freespace_integrand. The parameter lam2h2D is lambda^2 h^2 D.

namespace aapot::kernels {

/// A scaled point split into the part parallel to the half-space boundary
/// (only its squared norm matters) and the coordinate along the normal.
struct ScaledPoint {
    double tangential_sq = 0.0;
    double normal = 0.0;

    /// Last coordinate is the normal one.
    static ScaledPoint from_coords(std::span<const double> x);
    double norm_sq() const { return tangential_sq + normal * normal; }
};

/// F(t, x, a) = sqrt((1+t)/t) (a - x/(1+t)). Throws ConfigError for t <= 0.
double big_f(double t, double x, double a);

/// P_M(x, t) = sum_{k<M} (1+t)^{-k-n/2} L_k^{(n/2-1)}(|x|^2/(1+t)).
double p_poly(int M, int n, double x_normsq, double t);

/// Q_M(x, t, a): the triple sum over k, l, j with Hermite factors, evaluated
/// term by term as written. Zero for M = 1. Loses accuracy when t is small
/// and x_n is close to a; use halfspace_integrand for quadrature.
double q_poly(int M, int n, double xprime_normsq, double x_n, double t, double a);

/// phi_k(x, t, p) = int_p^inf exp(-(x-y)^2/t) d^{2k}/dy^{2k} exp(-y^2) dy in
/// closed form (erfc and Hermite products).
double phi_k_closed(int k, double x, double t, double p);

/// Integrand of the half-space potential:
///   exp(-lam2h2D t/4) exp(-|x|^2/(1+t)) (erfc(F) P_M + exp(-F^2) Q_M / sqrt(pi)),
/// F = F(t, x_n, a). The bracket is summed as incomplete Gaussian moments
/// int_F^inf s^i exp(-s^2) ds, which is algebraically the same expression but
/// has no t^{-j/2} cancellation near the boundary plane.
double halfspace_integrand(int M, int n, const ScaledPoint& xs, double t, double a, double lam2h2D);

/// The same integrand assembled from p_poly and the explicit Q_M sum, with each
/// exp(-F^2) t^{-j/2} term formed in log space and dropped below exp(-700).
double halfspace_integrand_direct(int M, int n, const ScaledPoint& xs, double t, double a,
                                   double lam2h2D);

/// Bracket erfc(F) P_M + exp(-F^2) Q_M / sqrt(pi) alone (moment form).
double halfspace_bracket(int M, int n, double xprime_normsq, double x_n, double t, double a);

/// exp(-lam2h2D t/4) exp(-|x|^2/(1+t)) P_M(x, t); t >= 0.
double freespace_integrand(int M, int n, double x_normsq, double t, double lam2h2D);
inline double freespace_integrand(int M, int n, const ScaledPoint& xs, double t, double lam2h2D) {
    return freespace_integrand(M, n, xs.norm_sq(), t, lam2h2D);
}

}  // namespace aapot::kernels
