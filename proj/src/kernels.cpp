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

#include "aapot/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "aapot/error.hpp"
#include "aapot/specfun.hpp"

namespace aapot::kernels {

namespace {

constexpr double kExpCutoff = -700.0;
constexpr double kUnderflow = -745.0;
constexpr int kMaxDeg = 2 * specfun::kMaxOrder;

void check_order(int M, int n) {
    if (M < 1 || M > specfun::kMaxOrder) throw ConfigError("order M must be in [1, 8]");
    if (n < 1) throw ConfigError("dimension n must be positive");
}

void check_t(double t) {
    if (!(t > 0.0)) throw ConfigError("heat parameter t must be positive");
}

// L_l^{((n-3)/2)}(y) for l = 0..count-1. In one dimension there is no
// tangential direction and only the l = 0 term survives.
void tangential_laguerre(int count, int n, double y, double* out) {
    if (n == 1) {
        out[0] = 1.0;
        for (int l = 1; l < count; ++l) out[l] = 0.0;
        return;
    }
    specfun::laguerre_all(count - 1, 0.5 * (n - 3), y, out);
}

// e^{-F^2} times the explicit Q_M sum; Q_M itself when with_gauss is false.
double q_sum(int M, int n, double xprime_normsq, double x_n, double t, double a, bool with_gauss) {
    if (M == 1) return 0.0;
    const double one_t = 1.0 + t;
    const double f = big_f(t, x_n, a);
    const double log_t = std::log(t);
    const double gauss_exponent = with_gauss ? -f * f : 0.0;

    std::array<double, kMaxDeg + 1> h_mu{};
    std::array<double, kMaxDeg + 1> h_f{};
    std::array<double, kMaxDeg + 1> h_edge{};
    std::array<double, kMaxDeg + 1> h_a{};
    const int top = 2 * (M - 1);
    specfun::hermite_all(top, x_n / std::sqrt(one_t), h_mu.data());
    specfun::hermite_all(top, f, h_f.data());
    specfun::hermite_all(top, (a - x_n) / std::sqrt(t), h_edge.data());
    specfun::hermite_all(top, a, h_a.data());
    std::array<double, specfun::kMaxOrder> lag{};
    tangential_laguerre(M, n, xprime_normsq / one_t, lag.data());

    double total = 0.0;
    for (int k = 0; k < M; ++k) {
        for (int l = 0; l <= k; ++l) {
            const int kk = k - l;
            if (kk == 0) continue;
            const double coeff = std::pow(-1.0, kk) / (specfun::factorial(kk) * std::pow(4.0, kk)) * lag[l];
            double inner = 0.0;
            for (int j = 1; j <= 2 * kk; ++j) {
                const double exponent = gauss_exponent - 0.5 * j * log_t;
                if (exponent < kExpCutoff) continue;
                const double poly = specfun::binomial(2 * kk, j) * h_mu[2 * kk - j] * h_f[j - 1] /
                                        std::pow(one_t, k + 0.5) -
                                    h_edge[j - 1] * h_a[2 * kk - j] / std::pow(one_t, l);
                inner += ((j % 2) ? -1.0 : 1.0) * std::exp(exponent) * poly;
            }
            total += coeff * inner;
        }
    }
    return 2.0 / std::pow(one_t, 0.5 * (n - 1)) * total;
}

}  // namespace

ScaledPoint ScaledPoint::from_coords(std::span<const double> x) {
    if (x.empty()) throw ConfigError("ScaledPoint needs at least one coordinate");
    ScaledPoint p;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) p.tangential_sq += x[i] * x[i];
    p.normal = x.back();
    return p;
}

double big_f(double t, double x, double a) {
    check_t(t);
    return std::sqrt((1.0 + t) / t) * (a - x / (1.0 + t));
}

double p_poly(int M, int n, double x_normsq, double t) {
    check_order(M, n);
    if (t < 0.0) throw ConfigError("p_poly: t must be non-negative");
    const double one_t = 1.0 + t;
    std::array<double, specfun::kMaxOrder> lag{};
    specfun::laguerre_all(M - 1, 0.5 * n - 1.0, x_normsq / one_t, lag.data());
    double sum = 0.0;
    for (int k = 0; k < M; ++k) sum += std::pow(one_t, -k - 0.5 * n) * lag[k];
    return sum;
}

double q_poly(int M, int n, double xprime_normsq, double x_n, double t, double a) {
    check_order(M, n);
    check_t(t);
    return q_sum(M, n, xprime_normsq, x_n, t, a, false);
}

double phi_k_closed(int k, double x, double t, double p) {
    check_t(t);
    if (k < 0) throw ConfigError("phi_k: negative k");
    const double one_t = 1.0 + t;
    const double f = big_f(t, x, p);
    const double s = x / std::sqrt(one_t);
    const double pref = std::pow(one_t, k + 0.5);
    std::array<double, 2 * kMaxDeg + 1> h_s{};
    std::array<double, 2 * kMaxDeg + 1> h_f{};
    std::array<double, 2 * kMaxDeg + 1> h_edge{};
    std::array<double, 2 * kMaxDeg + 1> h_p{};
    if (2 * k > 2 * kMaxDeg) throw ConfigError("phi_k: k too large");
    specfun::hermite_all(2 * k, s, h_s.data());
    specfun::hermite_all(2 * k, f, h_f.data());
    specfun::hermite_all(2 * k, (p - x) / std::sqrt(t), h_edge.data());
    specfun::hermite_all(2 * k, p, h_p.data());

    double value = specfun::erfc(f) * h_s[2 * k] * std::sqrt(std::numbers::pi * t) / (2.0 * pref);
    const double log_t = std::log(t);
    for (int l = 1; l <= 2 * k; ++l) {
        const double exponent = -f * f - 0.5 * (l - 1) * log_t;
        if (exponent < kExpCutoff) continue;
        const double poly = specfun::binomial(2 * k, l) * h_s[2 * k - l] * h_f[l - 1] / pref -
                            h_edge[l - 1] * h_p[2 * k - l];
        value += ((l % 2) ? -1.0 : 1.0) * std::exp(exponent) * poly;
    }
    return std::exp(-x * x / one_t) * value;
}

double halfspace_bracket(int M, int n, double xprime_normsq, double x_n, double t, double a) {
    check_order(M, n);
    check_t(t);
    const double inv = 1.0 / (1.0 + t);
    const double mu = x_n * inv;
    const double sigma = std::sqrt(t * inv);
    const double f = (a - mu) / sigma;
    const double f2 = f * f;
    const double gauss = f2 > -kUnderflow ? 0.0 : std::exp(-f2);

    // J_i = int_F^inf s^i e^{-s^2} ds
    const int top = 2 * (M - 1);
    std::array<double, kMaxDeg + 1> moment{};
    moment[0] = 0.5 * std::sqrt(std::numbers::pi) * specfun::erfc(f);
    if (top >= 1) moment[1] = 0.5 * gauss;
    double fpow = 1.0;
    for (int i = 2; i <= top; ++i) {
        fpow *= f;
        moment[i] = 0.5 * (i - 1) * moment[i - 2] + 0.5 * fpow * gauss;
    }

    std::array<double, kMaxDeg + 1> h_mu{};
    specfun::hermite_all(top, mu, h_mu.data());

    // Psi_K = int_F^inf e^{-s^2} H_{2K}(mu + sigma s) ds
    std::array<double, specfun::kMaxOrder> psi{};
    for (int kk = 0; kk < M; ++kk) {
        double acc = 0.0;
        double scale = 1.0;
        for (int i = 0; i <= 2 * kk; ++i) {
            acc += specfun::binomial(2 * kk, i) * h_mu[2 * kk - i] * scale * moment[i];
            scale *= 2.0 * sigma;
        }
        psi[kk] = acc;
    }

    std::array<double, specfun::kMaxOrder> lag{};
    tangential_laguerre(M, n, xprime_normsq * inv, lag.data());

    double sum = 0.0;
    double inv_pow_l = 1.0;
    for (int l = 0; l < M; ++l) {
        double inner = 0.0;
        for (int kk = 0; l + kk < M; ++kk)
            inner += std::pow(-0.25, kk) / specfun::factorial(kk) * psi[kk];
        sum += inv_pow_l * lag[l] * inner;
        inv_pow_l *= inv;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * std::pow(inv, 0.5 * n) * sum;
}

double halfspace_integrand(int M, int n, const ScaledPoint& xs, double t, double a, double lam2h2D) {
    check_t(t);
    const double exponent = -0.25 * lam2h2D * t - xs.norm_sq() / (1.0 + t);
    if (exponent < kUnderflow) {
        check_order(M, n);
        return 0.0;
    }
    return std::exp(exponent) * halfspace_bracket(M, n, xs.tangential_sq, xs.normal, t, a);
}

double halfspace_integrand_direct(int M, int n, const ScaledPoint& xs, double t, double a,
                                   double lam2h2D) {
    check_order(M, n);
    check_t(t);
    const double exponent = -0.25 * lam2h2D * t - xs.norm_sq() / (1.0 + t);
    if (exponent < kUnderflow) return 0.0;
    const double f = big_f(t, xs.normal, a);
    const double bracket = specfun::erfc(f) * p_poly(M, n, xs.norm_sq(), t) +
                           q_sum(M, n, xs.tangential_sq, xs.normal, t, a, true) /
                               std::sqrt(std::numbers::pi);
    return std::exp(exponent) * bracket;
}

double freespace_integrand(int M, int n, double x_normsq, double t, double lam2h2D) {
    if (t < 0.0) throw ConfigError("freespace_integrand: t must be non-negative");
    const double exponent = -0.25 * lam2h2D * t - x_normsq / (1.0 + t);
    if (exponent < kUnderflow) {
        check_order(M, n);
        return 0.0;
    }
    return std::exp(exponent) * p_poly(M, n, x_normsq, t);
}

}  // namespace aapot::kernels
