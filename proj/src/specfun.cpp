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

#include "aapot/specfun.hpp"

#include <cmath>
#include <numbers>

#include "aapot/error.hpp"

namespace aapot::specfun {

double hermite(int k, double x) {
    if (k < 0) throw ConfigError("hermite: negative degree");
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int j = 1; j < k; ++j) {
        const double next = 2.0 * x * cur - 2.0 * j * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void hermite_all(int k, double x, double* out) {
    out[0] = 1.0;
    if (k == 0) return;
    out[1] = 2.0 * x;
    for (int j = 1; j < k; ++j) out[j + 1] = 2.0 * x * out[j] - 2.0 * j * out[j - 1];
}

double laguerre(int k, double gamma, double y) {
    if (k < 0) throw ConfigError("laguerre: negative degree");
    if (!(gamma > -1.0)) throw ConfigError("laguerre: gamma must exceed -1");
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 + gamma - y;
    for (int j = 1; j < k; ++j) {
        const double next = ((2 * j + 1 + gamma - y) * cur - (j + gamma) * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

void laguerre_all(int k, double gamma, double y, double* out) {
    out[0] = 1.0;
    if (k == 0) return;
    out[1] = 1.0 + gamma - y;
    for (int j = 1; j < k; ++j)
        out[j + 1] = ((2 * j + 1 + gamma - y) * out[j] - (j + gamma) * out[j - 1]) / (j + 1);
}

double erfc(double x) { return std::erfc(x); }

double erfcx(double x) {
    if (x < 2.0) return std::exp(x * x) * std::erfc(x);
    // Lentz evaluation of  erfc(x) e^{x^2} sqrt(pi) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int j = 1; j < 500; ++j) {
        const double aj = 0.5 * j;
        d = x + aj * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + aj / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / (f * std::sqrt(std::numbers::pi));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int j = 2; j <= n; ++j) r *= j;
    return r;
}

}  // namespace aapot::specfun
