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

#include "aapot/genfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "aapot/error.hpp"
#include "aapot/specfun.hpp"

namespace aapot {

void GeneratingOrder::validate() const {
    if (M < 1 || M > specfun::kMaxOrder) throw ConfigError("order M must be in [1, 8]");
    if (n < 1) throw ConfigError("dimension n must be positive");
}

void QuasiInterpParams::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid step h must be positive");
    if (!(D >= 1.0) || !std::isfinite(D)) throw ConfigError("shape parameter D must be >= 1");
    if (!(r >= 1.0) || !std::isfinite(r)) throw ConfigError("support radius r must be >= 1");
}

GridSamples::GridSamples(std::vector<std::int64_t> lower, std::vector<std::int64_t> extent,
                         std::vector<double> values)
    : lower_(std::move(lower)), extent_(std::move(extent)), values_(std::move(values)) {
    if (lower_.size() != extent_.size() || lower_.empty())
        throw ConfigError("GridSamples: lower/extent rank mismatch");
    std::size_t total = 1;
    for (auto e : extent_) {
        if (e <= 0) throw ConfigError("GridSamples: extents must be positive");
        total *= static_cast<std::size_t>(e);
    }
    if (total != values_.size()) throw ConfigError("GridSamples: value count does not match extents");
}

bool GridSamples::contains(std::span<const std::int64_t> m) const {
    if (m.size() != lower_.size()) return false;
    for (std::size_t d = 0; d < m.size(); ++d)
        if (m[d] < lower_[d] || m[d] >= lower_[d] + extent_[d]) return false;
    return true;
}

double GridSamples::at(std::span<const std::int64_t> m) const {
    if (!contains(m)) {
        std::string idx;
        for (auto v : m) idx += (idx.empty() ? "" : ",") + std::to_string(v);
        throw ConfigError("quasi-interpolant needs a sample at node (" + idx + ") outside the sampled box");
    }
    std::size_t flat = 0;
    for (std::size_t d = 0; d < m.size(); ++d)
        flat = flat * static_cast<std::size_t>(extent_[d]) + static_cast<std::size_t>(m[d] - lower_[d]);
    return values_[flat];
}

namespace genfun {

namespace {

double norm_sq(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

}  // namespace

double eta_2m(const GeneratingOrder& order, std::span<const double> x) {
    const double r2 = norm_sq(x);
    const double n = order.n;
    return std::pow(std::numbers::pi, -0.5 * n) * specfun::laguerre(order.M - 1, 0.5 * n, r2) *
           std::exp(-r2);
}

double eta_2m_laplacian_form(const GeneratingOrder& order, std::span<const double> x) {
    const double r2 = norm_sq(x);
    const double n = order.n;
    double sum = 0.0;
    for (int j = 0; j < order.M; ++j) {
        const double scale = std::pow(-1.0, j) / (specfun::factorial(j) * std::pow(4.0, j));
        const double lap_j = std::pow(-1.0, j) * specfun::factorial(j) * std::pow(4.0, j) *
                             specfun::laguerre(j, 0.5 * n - 1.0, r2);
        sum += scale * lap_j;
    }
    return std::pow(std::numbers::pi, -0.5 * n) * sum * std::exp(-r2);
}

namespace {

struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;
};

Rule1D composite_legendre(double lo, double hi, int panels) {
    using Gauss = boost::math::quadrature::gauss<double, 16>;
    const auto& nodes = Gauss::abscissa();
    const auto& weights = Gauss::weights();
    Rule1D r;
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i] == 0.0) {
                r.x.push_back(mid);
                r.w.push_back(half * weights[i]);
                continue;
            }
            r.x.push_back(mid - half * nodes[i]);
            r.w.push_back(half * weights[i]);
            r.x.push_back(mid + half * nodes[i]);
            r.w.push_back(half * weights[i]);
        }
    }
    return r;
}

}  // namespace

double moment_defect(const GeneratingOrder& order, std::span<const int> alpha) {
    order.validate();
    if (static_cast<int>(alpha.size()) != order.n)
        throw ConfigError("moment_defect: multi-index rank must equal n");
    if (order.n > 3) throw ConfigError("moment_defect: n <= 3 only");
    int total = 0;
    for (int a : alpha) {
        if (a < 0) throw ConfigError("moment_defect: negative multi-index entry");
        total += a;
    }
    if (total >= 2 * order.M) throw ConfigError("moment_defect: requires |alpha| < 2M");

    const Rule1D rule = composite_legendre(-12.0, 12.0, order.n == 3 ? 24 : 48);
    const std::size_t q = rule.x.size();
    const int n = order.n;
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> pt(n);
    double integral = 0.0;
    while (true) {
        double weight = 1.0;
        double mono = 1.0;
        for (int d = 0; d < n; ++d) {
            pt[d] = rule.x[idx[d]];
            weight *= rule.w[idx[d]];
            mono *= std::pow(pt[d], alpha[d]);
        }
        integral += weight * mono * eta_2m(order, pt);
        int d = n - 1;
        for (; d >= 0; --d) {
            if (++idx[d] < q) break;
            idx[d] = 0;
        }
        if (d < 0) break;
    }
    return std::abs(integral - (total == 0 ? 1.0 : 0.0));
}

double quasi_interpolant(const QuasiInterpParams& params, const GeneratingOrder& order,
                         const GridSamples& samples, std::span<const double> x) {
    params.validate();
    order.validate();
    const int n = order.n;
    if (static_cast<int>(x.size()) != n || samples.dim() != n)
        throw ConfigError("quasi_interpolant: dimension mismatch");
    const double scale = params.h * std::sqrt(params.D);
    const double radius = params.r * scale;

    std::vector<std::int64_t> lo(n), hi(n), m(n);
    for (int d = 0; d < n; ++d) {
        lo[d] = static_cast<std::int64_t>(std::ceil((x[d] - radius) / params.h));
        hi[d] = static_cast<std::int64_t>(std::floor((x[d] + radius) / params.h));
        if (lo[d] > hi[d]) return 0.0;
        m[d] = lo[d];
    }
    std::vector<double> z(n);
    double sum = 0.0;
    while (true) {
        double dist2 = 0.0;
        for (int d = 0; d < n; ++d) {
            const double diff = x[d] - params.h * static_cast<double>(m[d]);
            dist2 += diff * diff;
            z[d] = diff / scale;
        }
        if (dist2 <= radius * radius) sum += samples.at(m) * eta_2m(order, z);
        int d = n - 1;
        for (; d >= 0; --d) {
            if (++m[d] <= hi[d]) break;
            m[d] = lo[d];
        }
        if (d < 0) break;
    }
    return std::pow(params.D, -0.5 * n) * sum;
}

}  // namespace genfun
}  // namespace aapot
