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

#include <cstdint>
#include <span>
#include <vector>

namespace aapot {

/// Order of a Gaussian-Laguerre generating function: eta_{2M} in R^n
/// satisfies the moment conditions of order N = 2M.
struct GeneratingOrder {
    int M = 1;
    int n = 2;

    void validate() const;
};

/// Grid step h, shape parameter D and truncation radius r (in units of h sqrt(D)).
struct QuasiInterpParams {
    double h = 0.0;
    double D = 1.0;
    double r = 6.0;

    void validate() const;
};

/// Function samples f(h m) on a box of integer indices, row-major with the
/// last index fastest.
class GridSamples {
public:
    GridSamples(std::vector<std::int64_t> lower, std::vector<std::int64_t> extent,
                std::vector<double> values);

    int dim() const { return static_cast<int>(lower_.size()); }
    bool contains(std::span<const std::int64_t> m) const;
    /// Throws ConfigError when m lies outside the sampled box.
    double at(std::span<const std::int64_t> m) const;

private:
    std::vector<std::int64_t> lower_;
    std::vector<std::int64_t> extent_;
    std::vector<double> values_;
};

namespace genfun {

/// eta_{2M}(x) = pi^{-n/2} L_{M-1}^{(n/2)}(|x|^2) exp(-|x|^2).
double eta_2m(const GeneratingOrder& order, std::span<const double> x);

/// Same function written as a Gaussian under a polynomial of the Laplacian,
/// pi^{-n/2} sum_j (-1)^j / (j! 4^j) Delta^j exp(-|x|^2), with the Laplacian
/// powers expanded as (-1)^j j! 4^j L_j^{(n/2-1)}(|x|^2) exp(-|x|^2).
double eta_2m_laplacian_form(const GeneratingOrder& order, std::span<const double> x);

/// |int eta_{2M}(x) x^alpha dx - delta_{0,alpha}| by tensorized Gauss-Legendre
/// quadrature on [-12, 12]^n. Requires |alpha| < 2M and n <= 3.
double moment_defect(const GeneratingOrder& order, std::span<const int> alpha);

/// Truncated quasi-interpolant
///   D^{-n/2} sum_{|x - h m| <= r h sqrt(D)} f(h m) eta_{2M}((x - h m) / (h sqrt(D))),
/// summed in lexicographic node order. Missing samples raise ConfigError.
double quasi_interpolant(const QuasiInterpParams& params, const GeneratingOrder& order,
                         const GridSamples& samples, std::span<const double> x);

}  // namespace genfun
}  // namespace aapot
