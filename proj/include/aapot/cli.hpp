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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aapot/geometry.hpp"
#include "aapot/params.hpp"
#include "aapot/quadrature.hpp"

namespace aapot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
    double a = 1.5;
    double b = 1.5;
    std::string density = "f";
    double lambda2 = 1.0;
    std::vector<double> h_list{1.0 / 128.0};
    double D = 3.0;
    int M = 3;
    double r = 6.0;
    QuadratureRule rule = QuadratureRule::coarse();
    std::vector<Point2> points;
    std::string out;  ///< empty: standard output
    int threads = 1;
    bool require_exact = false;
    std::string reference = "exact";  ///< exact | finest | richardson
    int richardson_order = 2;
    std::vector<std::int64_t> ksq;   ///< coeffs: interior keys
    std::vector<GridIndex> node_pairs;  ///< coeffs: (k, m) pairs, flattened k0,m0,k1,m1,...

    /// Throws ConfigError on any invalid field.
    void validate() const;
    RunParams params(double h) const;
};

/// "x1,x2;x1,x2;..." (also whitespace or newline separated pairs).
std::vector<Point2> parse_points(const std::string& text);
/// Decimal number or 2^p.
double parse_step(const std::string& text);

void cmd_eval(const RunConfig& cfg, std::ostream& out);
void cmd_converge(const RunConfig& cfg, std::ostream& out);
void cmd_coeffs(const RunConfig& cfg, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aapot::cli
