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

/// Orthogonal polynomials and error functions used by the kernel formulas.
///
/// Polynomials are evaluated by forward three-term recurrence in double
/// precision. Degrees used by the cubature never exceed 2(M-1); orders up to
/// kMaxOrder are supported, beyond that the recurrences have not been checked
/// for cancellation.

namespace aapot::specfun {

inline constexpr int kMaxOrder = 8;

/// Physicists' Hermite polynomial H_k(x), H_0 = 1, H_1 = 2x.
double hermite(int k, double x);

/// Fills out[0..k] with H_0(x) .. H_k(x).
void hermite_all(int k, double x, double* out);

/// Generalized Laguerre polynomial L_k^{(gamma)}(y), gamma > -1.
double laguerre(int k, double gamma, double y);

/// Fills out[0..k] with L_0^{(gamma)}(y) .. L_k^{(gamma)}(y).
void laguerre_all(int k, double gamma, double y, double* out);

/// Complementary error function. Underflows to 0 for x > ~27.
double erfc(double x);

/// Scaled complementary error function exp(x^2) erfc(x). Finite for all
/// x > -26; intended for products with exp(-x^2).
double erfcx(double x);

/// Binomial coefficient as a double (small arguments only).
double binomial(int n, int k);

double factorial(int n);

}  // namespace aapot::specfun
