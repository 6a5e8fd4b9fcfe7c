// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace splitrx {

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Complementary error function. Throws std::domain_error on non-finite input.
double erfc(double x);

// Scaled exponential integral exp(x)*E1(x) for x > 0, where
//   E1(x) = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!).
// The scaled product is finite and strictly decreasing on (0, inf).
// Series for x <= 1, continued fraction for x > 1.
double exp_e1(double x);

// Scaled modified Bessel function exp(-x)*I0(x) for x >= 0; range (0, 1].
double bessel_i0_scaled(double x);

}  // namespace splitrx
