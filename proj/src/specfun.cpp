// SPDX-License-Identifier: Apache-2.0
#include "splitrx/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace splitrx {

double erfc(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("erfc: non-finite argument");
    }
    return std::erfc(x);
}

double exp_e1(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error("exp_e1: requires finite x > 0");
    }
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!)
        double sum = 0.0;
        double pow_term = 1.0;  // (-x)^n / n!
        for (int n = 1; n <= 60; ++n) {
            pow_term *= -x / n;
            const double add = pow_term / n;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
        }
        const double e1 = -kEulerGamma - std::log(x) - sum;
        return std::exp(x) * e1;
    }
    // exp(x) E1(x) = 1 / (x+1 - 1^2/(x+3 - 2^2/(x+5 - ...)))  (modified Lentz)
    constexpr double tiny = 1e-300;
    double f = x + 1.0;
    double c = f;
    double d = 0.0;
    for (int k = 1; k <= 500; ++k) {
        const double a = -static_cast<double>(k) * static_cast<double>(k);
        const double b = x + 1.0 + 2.0 * k;
        d = b + a * d;
        if (d == 0.0) d = tiny;
        d = 1.0 / d;
        c = b + a / c;
        if (c == 0.0) c = tiny;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / f;
}

double bessel_i0_scaled(double x) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("bessel_i0_scaled: requires finite x >= 0");
    }
    if (x < 20.0) {
        // I0(x) = sum_k (x^2/4)^k / (k!)^2; all terms positive, no cancellation.
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k <= 200; ++k) {
            term *= q / (static_cast<double>(k) * static_cast<double>(k));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return std::exp(-x) * sum;
    }
    // exp(-x) I0(x) ~ (2 pi x)^{-1/2} sum_k a_k / x^k, a_k/a_{k-1} = (2k-1)^2/(8k).
    // Truncation error < 1e-12 relative for x >= 20.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 14; ++k) {
        const double m = 2.0 * k - 1.0;
        term *= m * m / (8.0 * k * x);
        sum += term;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

}  // namespace splitrx
