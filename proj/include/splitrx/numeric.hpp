// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

namespace splitrx {

inline double log_sum_exp(const double* v, std::size_t n) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] > m) m = v[i];
    }
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(v[i] - m);
    return m + std::log(s);
}

// log of the circularly symmetric complex Gaussian density with total
// variance `var` (each component carries var/2).
inline double log_cn_pdf(std::complex<double> z, std::complex<double> mu, double var) {
    return -std::log(M_PI * var) - std::norm(z - mu) / var;
}

inline double log_n_pdf(double z, double mu, double var) {
    const double d = z - mu;
    return -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
}

}  // namespace splitrx
