// SPDX-License-Identifier: Apache-2.0
#include "splitrx/densities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "splitrx/numeric.hpp"
#include "splitrx/specfun.hpp"

namespace splitrx {

void QuadratureSpec::validate() const {
    if (order_per_dim < 4 || order_per_dim > 256) {
        throw std::invalid_argument("QuadratureSpec: order_per_dim must lie in [4, 256]");
    }
}

GaussHermite::GaussHermite(int order) {
    if (order < 2) throw std::invalid_argument("GaussHermite: order must be >= 2");
    const int n = order;
    nodes_.assign(n, 0.0);
    std::vector<double> weights(n, 0.0);
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}

    // Value and derivative of the orthonormal Hermite polynomial.
    auto eval = [&](double z, double& p1, double& pp) {
        p1 = pim4;
        double p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
        }
        pp = std::sqrt(2.0 * n) * p2;
    };

    // Positive roots by sign-change bracketing: the scan step stays below
    // the minimum root spacing pi / sqrt(2n+1), so no root can be skipped.
    std::vector<double> pos;
    const double zmax = std::sqrt(2.0 * n + 1.0) + 1.0;
    const double step = 0.3 * M_PI / std::sqrt(2.0 * n + 1.0);
    double p1 = 0.0, pp = 0.0;
    double a = 0.5 * step;  // for odd n the root at 0 is handled explicitly
    eval(a, p1, pp);
    double fa = p1;
    for (double b = a + step; b < zmax + step; b += step) {
        double fb = 0.0;
        eval(b, fb, pp);
        if ((fa < 0.0) != (fb < 0.0)) {
            double lo = a, hi = b, flo = fa;
            for (int it = 0; it < 64; ++it) {
                const double mid = 0.5 * (lo + hi);
                double fm = 0.0;
                eval(mid, fm, pp);
                if ((flo < 0.0) != (fm < 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            double z = 0.5 * (lo + hi);
            for (int it = 0; it < 4; ++it) {  // Newton polish
                eval(z, p1, pp);
                z -= p1 / pp;
            }
            pos.push_back(z);
        }
        a = b;
        fa = fb;
    }
    if (static_cast<int>(pos.size()) != n / 2) {
        throw std::runtime_error("GaussHermite: root bracketing failed");
    }

    // Largest root first, mirrored to the negative axis; odd orders carry
    // the node at zero.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        const bool center = (n % 2 == 1) && (i == m - 1);
        const double z = center ? 0.0 : pos[pos.size() - 1 - i];
        eval(z, p1, pp);
        nodes_[i] = z;
        nodes_[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    log_weights_.resize(n);
    for (int i = 0; i < n; ++i) log_weights_[i] = std::log(weights[i]);
}

const GaussHermite& GaussHermite::get(int order) {
    static std::mutex mutex;
    static std::map<int, GaussHermite> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, GaussHermite(order)).first;
    return it->second;
}

namespace {

// e^{t^2} erfc(t) for large positive t; asymptotic series, good to ~1e-13
// for t >= 20.
double erfcx_large(double t) {
    const double q = 1.0 / (2.0 * t * t);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 9; ++k) {
        term *= -(2.0 * k - 1.0) * q;
        sum += term;
    }
    return sum / (t * std::sqrt(M_PI));
}

// 12-point Gauss-Legendre on [-1, 1] (positive half; nodes are symmetric).
constexpr int kGlHalf = 6;
constexpr double kGlX[kGlHalf] = {0.1252334085114689, 0.3678314989981802,
                                  0.5873179542866175, 0.7699026741943047,
                                  0.9041172563704749, 0.9815606342467192};
constexpr double kGlW[kGlHalf] = {0.2491470458134028, 0.2334925365383548,
                                  0.2031674267230659, 0.1600783285433462,
                                  0.1069393259953184, 0.0471753363865118};

struct RcIntegrand {
    double sqrt_lambda;
    double inv_2s2;   // 1/(2 sigma_s2)
    double binv;      // sqrt(lambda)/sigma_s2
    double r;
    double inv_2n2;   // 1/(2 sigma_n2)

    double operator()(double v) const {
        const double sv = std::sqrt(v);
        const double ds = sv - sqrt_lambda;
        const double dn = r - v;
        double lb = 0.0;
        if (sqrt_lambda > 0.0) lb = std::log(bessel_i0_scaled(sv * binv));
        return lb - ds * ds * inv_2s2 - dn * dn * inv_2n2;
    }
};

// log of integral exp(e(v)) dv over [lo, hi] with n_seg composite GL-12
// panels. Log-domain accumulation keeps deep tails finite.
double log_integral_gl(const RcIntegrand& e, double lo, double hi, int n_seg,
                       std::vector<double>& scratch) {
    scratch.clear();
    const double h = (hi - lo) / n_seg;
    for (int s = 0; s < n_seg; ++s) {
        const double c = lo + (s + 0.5) * h;
        const double half = 0.5 * h;
        const double log_half = std::log(half);
        for (int k = 0; k < kGlHalf; ++k) {
            const double lw = std::log(kGlW[k]) + log_half;
            scratch.push_back(e(c - half * kGlX[k]) + lw);
            scratch.push_back(e(c + half * kGlX[k]) + lw);
        }
    }
    return log_sum_exp(scratch.data(), scratch.size());
}

}  // namespace

double log_emg_pdf(double y2, double power, double h_mag, double sigma_a2, double sigma_rec2) {
    const double mu = power * h_mag * h_mag + sigma_a2;
    if (!(mu > 0.0) || !(sigma_rec2 > 0.0) || !std::isfinite(mu) || !std::isfinite(sigma_rec2) ||
        !std::isfinite(y2)) {
        throw std::domain_error("emg_pdf: requires P*h^2 + sigma_a2 > 0 and sigma_rec2 > 0");
    }
    const double srec = std::sqrt(sigma_rec2);
    const double t = (sigma_rec2 / mu - y2) / (M_SQRT2 * srec);
    const double s = (sigma_rec2 / mu - 2.0 * y2) / (2.0 * mu);
    double log_erfc_t;
    if (t < 20.0) {
        log_erfc_t = std::log(std::erfc(t));
    } else {
        log_erfc_t = std::log(erfcx_large(t)) - t * t;
    }
    return -std::log(2.0 * mu) + log_erfc_t + s;
}

double emg_pdf(double y2, double power, double h_mag, double sigma_a2, double sigma_rec2) {
    return std::exp(log_emg_pdf(y2, power, h_mag, sigma_a2, sigma_rec2));
}

double log_ncx2_pdf(double r_n, double lambda, double sigma_s2) {
    if (!(lambda >= 0.0) || !(sigma_s2 > 0.0) || !std::isfinite(lambda) ||
        !std::isfinite(sigma_s2)) {
        throw std::domain_error("ncx2_pdf: requires lambda >= 0 and sigma_s2 > 0");
    }
    if (!(r_n >= 0.0)) return -std::numeric_limits<double>::infinity();
    const double ds = std::sqrt(r_n) - std::sqrt(lambda);
    const double b = std::sqrt(r_n * lambda) / sigma_s2;
    return std::log(bessel_i0_scaled(b)) - ds * ds / (2.0 * sigma_s2) - std::log(2.0 * sigma_s2);
}

double ncx2_pdf(double r_n, double lambda, double sigma_s2) {
    const double l = log_ncx2_pdf(r_n, lambda, sigma_s2);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

double log_rc_pdf(double r_c, double lambda, double sigma_s2, double sigma_n2) {
    if (!(lambda >= 0.0) || !(sigma_s2 > 0.0) || !(sigma_n2 > 0.0) || !std::isfinite(lambda) ||
        !std::isfinite(sigma_s2) || !std::isfinite(sigma_n2) || !std::isfinite(r_c)) {
        throw std::domain_error("rc_pdf: requires lambda >= 0, sigma_s2 > 0, sigma_n2 > 0");
    }
    const double ss = std::sqrt(sigma_s2);
    const double sn = std::sqrt(sigma_n2);
    const double sl = std::sqrt(lambda);
    const RcIntegrand e{sl, 1.0 / (2.0 * sigma_s2), sl / sigma_s2, r_c, 1.0 / (2.0 * sigma_n2)};

    // Bracket the (log-concave) integrand's maximum, then size the window by
    // a 45-nat drop from the peak.
    const double hi_chi = (sl + 10.0 * ss) * (sl + 10.0 * ss);
    double ub = std::max({hi_chi, r_c + 10.0 * sn, 1e-300});
    double a = 0.0, b = ub;
    {
        const double phi = 0.6180339887498949;
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = e(x1), f2 = e(x2);
        for (int it = 0; it < 30; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + phi * (b - a); f2 = e(x2);
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - phi * (b - a); f1 = e(x1);
            }
        }
    }
    const double v_star = 0.5 * (a + b);
    const double e_star = e(v_star);
    const double drop = 36.0;  // window tail mass < 1e-14 of the peak

    // Window: bisect each side for e = e* - drop, doubling outward if the
    // initial guesses don't contain the crossing.
    double v_lo = 0.0;
    if (e(0.0) > e_star - drop) {
        v_lo = 0.0;
    } else {
        double lo = 0.0, hi = v_star;
        for (int it = 0; it < 28; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (e(mid) > e_star - drop) hi = mid; else lo = mid;
        }
        v_lo = lo;
    }
    double v_hi = ub;
    {
        double step = std::max(ub - v_star, 1e-300);
        while (e(v_hi) > e_star - drop) {
            step *= 2.0;
            v_hi = v_star + step;
            if (step > 1e300) break;
        }
        double lo = v_star, hi = v_hi;
        for (int it = 0; it < 28; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (e(mid) > e_star - drop) lo = mid; else hi = mid;
        }
        v_hi = hi;
    }
    if (!(v_hi > v_lo)) v_hi = v_lo + std::max(1e-300, 1e-12 * std::abs(v_lo));

    // Panel size limited by every relevant length scale: the 36-nat window
    // spans ~17 standard deviations of a quadratic peak, and the chi-squared
    // tail and Gaussian widths bound the sharpest off-peak features. GL-12
    // panels at one length scale resolve these integrands far below the
    // verification tolerance.
    const double width = v_hi - v_lo;
    const double sig_peak = width / 17.0;
    const double scale_chi = 2.0 * sigma_s2 + ss * sl;
    const double h_target = std::min({sig_peak, scale_chi, sn});
    int n_seg = static_cast<int>(std::clamp(std::ceil(width / std::max(h_target, 1e-300)),
                                            4.0, 4000.0));

    static thread_local std::vector<double> scratch;
    const double c0 = -std::log(2.0 * sigma_s2) - 0.5 * std::log(2.0 * M_PI * sigma_n2);
    // Verify against a half-resolution pass; escalate (rare) on disagreement.
    double coarse = log_integral_gl(e, v_lo, v_hi, n_seg / 2 + 1, scratch) + c0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double fine = log_integral_gl(e, v_lo, v_hi, n_seg, scratch) + c0;
        if (std::abs(fine - coarse) < 1e-8 * std::max(1.0, std::abs(fine)) + 1e-10) return fine;
        if (attempt == 3) {
            std::ostringstream msg;
            msg << "rc_pdf: quadrature did not converge (r_c=" << r_c << ", lambda=" << lambda
                << ", sigma_s2=" << sigma_s2 << ", sigma_n2=" << sigma_n2
                << ", segments=" << n_seg << ", residual=" << std::abs(fine - coarse) << ")";
            throw std::runtime_error(msg.str());
        }
        coarse = fine;
        n_seg *= 2;
    }
    return coarse;
}

double rc_pdf(double r_c, double lambda, double sigma_s2, double sigma_n2) {
    const double l = log_rc_pdf(r_c, lambda, sigma_s2, sigma_n2);
    return std::isfinite(l) ? std::exp(l) : 0.0;
}

double log_cond_joint_pdf_given_xw(cplx y1, double y2, cplx x, cplx w, const SystemConfig& cfg,
                                   const NoiseEnv& env) {
    cfg.validate();
    env.validate();
    const cplx s = std::sqrt(cfg.power) * cfg.h_mag * x + w;
    return log_cn_pdf(y1, std::sqrt(cfg.rho) * s, env.sigma_cov2) +
           log_n_pdf(y2, (1.0 - cfg.rho) * std::norm(s), env.sigma_rec2);
}

double cond_joint_pdf_given_xw(cplx y1, double y2, cplx x, cplx w, const SystemConfig& cfg,
                               const NoiseEnv& env) {
    return std::exp(log_cond_joint_pdf_given_xw(y1, y2, x, w, cfg, env));
}

namespace {

double log_cond_gh_impl(cplx y1, double y2, cplx x, const SystemConfig& cfg, const NoiseEnv& env,
                        int order) {
    const GaussHermite& gh = GaussHermite::get(order);
    const int n = order;
    const cplx m = std::sqrt(cfg.power) * cfg.h_mag * x;
    const double sa = std::sqrt(env.sigma_a2);
    const double sr = std::sqrt(cfg.rho);
    const double omr = 1.0 - cfg.rho;
    const double inv_cov = 1.0 / env.sigma_cov2;
    const double inv_2rec = 1.0 / (2.0 * env.sigma_rec2);

    static thread_local std::vector<double> qr, qi, ar2, ai2, expo;
    qr.resize(n); qi.resize(n); ar2.resize(n); ai2.resize(n);
    expo.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double ur = m.real() + sa * gh.nodes()[i];
        const double ui = m.imag() + sa * gh.nodes()[i];
        const double dr = y1.real() - sr * ur;
        const double di = y1.imag() - sr * ui;
        qr[i] = dr * dr * inv_cov;
        qi[i] = di * di * inv_cov;
        ar2[i] = ur * ur;
        ai2[i] = ui * ui;
    }
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const double base = gh.log_weights()[i] - qr[i];
        for (int j = 0; j < n; ++j) {
            const double d2 = y2 - omr * (ar2[i] + ai2[j]);
            expo[idx++] = base + gh.log_weights()[j] - qi[j] - d2 * d2 * inv_2rec;
        }
    }
    const double lse = log_sum_exp(expo.data(), expo.size());
    return lse - std::log(M_PI) - std::log(M_PI * env.sigma_cov2) -
           0.5 * std::log(2.0 * M_PI * env.sigma_rec2);
}

}  // namespace

double log_cond_joint_pdf_given_x(cplx y1, double y2, cplx x, const SystemConfig& cfg,
                                  const NoiseEnv& env, const QuadratureSpec& quad) {
    cfg.validate();
    env.validate();
    quad.validate();
    return log_cond_gh_impl(y1, y2, x, cfg, env, quad.order_per_dim);
}

double cond_joint_pdf_given_x(cplx y1, double y2, cplx x, const SystemConfig& cfg,
                              const NoiseEnv& env, const QuadratureSpec& quad) {
    return std::exp(log_cond_joint_pdf_given_x(y1, y2, x, cfg, env, quad));
}

bool quad_order_adequate(cplx y1, double y2, cplx x, const SystemConfig& cfg, const NoiseEnv& env,
                         const QuadratureSpec& quad) {
    quad.validate();
    const double a = log_cond_gh_impl(y1, y2, x, cfg, env, quad.order_per_dim);
    const double b = log_cond_gh_impl(y1, y2, x, cfg, env, 2 * quad.order_per_dim);
    return std::abs(a - b) <= 1e-6;
}

double log_cond_joint_pdf_given_x_reduced(cplx y1, double y2, cplx x, const SystemConfig& cfg,
                                          const NoiseEnv& env) {
    cfg.validate();
    env.validate();
    const cplx m = std::sqrt(cfg.power) * cfg.h_mag * x;
    if (cfg.rho == 1.0) {
        return log_cn_pdf(y1, m, env.sigma_a2 + env.sigma_cov2) +
               log_n_pdf(y2, 0.0, env.sigma_rec2);
    }
    const double rho = cfg.rho;
    const double omr = 1.0 - rho;
    const double v1 = rho * env.sigma_a2 + env.sigma_cov2;
    // Posterior of u = sqrt(P) h x + w after observing y1.
    const double sp2 = env.sigma_a2 * env.sigma_cov2 / (env.sigma_cov2 + rho * env.sigma_a2);
    const cplx mp = sp2 * (m / env.sigma_a2 + std::sqrt(rho) * y1 / env.sigma_cov2);
    return log_cn_pdf(y1, std::sqrt(rho) * m, v1) +
           log_rc_pdf(y2 / omr, std::norm(mp), 0.5 * sp2, env.sigma_rec2 / (omr * omr)) -
           std::log(omr);
}

double log_lowcomplexity_likelihood(cplx y1, double y2_scaled, cplx x, const SystemConfig& cfg,
                                    const NoiseEnv& env) {
    cfg.validate();
    env.validate();
    if (!(cfg.power > 0.0)) {
        throw std::domain_error("lowcomplexity_likelihood: requires P > 0");
    }
    const double rho = cfg.rho;
    const double h = cfg.h_mag;
    const double sqp = std::sqrt(cfg.power);
    const double s_ns2 = env.sigma_rec2 / cfg.power;
    const double v1 = rho * env.sigma_a2 + env.sigma_cov2;
    const double d = env.sigma_cov2 * s_ns2 +
                     2.0 * env.sigma_a2 * env.sigma_cov2 * h * h * std::norm(x) * (1.0 - rho) * (1.0 - rho) +
                     rho * env.sigma_a2 * s_ns2;
    if (!(v1 > 0.0) || !(d > 0.0)) {
        throw std::domain_error("lowcomplexity_likelihood: degenerate variance denominators");
    }
    const double t1r = y1.real() - std::sqrt(rho) * sqp * h * x.real();
    const double t1i = y1.imag() - std::sqrt(rho) * sqp * h * x.imag();
    const double t2 = y2_scaled - (1.0 - rho) * sqp * h * h * std::norm(x);
    const double cross = v1 * t2 - 2.0 * std::sqrt(rho) * (1.0 - rho) * h * env.sigma_a2 *
                                       (x.real() * t1r + x.imag() * t1i);
    return -0.5 * std::log(2.0 * M_PI * M_PI * M_PI * v1 * d) - cross * cross / (2.0 * v1 * d) -
           (t1r * t1r + t1i * t1i) / v1;
}

double lowcomplexity_likelihood(cplx y1, double y2_scaled, cplx x, const SystemConfig& cfg,
                                const NoiseEnv& env) {
    return std::exp(log_lowcomplexity_likelihood(y1, y2_scaled, x, cfg, env));
}

}  // namespace splitrx
