// SPDX-License-Identifier: Apache-2.0
#include "splitrx/detect.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "splitrx/parallel.hpp"
#include "splitrx/rng.hpp"

namespace splitrx {

const char* to_string(DetectorVariant v) {
    switch (v) {
        case DetectorVariant::MlQuadrature: return "ml";
        case DetectorVariant::LowComplexity: return "fast";
        case DetectorVariant::NearestNeighborCd: return "nn-cd";
    }
    return "?";
}

namespace {

constexpr std::int64_t kChunk = 4096;

void check_rx(const RxSample& rx) {
    if (!std::isfinite(rx.y1.real()) || !std::isfinite(rx.y1.imag()) || !std::isfinite(rx.y2)) {
        throw std::invalid_argument("detector: non-finite received sample");
    }
}

// Per-candidate constants of the low-complexity log-likelihood; scoring one
// observation is then a handful of multiplies per candidate.
struct FastScorer {
    struct Cand {
        double mr, mi;       // sqrt(rho P) h x
        double m2;           // (1-rho) sqrt(P) h^2 |x|^2
        double cxr, cxi;     // 2 sqrt(rho) (1-rho) h sigma_a2 x
        double inv_2v1d;     // 1/(2 v1 D)
        double log_pref;     // -0.5 log(2 pi^3 v1 D)
    };
    std::vector<Cand> cands;
    double v1 = 0.0;
    double inv_v1 = 0.0;

    FastScorer(const Constellation& c, const SystemConfig& cfg, const NoiseEnv& env) {
        cfg.validate();
        env.validate();
        c.validate();
        if (!(cfg.power > 0.0)) throw std::domain_error("detect_fast: requires P > 0");
        const double rho = cfg.rho;
        const double h = cfg.h_mag;
        const double sqp = std::sqrt(cfg.power);
        const double s_ns2 = env.sigma_rec2 / cfg.power;
        v1 = rho * env.sigma_a2 + env.sigma_cov2;
        inv_v1 = 1.0 / v1;
        cands.reserve(c.points.size());
        for (const cplx& x : c.points) {
            Cand k;
            k.mr = std::sqrt(rho) * sqp * h * x.real();
            k.mi = std::sqrt(rho) * sqp * h * x.imag();
            k.m2 = (1.0 - rho) * sqp * h * h * std::norm(x);
            k.cxr = 2.0 * std::sqrt(rho) * (1.0 - rho) * h * env.sigma_a2 * x.real();
            k.cxi = 2.0 * std::sqrt(rho) * (1.0 - rho) * h * env.sigma_a2 * x.imag();
            const double d = env.sigma_cov2 * s_ns2 +
                             2.0 * env.sigma_a2 * env.sigma_cov2 * h * h * std::norm(x) *
                                 (1.0 - rho) * (1.0 - rho) +
                             rho * env.sigma_a2 * s_ns2;
            k.inv_2v1d = 1.0 / (2.0 * v1 * d);
            k.log_pref = -0.5 * std::log(2.0 * M_PI * M_PI * M_PI * v1 * d);
            cands.push_back(k);
        }
    }

    int decide(const RxSample& rx_scaled) const {
        int best = 0;
        double best_ll = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const Cand& k = cands[i];
            const double t1r = rx_scaled.y1.real() - k.mr;
            const double t1i = rx_scaled.y1.imag() - k.mi;
            const double t2 = rx_scaled.y2 - k.m2;
            const double cross = v1 * t2 - (k.cxr * t1r + k.cxi * t1i);
            const double ll = k.log_pref - cross * cross * k.inv_2v1d -
                              (t1r * t1r + t1i * t1i) * inv_v1;
            if (ll > best_ll) {
                best_ll = ll;
                best = static_cast<int>(i);
            }
        }
        return best;
    }
};

struct NnScorer {
    std::vector<cplx> means;  // sqrt(rho P) h x
    NnScorer(const Constellation& c, const SystemConfig& cfg, const NoiseEnv& env) {
        cfg.validate();
        env.validate();
        c.validate();
        const double g = std::sqrt(cfg.rho * cfg.power) * cfg.h_mag;
        means.reserve(c.points.size());
        for (const cplx& x : c.points) means.push_back(g * x);
    }
    int decide(const RxSample& rx) const {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < means.size(); ++i) {
            const double d = std::norm(rx.y1 - means[i]);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        return best;
    }
};

}  // namespace

int detect_ml(const RxSample& rx, const Constellation& c, const SystemConfig& cfg,
              const NoiseEnv& env, const QuadratureSpec& quad) {
    check_rx(rx);
    c.validate();
    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const double ll = log_cond_joint_pdf_given_x(rx.y1, rx.y2, c.points[i], cfg, env, quad);
        if (ll > best_ll) {
            best_ll = ll;
            best = static_cast<int>(i);
        }
    }
    return best;
}

int detect_fast(const RxSample& rx_scaled, const Constellation& c, const SystemConfig& cfg,
                const NoiseEnv& env) {
    check_rx(rx_scaled);
    return FastScorer(c, cfg, env).decide(rx_scaled);
}

int detect_nn_cd(const RxSample& rx, const Constellation& c, const SystemConfig& cfg,
                 const NoiseEnv& env) {
    check_rx(rx);
    return NnScorer(c, cfg, env).decide(rx);
}

SerResult ser_monte_carlo(const Constellation& c, const SystemConfig& cfg, const NoiseEnv& env,
                          const DetectorKind& det, std::int64_t n, std::uint64_t seed) {
    cfg.validate();
    env.validate();
    c.validate();
    if (n < 1000) throw std::invalid_argument("ser_monte_carlo: n must be >= 1000");

    const std::int64_t n_chunks = chunk_count(n, kChunk);
    std::vector<std::int64_t> errors(n_chunks, 0);
    const std::uint64_t m = c.points.size();

    // Scorers are immutable after construction; share across workers.
    std::optional<FastScorer> fast;
    std::optional<NnScorer> nn;
    switch (det.variant) {
        case DetectorVariant::LowComplexity: fast.emplace(c, cfg, env); break;
        case DetectorVariant::NearestNeighborCd: nn.emplace(c, cfg, env); break;
        case DetectorVariant::MlQuadrature: det.quad.validate(); break;
    }

    for_each_chunk(n, kChunk, [&](std::int64_t ci, std::int64_t, std::int64_t count) {
        Philox rng(seed, ci);
        std::int64_t errs = 0;
        for (std::int64_t t = 0; t < count; ++t) {
            const int tx = static_cast<int>(rng.index(m));
            const RxSample rx = sample_channel(c.points[tx], cfg, env, rng);
            int hat;
            switch (det.variant) {
                case DetectorVariant::LowComplexity:
                    hat = fast->decide(scale_y2(rx, cfg.power));
                    break;
                case DetectorVariant::NearestNeighborCd:
                    hat = nn->decide(rx);
                    break;
                default:
                    hat = detect_ml(rx, c, cfg, env, det.quad);
            }
            if (hat != tx) ++errs;
        }
        errors[ci] = errs;
    });
    std::int64_t total = 0;
    for (const auto e : errors) total += e;

    SerResult r;
    r.n_symbols = n;
    r.n_errors = total;
    r.ser = static_cast<double>(total) / static_cast<double>(n);
    r.ci95 = 1.96 * std::sqrt(std::max(r.ser * (1.0 - r.ser), 0.0) / static_cast<double>(n));
    r.rho = cfg.rho;
    r.power = cfg.power;
    return r;
}

SerSweep ser_optimal_rho(const Constellation& c, const SystemConfig& cfg_base,
                         const NoiseEnv& env, const DetectorKind& det, std::int64_t n,
                         const std::vector<double>& rho_grid, std::uint64_t seed) {
    if (rho_grid.empty()) throw std::invalid_argument("ser_optimal_rho: empty rho grid");
    for (double r : rho_grid) {
        if (!(r > 0.0 && r <= 1.0)) {
            throw std::invalid_argument("ser_optimal_rho: grid values must lie in (0, 1]");
        }
    }
    SerSweep sweep;
    sweep.ser_min = std::numeric_limits<double>::infinity();
    for (double rho : rho_grid) {
        SystemConfig cfg = cfg_base;
        cfg.rho = rho;
        const SerResult r = ser_monte_carlo(c, cfg, env, det, n, seed);
        if (r.ser <= sweep.ser_min) {  // ties resolve to the larger rho
            sweep.ser_min = r.ser;
            sweep.rho_star = rho;
        }
        sweep.curve.push_back(r);
    }
    return sweep;
}

}  // namespace splitrx
