// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance runs: reproduces the headline mutual-information and
// SER numbers at full scale and prints one PASS/FAIL line per criterion.
// Usage: splitrx_acceptance [--only N]

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "splitrx/detect.hpp"
#include "splitrx/mi.hpp"
#include "splitrx/model.hpp"
#include "splitrx/numeric.hpp"
#include "splitrx/parallel.hpp"
#include "splitrx/rng.hpp"
#include "splitrx/specfun.hpp"

using namespace splitrx;

namespace {

struct Outcome {
    int id;
    std::string name;
    bool pass;
    double seconds;
};

std::vector<Outcome> g_outcomes;

void run_criterion(int id, const std::string& name, const std::function<bool()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        std::printf("  exception: %s\n", e.what());
        ok = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    g_outcomes.push_back({id, name, ok, secs});
    std::printf("[%s] criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, name.c_str(), secs);
    std::fflush(stdout);
}

// Histogram budgets: bins follow the joint's geometry (fine bins for the
// thin high-SNR sheets, coarse for diffuse clouds where fine bins would
// starve the cells).
EstimatorConfig mc_config(int bins) {
    EstimatorConfig est;
    est.n_samples = 4000000;
    est.bins_per_dim = bins;
    est.inner_samples = 500;
    est.seed = 20240;
    return est;
}

bool check(bool cond, const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    std::printf("  %s ", cond ? "ok  " : "FAIL");
    std::vprintf(fmt, args);
    std::printf("\n");
    va_end(args);
    return cond;
}

// --- criterion 1: histogram estimator vs the rho = 1 closed form ---
bool criterion1() {
    const EstimatorConfig est = mc_config(64);
    bool ok = true;
    for (double sa2 : {1.0, 0.1, 0.01}) {
        for (double p : {10.0, 100.0, 1000.0}) {
            const NoiseEnv env{sa2, 1.0, 1.0};
            SystemConfig cfg{p, 1.0, 1.0, 1.0};
            const MiEstimate mc = mi_split_mc(cfg, env, est, MiMethod::Histogram);
            const double ref = mi_cd_closed_form(cfg, env).bits;
            const double tol = std::max(0.05, 2.0 * mc.std_err);
            ok &= check(std::abs(mc.bits - ref) < tol,
                        "P=%g sa2=%g: mc=%.4f closed=%.4f (tol %.3f)", p, sa2, mc.bits, ref, tol);
        }
    }
    return ok;
}

// --- criterion 2: Prop-1 approximation accuracy at moderate SNR ---
bool criterion2() {
    bool ok = true;
    for (double p : {100.0, 1000.0}) {
        EstimatorConfig est = mc_config(p > 500.0 ? 384 : 96);
        if (p > 500.0) est.n_samples = 10000000;
        for (double sa2 : {1.0, 0.1, 0.01}) {
            for (double rho : {0.3, 0.5, 0.7, 0.9}) {
                const NoiseEnv env{sa2, 1.0, 1.0};
                SystemConfig cfg{p, 1.0, rho, 1.0};
                const double approx = mi_split_approx(cfg, env).bits;
                const double mc = mi_split_mc(cfg, env, est, MiMethod::Histogram).bits;
                ok &= check(std::abs(approx - mc) < 0.15,
                            "P=%g sa2=%g rho=%.1f: approx=%.3f mc=%.3f diff=%.3f", p, sa2, rho,
                            approx, mc, std::abs(approx - mc));
            }
        }
    }
    return ok;
}

// --- criterion 3: optimal splitting ratio and gain (Table I rows 1 and 3) ---
bool criterion3() {
    const EstimatorConfig est = mc_config(96);
    bool ok = true;
    {
        const NoiseEnv env{0.01, 1.0, 1.0};
        SystemConfig cfg{100.0, 1.0, 0.5, 1.0};
        const GainReport g = gain(cfg, env, est, 0.02);
        ok &= check(std::abs(g.rho_star - 0.44) <= 0.05, "row1 rho*=%.3f (0.44 +- 0.05)",
                    g.rho_star);
        ok &= check(std::abs(g.g_mi - 1.69) <= 0.10, "row1 G_MI=%.3f bits (1.69 +- 0.10)", g.g_mi);
        ok &= check(std::abs(g.g_mi_pct - 25.4) <= 2.0, "row1 G_MI%%=%.2f (25.4 +- 2.0)",
                    g.g_mi_pct);
    }
    {
        const NoiseEnv env{0.01, 1.0, 0.01};
        SystemConfig cfg{100.0, 1.0, 0.5, 1.0};
        const GainReport g = gain(cfg, env, est, 0.02);
        ok &= check(std::abs(g.g_mi_pct - 44.2) <= 3.0, "row3 G_MI%%=%.2f (44.2 +- 3.0), rho*=%.3f",
                    g.g_mi_pct, g.rho_star);
    }
    return ok;
}

// --- criterion 4: Prop-2 limits ---
bool criterion4() {
    bool ok = true;
    const double g1 = asymptotic_gain(NoiseEnv{0.01, 1.0, 1.0});
    const double g2 = asymptotic_gain(NoiseEnv{0.01, 0.1, 1.0});
    const double g3 = asymptotic_gain(NoiseEnv{0.01, 0.01, 1.0});
    ok &= check(std::abs(g1 - 3.33) < 0.005, "gain limit (0.01,1)    = %.4f -> 3.33", g1);
    ok &= check(std::abs(g2 - 1.73) < 0.005, "gain limit (0.01,0.1)  = %.4f -> 1.73", g2);
    ok &= check(std::abs(g3 - 0.50) < 0.005, "gain limit (0.01,0.01) = %.4f -> 0.50", g3);

    const NoiseEnv env{0.01, 1.0, 1.0};
    SystemConfig cfg{1e7, 1.0, 0.999, 1.0};
    const double cd = mi_cd_closed_form(cfg, env).bits;
    const double gap_asym = mi_split_asymptotic(cfg, env).bits - cd;
    ok &= check(std::abs(gap_asym - 3.33) < 0.1,
                "high-SNR expression at rho=0.999, P=1e7: gap=%.4f (3.33 +- 0.1)", gap_asym);
    // The finite-P approximation at the same point sits outside its
    // asymptotic regime (P (1-rho)^2 = 10); reported for reference only.
    const double gap_approx = mi_split_approx(cfg, env).bits - cd;
    std::printf("  info finite-P approximation gap at the same point: %.4f\n", gap_approx);
    return ok;
}

// --- criterion 5: low-complexity vs ML detector agreement ---
bool criterion5() {
    const NoiseEnv env{0.1, 1.0, 1.0};
    SystemConfig cfg{200.0, 1.0, 0.8, 1.0};
    const Constellation c = make_qam(64);
    const QuadratureSpec quad{48};
    const std::int64_t trials = 100000;
    const std::int64_t n_chunks = chunk_count(trials, 1000);
    std::vector<std::int64_t> agree(n_chunks, 0);
    for_each_chunk(trials, 1000, [&](std::int64_t ci, std::int64_t, std::int64_t count) {
        Philox rng(31, ci);
        std::int64_t a = 0;
        for (std::int64_t t = 0; t < count; ++t) {
            const int tx = static_cast<int>(rng.index(c.points.size()));
            const RxSample rx = sample_channel(c.points[tx], cfg, env, rng);
            const int ml = detect_ml(rx, c, cfg, env, quad);
            const int fast = detect_fast(scale_y2(rx, cfg.power), c, cfg, env);
            if (ml == fast) ++a;
        }
        agree[ci] = a;
    });
    std::int64_t total = 0;
    for (auto a : agree) total += a;
    const double frac = static_cast<double>(total) / static_cast<double>(trials);
    return check(frac >= 0.999, "ml/fast agreement = %.5f over %lld trials (>= 0.999)", frac,
                 static_cast<long long>(trials));
}

// Coarse rho grid with a 0.01 refinement pass around the running minimum.
SerSweep refined_sweep(const Constellation& c, const SystemConfig& cfg, const NoiseEnv& env,
                       const DetectorKind& det, std::int64_t n, std::uint64_t seed) {
    std::vector<double> coarse;
    for (double r = 0.05; r < 1.0 + 1e-9; r += 0.05) coarse.push_back(std::min(r, 1.0));
    SerSweep sweep = ser_optimal_rho(c, cfg, env, det, n, coarse, seed);
    std::vector<double> fine;
    for (double r = std::max(0.01, sweep.rho_star - 0.05);
         r < std::min(1.0, sweep.rho_star + 0.05) + 1e-9; r += 0.01) {
        bool dup = false;
        for (double g : coarse) dup |= std::abs(g - r) < 1e-9;
        if (!dup) fine.push_back(std::min(r, 1.0));
    }
    const SerSweep fs = ser_optimal_rho(c, cfg, env, det, n, fine, seed);
    for (const auto& pt : fs.curve) sweep.curve.push_back(pt);
    if (fs.ser_min < sweep.ser_min) {
        sweep.ser_min = fs.ser_min;
        sweep.rho_star = fs.rho_star;
    }
    return sweep;
}

// --- criterion 6: 64-QAM SER-vs-rho endpoints ---
bool criterion6() {
    const Constellation c = make_qam(64);
    DetectorKind det;  // low-complexity
    bool ok = true;
    {
        const NoiseEnv env{0.1, 1.0, 1.0};
        SystemConfig cfg{200.0, 1.0, 0.5, 1.0};
        const SerSweep sweep = refined_sweep(c, cfg, env, det, 1000000, 77);
        SystemConfig cd = cfg;
        cd.rho = 1.0;
        const SerResult at1 = ser_monte_carlo(c, cd, env, det, 1000000, 77);
        ok &= check(sweep.ser_min >= 1e-3 && sweep.ser_min <= 4e-3,
                    "sa2=0.1: min SER=%.3e at rho*=%.2f (in [1e-3, 4e-3])", sweep.ser_min,
                    sweep.rho_star);
        ok &= check(at1.ser >= 4e-3 && at1.ser <= 9e-3, "sa2=0.1: SER(rho=1)=%.3e (in [4e-3, 9e-3])",
                    at1.ser);
    }
    {
        const NoiseEnv env{1.0, 1.0, 1.0};
        SystemConfig cfg{200.0, 1.0, 0.5, 1.0};
        const SerSweep sweep = refined_sweep(c, cfg, env, det, 1000000, 78);
        SystemConfig cd = cfg;
        cd.rho = 1.0;
        const SerResult at1 = ser_monte_carlo(c, cd, env, det, 1000000, 78);
        ok &= check(sweep.ser_min >= 2e-2 && sweep.ser_min <= 4e-2,
                    "sa2=1: min SER=%.3e at rho*=%.2f (in [2e-2, 4e-2])", sweep.ser_min,
                    sweep.rho_star);
        ok &= check(at1.ser >= 4e-2 && at1.ser <= 7e-2, "sa2=1: SER(rho=1)=%.3e (in [4e-2, 7e-2])",
                    at1.ser);
    }
    return ok;
}

// --- criterion 7: transmit-power gap at target SER 1e-2 ---
bool criterion7() {
    const Constellation c = make_qam(64);
    const NoiseEnv env{0.1, 1.0, 1.0};
    DetectorKind det;
    const std::int64_t n = 1000000;
    std::vector<double> rho_grid;
    for (double r = 0.50; r < 1.0 + 1e-9; r += 0.05) rho_grid.push_back(std::min(r, 1.0));

    std::vector<double> dbs, cd_curve, split_curve;
    for (double db = 20.2; db <= 23.81; db += 0.3) {
        const double p = std::pow(10.0, db / 10.0);
        SystemConfig cfg{p, 1.0, 1.0, 1.0};
        const SerResult cd = ser_monte_carlo(c, cfg, env, det, n, 91);
        SystemConfig base{p, 1.0, 0.5, 1.0};
        const SerSweep sweep = ser_optimal_rho(c, base, env, det, n, rho_grid, 91);
        dbs.push_back(db);
        cd_curve.push_back(cd.ser);
        split_curve.push_back(sweep.ser_min);
        std::printf("  info P=%.1f dB: SER(rho=1)=%.3e  SER(rho*)=%.3e\n", db, cd.ser,
                    sweep.ser_min);
    }
    auto crossing = [&](const std::vector<double>& ser) {
        for (std::size_t i = 1; i < ser.size(); ++i) {
            if (ser[i - 1] >= 1e-2 && ser[i] < 1e-2) {
                const double l0 = std::log10(ser[i - 1]);
                const double l1 = std::log10(ser[i]);
                return dbs[i - 1] + (dbs[i] - dbs[i - 1]) * (-2.0 - l0) / (l1 - l0);
            }
        }
        return -1.0;
    };
    const double p_cd = crossing(cd_curve);
    const double p_split = crossing(split_curve);
    if (p_cd < 0.0 || p_split < 0.0) {
        return check(false, "SER curves did not bracket the 1e-2 target");
    }
    const double gap = p_cd - p_split;
    return check(std::abs(gap - 1.2) <= 0.3, "power gap at SER 1e-2 = %.2f dB (1.2 +- 0.3)", gap);
}

// --- criterion 8: PSK is minimized at rho = 1 ---
bool criterion8() {
    const Constellation c = make_psk(8);
    const NoiseEnv env{1.0, 1.0, 1.0};
    SystemConfig cfg{100.0, 1.0, 0.5, 1.0};
    DetectorKind det;
    std::vector<double> grid;
    for (double r = 0.05; r < 1.0 + 1e-9; r += 0.05) grid.push_back(std::min(r, 1.0));
    const SerSweep sweep = ser_optimal_rho(c, cfg, env, det, 2000000, grid, 99);
    return check(sweep.rho_star >= 0.95 - 1e-9,
                 "8-PSK rho* = %.2f (within one 0.05 grid step of 1)", sweep.rho_star);
}

// --- criterion 9: density, special-function, and entropy reference suite ---
bool criterion9() {
    bool ok = true;

    // special functions vs long-double oracles (series definitions)
    {
        auto ee1_oracle = [](long double x) {
            long double sum = 0.0L, term = 1.0L;
            for (int n = 1; n <= 500; ++n) {
                term *= -x / n;
                const long double add = term / n;
                sum += add;
                if (fabsl(add) < 1e-28L * fabsl(sum)) break;
            }
            return expl(x) * (-0.57721566490153286060651209008L - logl(x) - sum);
        };
        double worst = 0.0;
        for (double x : {0.01, 0.1, 0.5, 1.0, 1.5, 2.0, 4.0, 6.0}) {
            const double ref = static_cast<double>(ee1_oracle(x));
            worst = std::max(worst, std::abs(exp_e1(x) - ref) / std::abs(ref));
        }
        ok &= check(worst < 1e-10, "exp_e1 vs series oracle: worst rel err %.2e", worst);

        auto i0s_oracle = [](long double x) {
            const long double q = 0.25L * x * x;
            long double term = 1.0L, sum = 1.0L;
            for (int k = 1; k <= 400; ++k) {
                term *= q / (static_cast<long double>(k) * k);
                sum += term;
                if (term < 1e-25L * sum) break;
            }
            return expl(-x) * sum;
        };
        double worst_i = 0.0;
        for (double x : {0.1, 1.0, 5.0, 15.0, 20.5, 30.0}) {
            const double ref = static_cast<double>(i0s_oracle(x));
            worst_i = std::max(worst_i, std::abs(bessel_i0_scaled(x) - ref) / ref);
        }
        ok &= check(worst_i < 1e-10, "bessel_i0_scaled vs series oracle: worst rel err %.2e",
                    worst_i);
        double worst_e = 0.0;
        for (double x : {-3.0, -0.5, 0.3, 1.0, 2.5, 6.0}) {
            const double ref = std::erfc(x);
            worst_e = std::max(worst_e, std::abs(splitrx::erfc(x) - ref) / std::abs(ref));
        }
        ok &= check(worst_e < 1e-12, "erfc consistency: worst rel err %.2e", worst_e);
    }

    // Simpson normalization of each density
    auto simpson = [](const std::function<double(double)>& f, double lo, double hi, int n) {
        if (n % 2) ++n;
        const double h = (hi - lo) / n;
        double s = f(lo) + f(hi);
        for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    {
        const double norm_emg =
            simpson([](double y) { return emg_pdf(y, 2.0, 1.0, 1.0, 2.0); }, -15.0, 140.0, 60000);
        ok &= check(std::abs(norm_emg - 1.0) < 1e-6, "emg normalization = %.8f", norm_emg);
        const double norm_ncx2 =
            simpson([](double r) { return ncx2_pdf(r, 4.0, 0.5); }, 0.0, 60.0, 60000);
        ok &= check(std::abs(norm_ncx2 - 1.0) < 1e-6, "ncx2 normalization = %.8f", norm_ncx2);
        const double norm_rc =
            simpson([](double r) { return rc_pdf(r, 2.0, 0.5, 0.3); }, -6.0, 30.0, 40000);
        ok &= check(std::abs(norm_rc - 1.0) < 1e-5, "rc normalization = %.8f", norm_rc);
        double worst = 0.0;
        for (double r : {-1.0, 0.0, 0.5, 1.0, 2.0, 5.0}) {
            worst = std::max(worst,
                             std::abs(rc_pdf(r, 0.0, 0.5, 1.0) - emg_pdf(r, 0.5, 1.0, 0.5, 1.0)));
        }
        ok &= check(worst < 1e-4, "rc(lambda=0) vs emg identity: worst abs err %.2e", worst);
    }

    // conditional-density normalization over (y1r, y1i, y2)
    {
        SystemConfig cfg{10.0, 1.0, 0.5, 1.0};
        const NoiseEnv env{1.0, 1.0, 1.0};
        const QuadratureSpec quad{32};
        const cplx x{1.1, -0.3};
        static const double gx[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                                     0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
        static const double gw[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                                     0.1600783285433462, 0.1069393259953184, 0.0471753363865118};
        auto nodes_for = [&](double lo, double hi, int panels) {
            std::vector<std::pair<double, double>> nw;
            const double h = (hi - lo) / panels;
            for (int p = 0; p < panels; ++p) {
                const double cc = lo + (p + 0.5) * h;
                for (int k = 0; k < 6; ++k) {
                    nw.emplace_back(cc - 0.5 * h * gx[k], 0.5 * h * gw[k]);
                    nw.emplace_back(cc + 0.5 * h * gx[k], 0.5 * h * gw[k]);
                }
            }
            return nw;
        };
        const cplx m = std::sqrt(cfg.power) * x;
        const double c1r = std::sqrt(cfg.rho) * m.real();
        const double c1i = std::sqrt(cfg.rho) * m.imag();
        const double w1 = 5.0;
        const double y2_mid = (1.0 - cfg.rho) * std::norm(m);
        const double y2_span = (1.0 - cfg.rho) * (2.0 * std::abs(m) * 5.0 + 25.0) + 9.0;
        const auto n1r = nodes_for(c1r - w1, c1r + w1, 12);
        const auto n1i = nodes_for(c1i - w1, c1i + w1, 12);
        const auto n2 = nodes_for(y2_mid - y2_span, y2_mid + y2_span, 12);
        double total = 0.0;
        for (const auto& [vr, wr] : n1r) {
            for (const auto& [vi, wi] : n1i) {
                double inner = 0.0;
                for (const auto& [v2, w2] : n2) {
                    inner += w2 * cond_joint_pdf_given_x(cplx{vr, vi}, v2, x, cfg, env, quad);
                }
                total += wr * wi * inner;
            }
        }
        ok &= check(std::abs(total - 1.0) < 1e-4, "conditional pdf normalization = %.6f", total);
    }

    // histogram entropy on reference distributions
    {
        Philox rng(501, 0);
        const int n = 1000000;
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
        const double hg = entropy_histogram(g, 1, 80).bits;
        ok &= check(std::abs(hg - 2.047) < 0.03, "entropy N(0,1) = %.4f (2.047 +- 0.03)", hg);
        std::vector<double> c2(2 * n);
        for (int i = 0; i < 2 * n; ++i) c2[i] = rng.gaussian() * M_SQRT1_2;
        const double hc = entropy_histogram(c2, 2, 80).bits;
        ok &= check(std::abs(hc - 3.094) < 0.05, "entropy CN(0,1) = %.4f (3.094 +- 0.05)", hc);
        std::vector<double> u(n);
        for (int i = 0; i < n; ++i) u[i] = rng.uniform();
        const double hu = entropy_histogram(u, 1, 80).bits;
        ok &= check(std::abs(hu) < 0.02, "entropy U(0,1) = %.4f (0 +- 0.02)", hu);
    }
    return ok;
}

// --- criterion 10: worker-count determinism of every Monte-Carlo entry ---
bool criterion10() {
    const NoiseEnv env{0.1, 1.0, 1.0};
    SystemConfig cfg{50.0, 1.0, 0.6, 1.0};
    EstimatorConfig est;
    est.n_samples = 50000;
    est.bins_per_dim = 64;
    est.inner_samples = 200;
    est.seed = 4242;
    const Constellation c = make_qam(16);
    DetectorKind det;

    struct Snapshot {
        double hist = 0, plugin = 0, pd = 0, gain_star = 0, gain_g = 0;
        std::int64_t ser_err = 0;
        double sweep_min = 0;
        bool operator==(const Snapshot& o) const {
            return hist == o.hist && plugin == o.plugin && pd == o.pd && ser_err == o.ser_err &&
                   sweep_min == o.sweep_min && gain_star == o.gain_star && gain_g == o.gain_g;
        }
    };
    auto snap = [&]() {
        Snapshot s{};
        s.hist = mi_split_mc(cfg, env, est, MiMethod::Histogram).bits;
        s.plugin = mi_split_mc(cfg, env, est, MiMethod::Plugin).bits;
        s.pd = mi_pd_numeric(cfg, env, est).bits;
        s.ser_err = ser_monte_carlo(c, cfg, env, det, 20000, 5).n_errors;
        s.sweep_min = ser_optimal_rho(c, cfg, env, det, 20000, {0.3, 0.6, 0.9}, 5).ser_min;
        EstimatorConfig gest = est;
        gest.n_samples = 20000;
        const GainReport g = gain(cfg, env, gest, 0.1);
        s.gain_star = g.rho_star;
        s.gain_g = g.g_mi;
        return s;
    };
    set_num_threads(1);
    const Snapshot s1 = snap();
    set_num_threads(2);
    const Snapshot s2 = snap();
    set_num_threads(3);
    const Snapshot s3 = snap();
    set_num_threads(0);
    return check(s1 == s2 && s1 == s3,
                 "hist/plugin/pd/ser/sweep/gain bit-identical across 1, 2, 3 workers");
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    struct Entry {
        int id;
        const char* name;
        std::function<bool()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "histogram estimator matches the rho=1 closed form", criterion1},
        {2, "closed-form approximation within 0.15 bits of Monte-Carlo", criterion2},
        {3, "optimal splitting ratio and gain table rows", criterion3},
        {4, "high-SNR gain limits", criterion4},
        {5, "low-complexity vs ML detector agreement", criterion5},
        {6, "64-QAM SER versus rho endpoints", criterion6},
        {7, "transmit-power gap at SER 1e-2", criterion7},
        {8, "8-PSK optimal ratio at rho = 1", criterion8},
        {9, "density, special-function, and entropy suite", criterion9},
        {10, "worker-count determinism", criterion10},
    };
    for (const auto& e : entries) {
        if (only != 0 && e.id != only) continue;
        run_criterion(e.id, e.name, e.fn);
    }
    int failures = 0;
    for (const auto& o : g_outcomes) failures += o.pass ? 0 : 1;
    double total = 0.0;
    for (const auto& o : g_outcomes) total += o.seconds;
    std::printf("%d/%zu criteria passed (%.1f s total)\n", static_cast<int>(g_outcomes.size()) - failures,
                g_outcomes.size(), total);
    return failures == 0 ? 0 : 1;
}
