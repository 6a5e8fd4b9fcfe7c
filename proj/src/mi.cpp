// SPDX-License-Identifier: Apache-2.0
#include "splitrx/mi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "splitrx/numeric.hpp"
#include "splitrx/parallel.hpp"
#include "splitrx/rng.hpp"
#include "splitrx/specfun.hpp"

namespace splitrx {

void EstimatorConfig::validate() const {
    if (n_samples < 10000) {
        throw std::invalid_argument("EstimatorConfig: n_samples must be >= 10000");
    }
    if (bins_per_dim < 16 || bins_per_dim > 512) {
        throw std::invalid_argument("EstimatorConfig: bins_per_dim must lie in [16, 512]");
    }
    if (inner_samples < 2) {
        throw std::invalid_argument("EstimatorConfig: inner_samples must be >= 2");
    }
    quad.validate();
}

const char* to_string(MiMethod m) {
    switch (m) {
        case MiMethod::Histogram: return "histogram";
        case MiMethod::Plugin: return "plugin";
        case MiMethod::ClosedForm: return "closed";
        case MiMethod::Approx: return "approx";
    }
    return "?";
}

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr std::int64_t kChunk = 16384;

// Stream tags keep every Monte-Carlo pass on its own counter-based substream.
constexpr std::uint64_t kTagJoint = 0x10;
constexpr std::uint64_t kTagCond = 0x11;
constexpr std::uint64_t kTagPlugin = 0x12;
constexpr std::uint64_t kTagPdMarginal = 0x13;
constexpr std::uint64_t kTagPdCond = 0x14;

std::uint64_t stream_id(std::uint64_t tag, std::int64_t chunk) {
    return (tag << 40) | static_cast<std::uint64_t>(chunk);
}

// Caps for the per-sample-expensive passes; the reported std_err accounts
// for the actual count used.
constexpr std::int64_t kMaxCondSamples = 300000;
constexpr std::int64_t kMaxPdSamples = 200000;

struct MeanVar {
    double sum = 0.0;
    double sum2 = 0.0;
    std::int64_t n = 0;
    void add(double v) {
        sum += v;
        sum2 += v * v;
        ++n;
    }
    void merge(const MeanVar& o) {
        sum += o.sum;
        sum2 += o.sum2;
        n += o.n;
    }
    double mean() const { return sum / static_cast<double>(n); }
    double std_err() const {
        const double m = mean();
        const double var = std::max(0.0, sum2 / static_cast<double>(n) - m * m);
        return std::sqrt(var / static_cast<double>(n));
    }
};

// Mean/std-err of fn over n Monte-Carlo samples; chunk partials reduced in
// chunk order so the result is worker-count independent.
template <typename Fn>
MeanVar mc_mean(std::int64_t n, std::uint64_t seed, std::uint64_t tag, Fn&& fn) {
    const std::int64_t n_chunks = chunk_count(n, kChunk);
    std::vector<MeanVar> partial(n_chunks);
    for_each_chunk(n, kChunk, [&](std::int64_t c, std::int64_t, std::int64_t count) {
        Philox rng(seed, stream_id(tag, c));
        MeanVar acc;
        for (std::int64_t i = 0; i < count; ++i) acc.add(fn(rng));
        partial[c] = acc;
    });
    MeanVar total;
    for (const auto& p : partial) total.merge(p);
    return total;
}

struct HistSetup {
    int dim = 3;
    int bins = 80;
    double lo[3] = {0, 0, 0};
    double inv_h[3] = {0, 0, 0};
    double log2_vol = 0.0;
};

struct CountTable {
    std::unordered_map<std::uint64_t, std::uint32_t> cells;
    std::int64_t dropped = 0;
    std::int64_t kept = 0;
};

HistEntropy entropy_from_counts(const CountTable& table, const HistSetup& setup) {
    const double n = static_cast<double>(table.kept);
    if (table.kept <= 0) throw std::domain_error("entropy_histogram: no in-range samples");
    double sum_nl = 0.0;   // sum p * (-ln p)
    double sum_nl2 = 0.0;  // sum p * (ln p)^2
    std::int64_t thin_mass = 0;
    for (const auto& [key, count] : table.cells) {
        (void)key;
        const double p = static_cast<double>(count) / n;
        const double lp = std::log(p);
        sum_nl -= p * lp;
        sum_nl2 += p * lp * lp;
        if (count < 5) thin_mass += count;
    }
    const double k_occ = static_cast<double>(table.cells.size());
    HistEntropy out;
    out.bits = sum_nl / kLn2 + setup.log2_vol + (k_occ - 1.0) / (2.0 * n * kLn2);
    const double var_nats = std::max(0.0, sum_nl2 - sum_nl * sum_nl);
    out.std_err = std::sqrt(var_nats / n) / kLn2;
    if (static_cast<double>(thin_mass) > 0.2 * n) {
        out.warning = "histogram: >20% of mass in cells with < 5 samples";
    }
    const double total = n + static_cast<double>(table.dropped);
    if (static_cast<double>(table.dropped) > 0.01 * total) {
        if (!out.warning.empty()) out.warning += "; ";
        out.warning += "histogram: >1% of samples outside the 5-sigma range";
    }
    return out;
}

// Two-pass streamed histogram entropy: moments fix the 5-sigma ranges, the
// second pass regenerates the identical sample stream and bins it.
template <typename SampleFn>
HistEntropy streamed_entropy(std::int64_t n, int dim, int bins, std::uint64_t seed,
                             std::uint64_t tag, SampleFn&& fill) {
    const std::int64_t n_chunks = chunk_count(n, kChunk);
    struct Moments {
        double s[3] = {0, 0, 0};
        double s2[3] = {0, 0, 0};
    };
    std::vector<Moments> mparts(n_chunks);
    for_each_chunk(n, kChunk, [&](std::int64_t c, std::int64_t, std::int64_t count) {
        Philox rng(seed, stream_id(tag, c));
        Moments m;
        double v[3];
        for (std::int64_t i = 0; i < count; ++i) {
            fill(rng, v);
            for (int d = 0; d < dim; ++d) {
                m.s[d] += v[d];
                m.s2[d] += v[d] * v[d];
            }
        }
        mparts[c] = m;
    });
    Moments tot;
    for (const auto& m : mparts) {
        for (int d = 0; d < dim; ++d) {
            tot.s[d] += m.s[d];
            tot.s2[d] += m.s2[d];
        }
    }
    HistSetup setup;
    setup.dim = dim;
    setup.bins = bins;
    setup.log2_vol = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double mean = tot.s[d] / static_cast<double>(n);
        const double var = tot.s2[d] / static_cast<double>(n) - mean * mean;
        if (!(var > 0.0) || !std::isfinite(var)) {
            throw std::domain_error("entropy histogram: degenerate sample range");
        }
        const double sd = std::sqrt(var);
        setup.lo[d] = mean - 5.0 * sd;
        const double h = 10.0 * sd / bins;
        setup.inv_h[d] = 1.0 / h;
        setup.log2_vol += std::log2(h);
    }

    std::vector<CountTable> hparts(n_chunks);
    for_each_chunk(n, kChunk, [&](std::int64_t c, std::int64_t, std::int64_t count) {
        Philox rng(seed, stream_id(tag, c));
        CountTable t;
        double v[3];
        for (std::int64_t i = 0; i < count; ++i) {
            fill(rng, v);
            std::uint64_t key = 0;
            bool ok = true;
            for (int d = 0; d < dim; ++d) {
                const double f = (v[d] - setup.lo[d]) * setup.inv_h[d];
                if (!(f >= 0.0) || f >= static_cast<double>(bins)) {
                    ok = false;
                    break;
                }
                key = key * static_cast<std::uint64_t>(bins) + static_cast<std::uint64_t>(f);
            }
            if (ok) {
                ++t.cells[key];
                ++t.kept;
            } else {
                ++t.dropped;
            }
        }
        hparts[c] = std::move(t);
    });
    CountTable total;
    for (auto& t : hparts) {
        total.kept += t.kept;
        total.dropped += t.dropped;
        for (const auto& [key, count] : t.cells) total.cells[key] += count;
    }
    return entropy_from_counts(total, setup);
}

// One joint observation under Gaussian signaling; 7 gaussians per sample in
// fixed order (x, then the channel's w, z, n).
void draw_joint(Philox& rng, const SystemConfig& cfg, const NoiseEnv& env, double v[3]) {
    const cplx x = sample_gaussian_input(rng);
    const RxSample s = sample_channel(x, cfg, env, rng);
    v[0] = s.y1.real();
    v[1] = s.y1.imag();
    v[2] = s.y2;
}

std::string join_warnings(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "; " + b;
}

}  // namespace

MiEstimate mi_cd_closed_form(const SystemConfig& cfg, const NoiseEnv& env) {
    cfg.validate();
    env.validate();
    const double snr = cfg.power * cfg.h_mag * cfg.h_mag / (env.sigma_a2 + env.sigma_cov2);
    return {std::log2(1.0 + snr), 0.0, MiMethod::ClosedForm, {}};
}

MiEstimate mi_pd_upper_bound(const SystemConfig& cfg, const NoiseEnv& env) {
    cfg.validate();
    env.validate();
    const double c = 0.5 * (std::log2(2.0 * M_PI / M_E) - kEulerGamma / kLn2);
    const double bits =
        0.5 * std::log2(1.0 + cfg.power * cfg.h_mag * cfg.h_mag / (2.0 * env.sigma_a2)) + c;
    return {bits, 0.0, MiMethod::ClosedForm, {}};
}

MiEstimate mi_split_approx(const SystemConfig& cfg, const NoiseEnv& env) {
    cfg.validate();
    env.validate();
    if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) {
        throw std::domain_error("mi_split_approx: rho must lie strictly inside (0, 1)");
    }
    if (!(cfg.power > 0.0)) {
        throw std::domain_error("mi_split_approx: requires P > 0");
    }
    const double rho = cfg.rho;
    const double ph2 = cfg.power * cfg.h_mag * cfg.h_mag;
    const double mu = ph2 + env.sigma_a2;
    const double omr2 = (1.0 - rho) * (1.0 - rho);
    const double a = rho * env.sigma_rec2 / (2.0 * omr2 * env.sigma_cov2 * mu);
    const double b = (rho * env.sigma_a2 + env.sigma_cov2) * env.sigma_rec2 /
                     (2.0 * omr2 * ph2 * env.sigma_a2 * env.sigma_cov2);
    const double ups = exp_e1(a) - exp_e1(b);
    const double bits =
        std::log2(rho * mu / (rho * env.sigma_a2 + env.sigma_cov2)) + ups / (2.0 * kLn2);
    return {bits, 0.0, MiMethod::Approx, {}};
}

MiEstimate mi_split_asymptotic(const SystemConfig& cfg, const NoiseEnv& env) {
    cfg.validate();
    env.validate();
    if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) {
        throw std::domain_error("mi_split_asymptotic: rho must lie strictly inside (0, 1)");
    }
    if (!(cfg.power > 0.0)) {
        throw std::domain_error("mi_split_asymptotic: requires P > 0");
    }
    const double ph2 = cfg.power * cfg.h_mag * cfg.h_mag;
    const double bits = std::log2(
        ph2 / (std::sqrt(env.sigma_a2 + env.sigma_cov2 / cfg.rho) * std::sqrt(env.sigma_a2)));
    return {bits, 0.0, MiMethod::Approx, {}};
}

double asymptotic_gain(const NoiseEnv& env) {
    if (!(env.sigma_a2 > 0.0)) {
        throw std::domain_error("asymptotic_gain: requires sigma_a2 > 0");
    }
    env.validate();
    return 0.5 * std::log2(1.0 + env.sigma_cov2 / env.sigma_a2);
}

MiEstimate mi_pd_numeric(const SystemConfig& cfg, const NoiseEnv& env, const EstimatorConfig& est) {
    cfg.validate();
    env.validate();
    est.validate();
    const double sqp = std::sqrt(cfg.power) * cfg.h_mag;
    const double sa = std::sqrt(env.sigma_a2 / 2.0);
    const double sn = std::sqrt(env.sigma_rec2);
    const double ph2 = cfg.power * cfg.h_mag * cfg.h_mag;

    const std::int64_t n1 = std::min(est.n_samples, kMaxCondSamples);
    const MeanVar hy2 = mc_mean(n1, est.seed, kTagPdMarginal, [&](Philox& rng) {
        const cplx x = sample_gaussian_input(rng);
        const cplx w{sa * rng.gaussian(), sa * rng.gaussian()};
        const double y2 = std::norm(sqp * x + w) + sn * rng.gaussian();
        return -log_emg_pdf(y2, cfg.power, cfg.h_mag, env.sigma_a2, env.sigma_rec2);
    });

    const std::int64_t n2 = std::min(est.n_samples, kMaxPdSamples);
    const MeanVar hcond = mc_mean(n2, est.seed, kTagPdCond, [&](Philox& rng) {
        const cplx x = sample_gaussian_input(rng);
        const double lambda = ph2 * std::norm(x);
        const cplx w{sa * rng.gaussian(), sa * rng.gaussian()};
        const double rc = std::norm(sqp * x + w) + sn * rng.gaussian();
        return -log_rc_pdf(rc, lambda, env.sigma_a2 / 2.0, env.sigma_rec2);
    });

    MiEstimate out;
    out.bits = (hy2.mean() - hcond.mean()) / kLn2;
    out.std_err = std::hypot(hy2.std_err(), hcond.std_err()) / kLn2;
    out.method = MiMethod::Plugin;
    if (out.std_err > 0.05) out.warning = "mi_pd_numeric: std_err above 0.05 bits";
    return out;
}

MiEstimate mi_split_mc(const SystemConfig& cfg, const NoiseEnv& env, const EstimatorConfig& est,
                       MiMethod method) {
    cfg.validate();
    env.validate();
    est.validate();

    if (method == MiMethod::Plugin) {
        const double sa = std::sqrt(env.sigma_a2 / 2.0);
        const double sqp = std::sqrt(cfg.power) * cfg.h_mag;
        const double sr = std::sqrt(cfg.rho);
        const double omr = 1.0 - cfg.rho;
        const int k_inner = est.inner_samples;
        const MeanVar acc = mc_mean(est.n_samples, est.seed, kTagPlugin, [&](Philox& rng) {
            static thread_local std::vector<double> lt;
            lt.resize(k_inner);
            const cplx x = sample_gaussian_input(rng);
            const RxSample y = sample_channel(x, cfg, env, rng);
            const double t1 = log_cond_joint_pdf_given_x_reduced(y.y1, y.y2, x, cfg, env);
            for (int k = 0; k < k_inner; ++k) {
                const cplx xp = sample_gaussian_input(rng);
                const cplx wp{sa * rng.gaussian(), sa * rng.gaussian()};
                const cplx s = sqp * xp + wp;
                lt[k] = log_cn_pdf(y.y1, sr * s, env.sigma_cov2) +
                        log_n_pdf(y.y2, omr * std::norm(s), env.sigma_rec2);
            }
            const double t2 = log_sum_exp(lt.data(), lt.size()) - std::log(double(k_inner));
            return t1 - t2;
        });
        MiEstimate out;
        out.bits = acc.mean() / kLn2;
        out.std_err = acc.std_err() / kLn2;
        out.method = MiMethod::Plugin;
        return out;
    }
    if (method != MiMethod::Histogram) {
        throw std::invalid_argument("mi_split_mc: method must be histogram or plugin");
    }

    const HistEntropy joint = streamed_entropy(
        est.n_samples, 3, est.bins_per_dim, est.seed, kTagJoint,
        [&](Philox& rng, double v[3]) { draw_joint(rng, cfg, env, v); });

    // Circular symmetry: conditioning on x = (|x|, 0) with |x| ~ sqrt(Exp(1)).
    const std::int64_t n_cond = std::min(est.n_samples, kMaxCondSamples);
    const MeanVar cond = mc_mean(n_cond, est.seed, kTagCond, [&](Philox& rng) {
        const cplx x{std::sqrt(-std::log(rng.uniform_pos())), 0.0};
        const RxSample y = sample_channel(x, cfg, env, rng);
        return -log_cond_joint_pdf_given_x_reduced(y.y1, y.y2, x, cfg, env);
    });

    MiEstimate out;
    out.bits = joint.bits - cond.mean() / kLn2;
    out.std_err = std::hypot(joint.std_err, cond.std_err() / kLn2);
    out.method = MiMethod::Histogram;
    out.warning = joint.warning;
    return out;
}

GainReport gain(const SystemConfig& cfg_base, const NoiseEnv& env, const EstimatorConfig& est,
                double rho_grid_step) {
    cfg_base.validate();
    env.validate();
    est.validate();
    if (!(rho_grid_step > 0.0 && rho_grid_step <= 0.1)) {
        throw std::invalid_argument("gain: rho_grid_step must lie in (0, 0.1]");
    }

    const MiEstimate at1 = mi_cd_closed_form(cfg_base, env);
    const MiEstimate at0 = mi_pd_numeric(cfg_base, env, est);

    std::vector<std::pair<double, double>> curve;  // (rho, bits)
    auto eval = [&](double rho) {
        SystemConfig cfg = cfg_base;
        cfg.rho = rho;
        const MiEstimate e = mi_split_mc(cfg, env, est, MiMethod::Histogram);
        curve.emplace_back(rho, e.bits);
        return e.bits;
    };

    double top = 0.0;
    for (double rho = rho_grid_step; rho < 1.0 - 1e-12; rho += rho_grid_step) {
        eval(rho);
        top = rho;
    }

    auto best_it = std::max_element(curve.begin(), curve.end(),
                                    [](const auto& a, const auto& b) { return a.second < b.second; });
    // The maximizer can sit close to 1 with a sharp drop at 1; scan the
    // near-1 region at 0.005 when the coarse max lands near the top.
    if (best_it->first >= top - 2.0 * rho_grid_step - 1e-12) {
        for (double rho = top + 0.005; rho < 0.9951; rho += 0.005) eval(rho);
        best_it = std::max_element(curve.begin(), curve.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
    }

    // Quadratic refinement through the grid max and its neighbours.
    std::sort(curve.begin(), curve.end());
    std::size_t bi = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].second > curve[bi].second) bi = i;
    }
    if (bi > 0 && bi + 1 < curve.size()) {
        const auto [x1, f1] = curve[bi - 1];
        const auto [x2, f2] = curve[bi];
        const auto [x3, f3] = curve[bi + 1];
        const double d21 = x2 - x1, d23 = x2 - x3;
        const double num = d21 * d21 * (f2 - f3) - d23 * d23 * (f2 - f1);
        const double den = d21 * (f2 - f3) - d23 * (f2 - f1);
        if (std::abs(den) > 1e-300) {
            double v = x2 - 0.5 * num / den;
            v = std::clamp(v, std::min(x1, x3) + 1e-6, std::max(x1, x3) - 1e-6);
            v = std::clamp(v, 1e-6, 1.0 - 1e-6);
            if (std::abs(v - x2) > 1e-9) eval(v);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].second > curve[best].second) best = i;
    }
    GainReport rep;
    rep.rho_star = curve[best].first;
    rep.mi_at_star = curve[best].second;
    rep.mi_at_0 = at0.bits;
    rep.mi_at_1 = at1.bits;
    const double base = std::max(at0.bits, at1.bits);
    rep.g_mi = rep.mi_at_star - base;
    rep.g_mi_pct = base > 0.0 ? 100.0 * rep.g_mi / base : 0.0;
    return rep;
}

HistEntropy entropy_histogram(const std::vector<double>& data, int dim, int bins_per_dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("entropy_histogram: dim must be 1, 2 or 3");
    if (bins_per_dim < 2) throw std::invalid_argument("entropy_histogram: bins_per_dim too small");
    if (data.size() % dim != 0) {
        throw std::invalid_argument("entropy_histogram: data length not a multiple of dim");
    }
    const std::int64_t n = static_cast<std::int64_t>(data.size()) / dim;
    if (n < 10000) throw std::invalid_argument("entropy_histogram: needs at least 1e4 samples");

    HistSetup setup;
    setup.dim = dim;
    setup.bins = bins_per_dim;
    for (int d = 0; d < dim; ++d) {
        double s = 0.0, s2 = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            const double v = data[i * dim + d];
            s += v;
            s2 += v * v;
        }
        const double mean = s / static_cast<double>(n);
        const double var = s2 / static_cast<double>(n) - mean * mean;
        if (!(var > 0.0) || !std::isfinite(var)) {
            throw std::domain_error("entropy_histogram: degenerate sample range");
        }
        const double sd = std::sqrt(var);
        setup.lo[d] = mean - 5.0 * sd;
        const double h = 10.0 * sd / bins_per_dim;
        setup.inv_h[d] = 1.0 / h;
        setup.log2_vol += std::log2(h);
    }
    CountTable table;
    for (std::int64_t i = 0; i < n; ++i) {
        std::uint64_t key = 0;
        bool ok = true;
        for (int d = 0; d < dim; ++d) {
            const double f = (data[i * dim + d] - setup.lo[d]) * setup.inv_h[d];
            if (!(f >= 0.0) || f >= static_cast<double>(bins_per_dim)) {
                ok = false;
                break;
            }
            key = key * static_cast<std::uint64_t>(bins_per_dim) + static_cast<std::uint64_t>(f);
        }
        if (ok) {
            ++table.cells[key];
            ++table.kept;
        } else {
            ++table.dropped;
        }
    }
    return entropy_from_counts(table, setup);
}

}  // namespace splitrx
