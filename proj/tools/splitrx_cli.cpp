// SPDX-License-Identifier: Apache-2.0
//
// Experiment runner: seeded, configurable sweeps of the splitting receiver's
// mutual information and symbol error rate, written as CSV.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "splitrx/csv.hpp"
#include "splitrx/detect.hpp"
#include "splitrx/mi.hpp"
#include "splitrx/model.hpp"
#include "splitrx/parallel.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    double sigma_a2 = 1.0;
    double sigma_cov2 = 1.0;
    double sigma_rec2 = 1.0;
    double h_mag = 1.0;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--sigma-a2", o.sigma_a2, "Antenna noise variance sigma_A^2")
        ->capture_default_str();
    cmd->add_option("--sigma-cov2", o.sigma_cov2, "Conversion noise variance sigma_cov^2")
        ->capture_default_str();
    cmd->add_option("--sigma-rec2", o.sigma_rec2, "Rectifier noise variance sigma_rec^2")
        ->capture_default_str();
    cmd->add_option("--h-mag", o.h_mag, "Channel magnitude |h|")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Random seed; one seed fixes every stream")
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware default)")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Output CSV path")->required();
}

splitrx::NoiseEnv env_of(const CommonOpts& o) { return {o.sigma_a2, o.sigma_cov2, o.sigma_rec2}; }

splitrx::Constellation load_constellation(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        std::ifstream is(path);
        if (!is) throw std::invalid_argument("cannot open constellation file: " + path);
        return splitrx::read_constellation_csv(is, path);
    }
    return splitrx::preset_constellation(spec);
}

splitrx::DetectorKind detector_of(const std::string& name, int quad_order) {
    splitrx::DetectorKind det;
    det.quad.order_per_dim = quad_order;
    if (name == "ml") {
        det.variant = splitrx::DetectorVariant::MlQuadrature;
    } else if (name == "fast") {
        det.variant = splitrx::DetectorVariant::LowComplexity;
    } else if (name == "nn-cd") {
        det.variant = splitrx::DetectorVariant::NearestNeighborCd;
    } else {
        throw std::invalid_argument("unknown detector: " + name + " (ml|fast|nn-cd)");
    }
    return det;
}

void stamp(splitrx::CsvWriter& csv, const CommonOpts& o, const std::string& scenario,
           const std::string& config_echo) {
    csv.comment("tool", std::string("splitrx ") + kVersion);
    csv.comment("scenario", scenario);
    csv.comment("seed", std::to_string(o.seed));
    csv.comment("noise",
                "sigma_a2=" + splitrx::CsvWriter::num(o.sigma_a2) +
                    " sigma_cov2=" + splitrx::CsvWriter::num(o.sigma_cov2) +
                    " sigma_rec2=" + splitrx::CsvWriter::num(o.sigma_rec2));
    csv.comment("config", config_echo);
    csv.comment("timestamp", std::to_string(std::time(nullptr)));
}

std::vector<double> rho_grid_from_step(double step, double lo, double hi) {
    std::vector<double> grid;
    for (double r = lo; r < hi + 1e-12; r += step) grid.push_back(std::min(r, hi));
    return grid;
}

int run_mi_sweep(const CommonOpts& o, const std::vector<double>& powers,
                 std::vector<double> rhos, double rho_step, const std::string& method,
                 splitrx::EstimatorConfig est, const std::string& echo) {
    est.validate();
    if (rhos.empty()) rhos = rho_grid_from_step(rho_step, rho_step, 1.0 - rho_step);
    splitrx::CsvWriter csv(o.out);
    stamp(csv, o, "mi-sweep", echo);
    csv.header({"power", "rho", "mi_bits", "std_err", "method", "warning"});
    const splitrx::NoiseEnv env = env_of(o);
    for (double p : powers) {
        for (double r : rhos) {
            splitrx::SystemConfig cfg{p, o.h_mag, r, 1.0};
            splitrx::MiEstimate e;
            if (method == "histogram") {
                e = splitrx::mi_split_mc(cfg, env, est, splitrx::MiMethod::Histogram);
            } else if (method == "plugin") {
                e = splitrx::mi_split_mc(cfg, env, est, splitrx::MiMethod::Plugin);
            } else if (method == "approx") {
                e = splitrx::mi_split_approx(cfg, env);
            } else if (method == "closed") {
                e = splitrx::mi_cd_closed_form(cfg, env);
            } else {
                throw std::invalid_argument("unknown method: " + method);
            }
            csv.field(p);
            csv.field(r);
            csv.field(e.bits);
            csv.field(e.std_err);
            csv.field(std::string(to_string(e.method)));
            csv.field(e.warning);
            csv.end_row();
            if (!e.warning.empty()) {
                std::cout << "warning (P=" << p << ", rho=" << r << "): " << e.warning << "\n";
            }
        }
    }
    std::cout << "mi-sweep: " << powers.size() * rhos.size() << " rows -> " << o.out << "\n";
    return 0;
}

int run_gain_table(const CommonOpts& o, const std::vector<double>& powers, double rho_step,
                   splitrx::EstimatorConfig est, const std::string& echo) {
    est.validate();
    splitrx::CsvWriter csv(o.out);
    stamp(csv, o, "mi-gain-table", echo);
    csv.header({"power", "sigma_a2", "sigma_cov2", "sigma_rec2", "rho_star", "g_mi_bits",
                "g_mi_pct", "mi_at_0", "mi_at_1", "mi_at_star"});
    const splitrx::NoiseEnv env = env_of(o);
    for (double p : powers) {
        splitrx::SystemConfig cfg{p, o.h_mag, 0.5, 1.0};
        const splitrx::GainReport g = splitrx::gain(cfg, env, est, rho_step);
        csv.field(p);
        csv.field(o.sigma_a2);
        csv.field(o.sigma_cov2);
        csv.field(o.sigma_rec2);
        csv.field(g.rho_star);
        csv.field(g.g_mi);
        csv.field(g.g_mi_pct);
        csv.field(g.mi_at_0);
        csv.field(g.mi_at_1);
        csv.field(g.mi_at_star);
        csv.end_row();
        std::printf("P=%g: rho*=%.3f  G_MI=%.3f bits  G_MI%%=%.1f\n", p, g.rho_star, g.g_mi,
                    g.g_mi_pct);
    }
    std::cout << "mi-gain-table: " << powers.size() << " rows -> " << o.out << "\n";
    return 0;
}

// Coarse grid plus a 0.01 refinement pass around the coarse minimum.
splitrx::SerSweep sweep_with_refinement(const splitrx::Constellation& c,
                                        const splitrx::SystemConfig& cfg_base,
                                        const splitrx::NoiseEnv& env,
                                        const splitrx::DetectorKind& det, std::int64_t n,
                                        double step, std::uint64_t seed, bool refine) {
    const std::vector<double> coarse = rho_grid_from_step(step, step, 1.0);
    splitrx::SerSweep sweep = splitrx::ser_optimal_rho(c, cfg_base, env, det, n, coarse, seed);
    if (!refine) return sweep;
    std::vector<double> fine;
    for (double r = std::max(0.01, sweep.rho_star - step); r < std::min(1.0, sweep.rho_star + step) + 1e-12;
         r += 0.01) {
        bool dup = false;
        for (double g : coarse) {
            if (std::abs(g - r) < 1e-9) dup = true;
        }
        if (!dup) fine.push_back(std::min(r, 1.0));
    }
    if (fine.empty()) return sweep;
    const splitrx::SerSweep fs = splitrx::ser_optimal_rho(c, cfg_base, env, det, n, fine, seed);
    for (const auto& r : fs.curve) sweep.curve.push_back(r);
    if (fs.ser_min < sweep.ser_min ||
        (fs.ser_min == sweep.ser_min && fs.rho_star > sweep.rho_star)) {
        sweep.ser_min = fs.ser_min;
        sweep.rho_star = fs.rho_star;
    }
    return sweep;
}

int run_ser_rho(const CommonOpts& o, double power, const std::string& constellation,
                const std::string& detector, int quad_order, std::int64_t symbols, double step,
                bool refine, const std::string& echo) {
    const splitrx::Constellation c = load_constellation(constellation);
    const splitrx::DetectorKind det = detector_of(detector, quad_order);
    const splitrx::NoiseEnv env = env_of(o);
    splitrx::SystemConfig cfg{power, o.h_mag, 0.5, 1.0};
    const splitrx::SerSweep sweep =
        sweep_with_refinement(c, cfg, env, det, symbols, step, o.seed, refine);

    splitrx::CsvWriter csv(o.out);
    stamp(csv, o, "ser-sweep-rho", echo);
    csv.comment("power", splitrx::CsvWriter::num(power));
    csv.header({"rho", "ser", "ci95", "n_symbols", "detector", "constellation"});
    for (const auto& r : sweep.curve) {
        csv.field(r.rho);
        csv.field(r.ser);
        csv.field(r.ci95);
        csv.field(static_cast<long long>(r.n_symbols));
        csv.field(std::string(to_string(det.variant)));
        csv.field(c.label);
        csv.end_row();
    }
    std::printf("ser-sweep-rho: rho*=%.2f ser_min=%.3g (%zu rows) -> %s\n", sweep.rho_star,
                sweep.ser_min, sweep.curve.size(), o.out.c_str());
    return 0;
}

int run_ser_power(const CommonOpts& o, std::vector<double> powers,
                  const std::vector<double>& powers_db, const std::string& constellation,
                  const std::string& detector, int quad_order, std::int64_t symbols, double rho,
                  bool optimize_rho, double step, const std::string& echo) {
    for (double db : powers_db) powers.push_back(std::pow(10.0, db / 10.0));
    if (powers.empty()) throw std::invalid_argument("ser-sweep-power: no powers given");
    std::sort(powers.begin(), powers.end());
    const splitrx::Constellation c = load_constellation(constellation);
    const splitrx::DetectorKind det = detector_of(detector, quad_order);
    const splitrx::NoiseEnv env = env_of(o);

    splitrx::CsvWriter csv(o.out);
    stamp(csv, o, "ser-sweep-power", echo);
    csv.comment("rho_policy", optimize_rho ? "optimal per power" : "fixed");
    csv.header({"power", "power_db", "rho", "ser", "ci95", "n_symbols", "detector",
                "constellation"});
    for (double p : powers) {
        splitrx::SystemConfig cfg{p, o.h_mag, rho, 1.0};
        splitrx::SerResult r;
        if (optimize_rho) {
            const splitrx::SerSweep sweep =
                sweep_with_refinement(c, cfg, env, det, symbols, step, o.seed, true);
            for (const auto& pt : sweep.curve) {
                if (pt.rho == sweep.rho_star) r = pt;
            }
        } else {
            r = splitrx::ser_monte_carlo(c, cfg, env, det, symbols, o.seed);
        }
        csv.field(p);
        csv.field(10.0 * std::log10(p));
        csv.field(r.rho);
        csv.field(r.ser);
        csv.field(r.ci95);
        csv.field(static_cast<long long>(r.n_symbols));
        csv.field(std::string(to_string(det.variant)));
        csv.field(c.label);
        csv.end_row();
    }
    std::cout << "ser-sweep-power: " << powers.size() << " rows -> " << o.out << "\n";
    return 0;
}

int run_detect_demo(const CommonOpts& o, double power, double rho,
                    const std::string& constellation, int quad_order, int trials,
                    const std::string& echo) {
    const splitrx::Constellation c = load_constellation(constellation);
    const splitrx::NoiseEnv env = env_of(o);
    splitrx::SystemConfig cfg{power, o.h_mag, rho, 1.0};
    cfg.validate();
    splitrx::QuadratureSpec quad{quad_order};

    splitrx::CsvWriter csv(o.out);
    stamp(csv, o, "detect-demo", echo);
    csv.header({"trial", "tx_index", "y1_re", "y1_im", "y2", "det_ml", "det_fast"});
    splitrx::Philox rng(o.seed, 0);
    int agree = 0;
    for (int t = 0; t < trials; ++t) {
        const int tx = static_cast<int>(rng.index(c.points.size()));
        const splitrx::RxSample rx = splitrx::sample_channel(c.points[tx], cfg, env, rng);
        const int ml = splitrx::detect_ml(rx, c, cfg, env, quad);
        const int fast = splitrx::detect_fast(splitrx::scale_y2(rx, power), c, cfg, env);
        agree += (ml == fast);
        csv.field(static_cast<long long>(t));
        csv.field(static_cast<long long>(tx));
        csv.field(rx.y1.real());
        csv.field(rx.y1.imag());
        csv.field(rx.y2);
        csv.field(static_cast<long long>(ml));
        csv.field(static_cast<long long>(fast));
        csv.end_row();
    }
    std::printf("detect-demo: ml/fast agreement %d/%d -> %s\n", agree, trials, o.out.c_str());
    return 0;
}

std::string echo_of(const CLI::App& cmd) {
    std::string s;
    for (const auto* opt : cmd.get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--config") continue;
        s += opt->get_name() + "=";
        for (const auto& v : opt->results()) s += v + " ";
    }
    return s.empty() ? "(defaults)" : s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "splitrx: splitting-receiver mutual-information and SER experiments.\n"
        "Outputs CSV ('.' decimal, header row, '#'-prefixed metadata comments:\n"
        "seed, version, config echo, timestamp). Exit codes: 0 success,\n"
        "2 configuration error, 3 numeric failure."};
    app.require_subcommand(1);
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);
    app.set_config("--config", "",
                   "Read options from an INI/TOML file with one [subcommand] section\n"
                   "per scenario; give it before the subcommand. Flags override it.");

    CommonOpts mi_o, gain_o, serr_o, serp_o, demo_o;
    std::vector<double> mi_powers, gain_powers, serp_powers, serp_powers_db;
    std::vector<double> mi_rhos;
    double mi_rho_step = 0.05, gain_rho_step = 0.02, serr_step = 0.05, serp_step = 0.05;
    std::string mi_method = "histogram";
    splitrx::EstimatorConfig mi_est, gain_est;
    std::string serr_const = "qam64", serp_const = "qam64", demo_const = "qam64";
    std::string serr_det = "fast", serp_det = "fast";
    int serr_quad = 48, serp_quad = 48, demo_quad = 48;
    std::int64_t serr_symbols = 1000000, serp_symbols = 1000000;
    double serr_power = 200.0, demo_power = 200.0, serp_rho = 1.0, demo_rho = 0.8;
    bool serr_no_refine = false, serp_opt_rho = false;
    int demo_trials = 12;

    auto* mi = app.add_subcommand(
        "mi-sweep",
        "Mutual information versus rho and power.\n"
        "Columns: power (linear transmit power), rho (splitting ratio),\n"
        "mi_bits (estimate), std_err (bits; 0 for analytic methods),\n"
        "method (histogram|plugin|approx|closed), warning (estimator\n"
        "reliability flags, empty when clean).");
    mi->configurable();
    add_common(mi, mi_o);
    mi->add_option("--power", mi_powers, "Transmit power (repeatable)")->required();
    mi->add_option("--rho", mi_rhos, "Explicit rho values (repeatable)");
    mi->add_option("--rho-step", mi_rho_step, "Grid step when --rho is absent")
        ->capture_default_str();
    mi->add_option("--method", mi_method, "histogram|plugin|approx|closed")
        ->capture_default_str();
    mi->add_option("--samples", mi_est.n_samples, "Monte-Carlo samples")->capture_default_str();
    mi->add_option("--bins", mi_est.bins_per_dim, "Histogram bins per dimension")
        ->capture_default_str();
    mi->add_option("--inner-samples", mi_est.inner_samples, "Plug-in marginal mixture size")
        ->capture_default_str();
    mi->add_option("--quad-order", mi_est.quad.order_per_dim, "Gauss-Hermite order")
        ->capture_default_str();

    auto* gn = app.add_subcommand(
        "mi-gain-table",
        "Optimal splitting ratio and mutual-information gain per power.\n"
        "Columns: power, sigma_a2, sigma_cov2, sigma_rec2, rho_star\n"
        "(maximizing rho), g_mi_bits (gain over the better fixed receiver),\n"
        "g_mi_pct (the same as a percentage), mi_at_0, mi_at_1, mi_at_star\n"
        "(bits).");
    gn->configurable();
    add_common(gn, gain_o);
    gn->add_option("--power", gain_powers, "Transmit power (repeatable)")->required();
    gn->add_option("--rho-step", gain_rho_step, "Coarse rho grid step")->capture_default_str();
    gn->add_option("--samples", gain_est.n_samples, "Monte-Carlo samples")->capture_default_str();
    gn->add_option("--bins", gain_est.bins_per_dim, "Histogram bins per dimension")
        ->capture_default_str();
    gn->add_option("--inner-samples", gain_est.inner_samples, "Plug-in marginal mixture size")
        ->capture_default_str();
    gn->add_option("--quad-order", gain_est.quad.order_per_dim, "Gauss-Hermite order")
        ->capture_default_str();

    auto* sr = app.add_subcommand(
        "ser-sweep-rho",
        "Symbol error rate versus the splitting ratio at fixed power.\n"
        "Columns: rho, ser (symbol error rate), ci95 (binomial 95% half\n"
        "width), n_symbols, detector (ml|fast|nn-cd), constellation.");
    sr->configurable();
    add_common(sr, serr_o);
    sr->add_option("--power", serr_power, "Transmit power")->capture_default_str();
    sr->add_option("--constellation", serr_const,
                   "qam16|qam64|psk8|apsk32-3ring|apsk32-4ring|file:PATH")
        ->capture_default_str();
    sr->add_option("--detector", serr_det, "ml|fast|nn-cd")->capture_default_str();
    sr->add_option("--symbols", serr_symbols, "Symbols per grid point")->capture_default_str();
    sr->add_option("--rho-step", serr_step, "Coarse rho grid step")->capture_default_str();
    sr->add_flag("--no-refine", serr_no_refine, "Skip the 0.01 refinement near the minimum");
    sr->add_option("--quad-order", serr_quad, "Gauss-Hermite order for --detector ml")
        ->capture_default_str();

    auto* sp = app.add_subcommand(
        "ser-sweep-power",
        "Symbol error rate versus transmit power, at fixed rho or with the\n"
        "per-power optimal rho.\n"
        "Columns: power, power_db, rho (value used), ser, ci95, n_symbols,\n"
        "detector, constellation.");
    sp->configurable();
    add_common(sp, serp_o);
    sp->add_option("--power", serp_powers, "Transmit power, linear (repeatable)");
    sp->add_option("--power-db", serp_powers_db, "Transmit power in dB (repeatable)");
    sp->add_option("--rho", serp_rho, "Fixed rho")->capture_default_str();
    sp->add_flag("--optimize-rho", serp_opt_rho, "Minimize SER over a rho grid per power");
    sp->add_option("--rho-step", serp_step, "Grid step for --optimize-rho")
        ->capture_default_str();
    sp->add_option("--constellation", serp_const,
                   "qam16|qam64|psk8|apsk32-3ring|apsk32-4ring|file:PATH")
        ->capture_default_str();
    sp->add_option("--detector", serp_det, "ml|fast|nn-cd")->capture_default_str();
    sp->add_option("--symbols", serp_symbols, "Symbols per point")->capture_default_str();
    sp->add_option("--quad-order", serp_quad, "Gauss-Hermite order for --detector ml")
        ->capture_default_str();

    auto* dd = app.add_subcommand(
        "detect-demo",
        "Draws a few symbols and shows both detectors' decisions.\n"
        "Columns: trial, tx_index (transmitted), y1_re, y1_im, y2 (received),\n"
        "det_ml, det_fast (decisions).");
    dd->configurable();
    add_common(dd, demo_o);
    dd->add_option("--power", demo_power, "Transmit power")->capture_default_str();
    dd->add_option("--rho", demo_rho, "Splitting ratio")->capture_default_str();
    dd->add_option("--constellation", demo_const,
                   "qam16|qam64|psk8|apsk32-3ring|apsk32-4ring|file:PATH")
        ->capture_default_str();
    dd->add_option("--trials", demo_trials, "Number of symbols to draw")->capture_default_str();
    dd->add_option("--quad-order", demo_quad, "Gauss-Hermite order for the ML detector")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (mi->parsed()) {
            mi_est.seed = mi_o.seed;
            splitrx::set_num_threads(mi_o.threads);
            return run_mi_sweep(mi_o, mi_powers, mi_rhos, mi_rho_step, mi_method, mi_est,
                                echo_of(*mi));
        }
        if (gn->parsed()) {
            gain_est.seed = gain_o.seed;
            splitrx::set_num_threads(gain_o.threads);
            return run_gain_table(gain_o, gain_powers, gain_rho_step, gain_est, echo_of(*gn));
        }
        if (sr->parsed()) {
            splitrx::set_num_threads(serr_o.threads);
            return run_ser_rho(serr_o, serr_power, serr_const, serr_det, serr_quad, serr_symbols,
                               serr_step, !serr_no_refine, echo_of(*sr));
        }
        if (sp->parsed()) {
            splitrx::set_num_threads(serp_o.threads);
            return run_ser_power(serp_o, serp_powers, serp_powers_db, serp_const, serp_det,
                                 serp_quad, serp_symbols, serp_rho, serp_opt_rho, serp_step,
                                 echo_of(*sp));
        }
        if (dd->parsed()) {
            splitrx::set_num_threads(demo_o.threads);
            return run_detect_demo(demo_o, demo_power, demo_rho, demo_const, demo_quad,
                                   demo_trials, echo_of(*dd));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
