// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splitrx/densities.hpp"
#include "splitrx/model.hpp"

namespace splitrx {

// Sample counts, bin counts, quadrature order, seed for the Monte-Carlo
// estimators. One seed fixes every stream; estimates are bit-identical for
// any worker count.
struct EstimatorConfig {
    std::int64_t n_samples = 1000000;
    int bins_per_dim = 80;
    int inner_samples = 2000;  // plug-in marginal mixture size
    QuadratureSpec quad{48};
    std::uint64_t seed = 1;
    void validate() const;  // n_samples >= 1e4, bins_per_dim in [16, 512]
};

enum class MiMethod { Histogram, Plugin, ClosedForm, Approx };
const char* to_string(MiMethod m);

struct MiEstimate {
    double bits = 0.0;
    double std_err = 0.0;  // 0 for analytic methods
    MiMethod method = MiMethod::ClosedForm;
    std::string warning;  // empty when the estimate is clean
};

struct GainReport {
    double rho_star = 0.0;
    double g_mi = 0.0;      // bits
    double g_mi_pct = 0.0;  // percent of the better fixed receiver
    double mi_at_0 = 0.0;
    double mi_at_1 = 0.0;
    double mi_at_star = 0.0;
};

struct HistEntropy {
    double bits = 0.0;
    double std_err = 0.0;
    std::string warning;
};

// rho = 1 closed form: log2(1 + P|h|^2 / (sigma_a2 + sigma_cov2)). cfg.rho is
// ignored.
MiEstimate mi_cd_closed_form(const SystemConfig& cfg, const NoiseEnv& env);

// rho = 0 receiver, Monte-Carlo plug-in against the analytic output densities
// (EMG marginal, noncentral-chi-squared convolution conditional).
MiEstimate mi_pd_numeric(const SystemConfig& cfg, const NoiseEnv& env, const EstimatorConfig& est);

// Upper bound on the rho = 0 mutual information (rectifier noise dropped):
// 1/2 log2(1 + P|h|^2/(2 sigma_a2)) + 1/2 (log2(2 pi / e) - gamma log2 e).
MiEstimate mi_pd_upper_bound(const SystemConfig& cfg, const NoiseEnv& env);

// High-SNR closed-form approximation for rho in (0, 1):
//   log2(rho (P|h|^2 + sigma_a2) / (rho sigma_a2 + sigma_cov2)) + Upsilon/(2 ln 2),
//   Upsilon = exp_e1(a) - exp_e1(b),
//   a = rho sigma_rec2 / (2 (1-rho)^2 sigma_cov2 (P|h|^2 + sigma_a2)),
//   b = (rho sigma_a2 + sigma_cov2) sigma_rec2 / (2 (1-rho)^2 P|h|^2 sigma_a2 sigma_cov2).
MiEstimate mi_split_approx(const SystemConfig& cfg, const NoiseEnv& env);

// P -> infinity limit at fixed rho in (0, 1):
//   log2( P|h|^2 / (sqrt(sigma_a2 + sigma_cov2/rho) sqrt(sigma_a2)) ).
MiEstimate mi_split_asymptotic(const SystemConfig& cfg, const NoiseEnv& env);

// Monte-Carlo estimate of I(sqrt(P)|h|X; Y1, Y2) for rho in [0, 1].
//   Histogram: 3-D histogram joint entropy minus the plug-in conditional
//   entropy, conditioning reduced to |x| ~ sqrt(Exp(1)) by circular symmetry.
//   Plugin: E[log f(y|x) - log fhat(y)] with fhat a fresh-draw mixture of
//   inner_samples closed-form conditionals.
MiEstimate mi_split_mc(const SystemConfig& cfg, const NoiseEnv& env, const EstimatorConfig& est,
                       MiMethod method);

// High-SNR mutual-information gain limit: 1/2 log2(1 + sigma_cov2/sigma_a2).
double asymptotic_gain(const NoiseEnv& env);

// Common-random-number grid search over rho with near-1 and quadratic
// refinement; endpoints from the closed form (rho=1) and the PD estimator
// (rho=0).
GainReport gain(const SystemConfig& cfg_base, const NoiseEnv& env, const EstimatorConfig& est,
                double rho_grid_step);

// Plug-in histogram differential entropy (bits) of n d-dimensional points
// (row-major, d in {1,2,3}); bins span [mean - 5 sd, mean + 5 sd] per
// marginal, with the log cell volume and Miller-Madow occupancy corrections.
HistEntropy entropy_histogram(const std::vector<double>& data, int dim, int bins_per_dim);

}  // namespace splitrx
