// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "splitrx/model.hpp"

namespace splitrx {

// Gauss-Hermite discretization order for the antenna-noise marginalization.
struct QuadratureSpec {
    int order_per_dim = 48;
    void validate() const;  // order within [4, 256]
};

// Nodes/weights for integral of exp(-t^2) f(t) dt. Computed once per order
// (Newton on the orthonormal recurrence) and cached process-wide.
class GaussHermite {
public:
    explicit GaussHermite(int order);
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& log_weights() const { return log_weights_; }
    static const GaussHermite& get(int order);

private:
    std::vector<double> nodes_;
    std::vector<double> log_weights_;
};

// Exponentially modified Gaussian density of the PD output under Gaussian
// input: exponential of mean P|h|^2 + sigma_a2 plus independent N(0, sigma_rec2).
double emg_pdf(double y2, double power, double h_mag, double sigma_a2, double sigma_rec2);
double log_emg_pdf(double y2, double power, double h_mag, double sigma_a2, double sigma_rec2);

// Noncentral chi-squared density (2 degrees of freedom, scale sigma_s2,
// noncentrality lambda), evaluated through the scaled Bessel function so the
// exponent never overflows. Returns 0 for r_n < 0.
double ncx2_pdf(double r_n, double lambda, double sigma_s2);
double log_ncx2_pdf(double r_n, double lambda, double sigma_s2);

// Convolution of the noncentral chi-squared density with N(0, sigma_n2):
// the PD-branch output density conditioned on the input magnitude. Adaptive
// composite Gauss-Legendre on the product's effective support; throws
// std::runtime_error with diagnostics if refinement fails to converge.
double rc_pdf(double r_c, double lambda, double sigma_s2, double sigma_n2);
double log_rc_pdf(double r_c, double lambda, double sigma_s2, double sigma_n2);

// Joint likelihood of (y1, y2) given both the symbol and the antenna draw:
// product of the complex-Gaussian CD factor and the real-Gaussian PD factor.
double cond_joint_pdf_given_xw(cplx y1, double y2, cplx x, cplx w, const SystemConfig& cfg,
                               const NoiseEnv& env);
double log_cond_joint_pdf_given_xw(cplx y1, double y2, cplx x, cplx w, const SystemConfig& cfg,
                                   const NoiseEnv& env);

// Joint likelihood of (y1, y2) given the symbol, marginalized over the
// antenna noise by tensor Gauss-Hermite with the substitution w = sigma_a t
// per component (so the weight matches the antenna-noise density).
double cond_joint_pdf_given_x(cplx y1, double y2, cplx x, const SystemConfig& cfg,
                              const NoiseEnv& env, const QuadratureSpec& quad);
double log_cond_joint_pdf_given_x(cplx y1, double y2, cplx x, const SystemConfig& cfg,
                                  const NoiseEnv& env, const QuadratureSpec& quad);

// Same conditional density through the exact algebraic reduction: completing
// the square in the two Gaussian factors collapses the double integral to a
// complex-Gaussian factor times a 1-D noncentral-chi-squared convolution.
// Used by the Monte-Carlo entropy loops; cross-checked against the
// Gauss-Hermite form in tests.
double log_cond_joint_pdf_given_x_reduced(cplx y1, double y2, cplx x, const SystemConfig& cfg,
                                          const NoiseEnv& env);

// True when doubling the Gauss-Hermite order moves the log-density by less
// than 1e-6 at this evaluation point.
bool quad_order_adequate(cplx y1, double y2, cplx x, const SystemConfig& cfg,
                         const NoiseEnv& env, const QuadratureSpec& quad);

// Closed-form likelihood of the low-complexity rule: the trivariate Gaussian
// of the residuals (T1r, T1i, T2) after dropping the quadratic antenna-noise
// term in the sqrt(P)-scaled power branch. y2_scaled is the scale_y2 output.
double lowcomplexity_likelihood(cplx y1, double y2_scaled, cplx x, const SystemConfig& cfg,
                                const NoiseEnv& env);
double log_lowcomplexity_likelihood(cplx y1, double y2_scaled, cplx x, const SystemConfig& cfg,
                                    const NoiseEnv& env);

}  // namespace splitrx
