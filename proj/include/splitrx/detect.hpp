// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "splitrx/densities.hpp"
#include "splitrx/model.hpp"

namespace splitrx {

enum class DetectorVariant { MlQuadrature, LowComplexity, NearestNeighborCd };
const char* to_string(DetectorVariant v);

struct DetectorKind {
    DetectorVariant variant = DetectorVariant::LowComplexity;
    QuadratureSpec quad{48};  // used by MlQuadrature only
};

struct SerResult {
    double ser = 0.0;
    std::int64_t n_symbols = 0;
    std::int64_t n_errors = 0;
    double ci95 = 0.0;  // binomial 95% half-width
    double rho = 0.0;
    double power = 0.0;
};

struct SerSweep {
    double rho_star = 0.0;
    double ser_min = 0.0;
    std::vector<SerResult> curve;  // one entry per grid point, grid order
};

// Maximum-likelihood decision: argmax over constellation indices of the
// Gauss-Hermite conditional log-density; ties go to the lowest index.
int detect_ml(const RxSample& rx, const Constellation& c, const SystemConfig& cfg,
              const NoiseEnv& env, const QuadratureSpec& quad);

// Low-complexity decision on the sqrt(P)-scaled observation (see scale_y2).
int detect_fast(const RxSample& rx_scaled, const Constellation& c, const SystemConfig& cfg,
                const NoiseEnv& env);

// Coherent-branch nearest neighbour (the rho = 1 baseline).
int detect_nn_cd(const RxSample& rx, const Constellation& c, const SystemConfig& cfg,
                 const NoiseEnv& env);

// Uniform symbol draws, channel sampling, detection, error counting; the
// trial stream is chunked on the seed so results are worker-count
// independent.
SerResult ser_monte_carlo(const Constellation& c, const SystemConfig& cfg, const NoiseEnv& env,
                          const DetectorKind& det, std::int64_t n, std::uint64_t seed);

// Common-random-number SER over an explicit rho grid (same seed at every
// point); ties on the minimum go to the larger rho.
SerSweep ser_optimal_rho(const Constellation& c, const SystemConfig& cfg_base,
                         const NoiseEnv& env, const DetectorKind& det, std::int64_t n,
                         const std::vector<double>& rho_grid, std::uint64_t seed);

}  // namespace splitrx
