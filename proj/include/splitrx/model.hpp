// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "splitrx/rng.hpp"

namespace splitrx {

using cplx = std::complex<double>;

// Antenna / conversion / rectifier noise variances defining an operating
// condition. The antenna noise enters before the power splitter and feeds
// both branches through the same draw; the two processing noises are added
// after the split.
struct NoiseEnv {
    double sigma_a2 = 1.0;    // antenna noise variance (complex, total)
    double sigma_cov2 = 1.0;  // CD conversion noise variance (complex, total)
    double sigma_rec2 = 1.0;  // PD rectifier noise variance (real)
    void validate() const;
};

// Transmit power, channel magnitude, splitting ratio, rectifier efficiency.
// The channel phase is removed by the baseband rotation and is not modeled;
// eta is carried but all numerics default to eta = 1 (the pre-normalization
// signals are an invertible deterministic transform of the equivalent ones).
struct SystemConfig {
    double power = 1.0;
    double h_mag = 1.0;
    double rho = 0.5;
    double eta = 1.0;
    void validate() const;
};

// One received observation: coherent-branch complex output + power-branch
// real output.
struct RxSample {
    cplx y1{0.0, 0.0};
    double y2 = 0.0;
};

enum class ConstellationFamily { Qam, Psk, Apsk };

struct Constellation {
    std::vector<cplx> points;
    std::string label;
    ConstellationFamily family = ConstellationFamily::Qam;
    void validate() const;  // non-empty, distinct points, unit average energy
};

// Draws one channel observation
//   y1 = sqrt(rho) (sqrt(P) |h| x + w) + z,   y2 = (1-rho) |sqrt(P) |h| x + w|^2 + n
// with w ~ CN(0, sigma_a2), z ~ CN(0, sigma_cov2), n ~ N(0, sigma_rec2); the
// same antenna draw w feeds both branches. Draw order is fixed (w, z, n).
RxSample sample_channel(cplx x, const SystemConfig& cfg, const NoiseEnv& env, Philox& rng);

// Divides the power branch by sqrt(P) (the low-complexity detector's input
// scaling); the coherent branch is untouched.
RxSample scale_y2(const RxSample& s, double power);

// Circular complex Gaussian input, zero mean, unit total variance.
cplx sample_gaussian_input(Philox& rng);

Constellation make_qam(int m);
Constellation make_psk(int m);
Constellation make_apsk(const std::vector<int>& ring_counts,
                        const std::vector<double>& ring_radii,
                        const std::vector<double>& ring_phases);

// Named presets: qam16, qam64, psk8, apsk32-3ring, apsk32-4ring. The APSK
// ring radii/phases are documented presets (the point counts follow the
// DVB-S2X designs; radii are this toolkit's choice).
Constellation preset_constellation(const std::string& name);

// CSV schema: header "index,re,im", one row per point.
void write_constellation_csv(const Constellation& c, std::ostream& os);
Constellation read_constellation_csv(std::istream& is, const std::string& label);

}  // namespace splitrx
