// SPDX-License-Identifier: Apache-2.0
#include "splitrx/model.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace splitrx {

void NoiseEnv::validate() const {
    if (!(sigma_a2 > 0.0) || !std::isfinite(sigma_a2) ||
        !(sigma_cov2 > 0.0) || !std::isfinite(sigma_cov2) ||
        !(sigma_rec2 > 0.0) || !std::isfinite(sigma_rec2)) {
        throw std::invalid_argument("NoiseEnv: all variances must be finite and > 0");
    }
}

void SystemConfig::validate() const {
    if (!(power >= 0.0) || !std::isfinite(power)) {
        throw std::invalid_argument("SystemConfig: power must be finite and >= 0");
    }
    if (!(h_mag > 0.0) || !std::isfinite(h_mag)) {
        throw std::invalid_argument("SystemConfig: h_mag must be finite and > 0");
    }
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("SystemConfig: rho must lie in [0, 1]");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("SystemConfig: eta must lie in (0, 1]");
    }
}

void Constellation::validate() const {
    if (points.empty()) throw std::invalid_argument("Constellation: empty point set");
    double energy = 0.0;
    for (const auto& p : points) {
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
            throw std::invalid_argument("Constellation: non-finite point");
        }
        energy += std::norm(p);
    }
    energy /= static_cast<double>(points.size());
    if (std::abs(energy - 1.0) > 1e-12) {
        throw std::invalid_argument("Constellation: average energy must be 1 (got " +
                                    std::to_string(energy) + ")");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (std::abs(points[i] - points[j]) < 1e-12) {
                throw std::invalid_argument("Constellation: duplicate points");
            }
        }
    }
}

RxSample sample_channel(cplx x, const SystemConfig& cfg, const NoiseEnv& env, Philox& rng) {
    cfg.validate();
    env.validate();
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
        throw std::invalid_argument("sample_channel: non-finite input symbol");
    }
    const double wa = std::sqrt(env.sigma_a2 / 2.0);
    const double wz = std::sqrt(env.sigma_cov2 / 2.0);
    const cplx w{wa * rng.gaussian(), wa * rng.gaussian()};
    const cplx z{wz * rng.gaussian(), wz * rng.gaussian()};
    const double n = std::sqrt(env.sigma_rec2) * rng.gaussian();

    const cplx s = std::sqrt(cfg.power) * cfg.h_mag * x + w;
    RxSample out;
    out.y1 = std::sqrt(cfg.rho) * s + z;
    out.y2 = (1.0 - cfg.rho) * std::norm(s) + n;
    return out;
}

RxSample scale_y2(const RxSample& s, double power) {
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw std::domain_error("scale_y2: power must be finite and > 0");
    }
    return {s.y1, s.y2 / std::sqrt(power)};
}

cplx sample_gaussian_input(Philox& rng) { return rng.circular_gaussian(); }

namespace {

Constellation normalized(std::vector<cplx> pts, std::string label, ConstellationFamily fam) {
    double energy = 0.0;
    for (const auto& p : pts) energy += std::norm(p);
    energy /= static_cast<double>(pts.size());
    const double scale = 1.0 / std::sqrt(energy);
    for (auto& p : pts) p *= scale;
    Constellation c{std::move(pts), std::move(label), fam};
    c.validate();
    return c;
}

}  // namespace

Constellation make_qam(int m) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    if (m < 4 || side * side != m) {
        throw std::invalid_argument("make_qam: M must be a perfect square >= 4");
    }
    std::vector<cplx> pts;
    pts.reserve(m);
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            const double re = 2.0 * col - (side - 1);
            const double im = (side - 1) - 2.0 * row;
            pts.emplace_back(re, im);
        }
    }
    return normalized(std::move(pts), "qam" + std::to_string(m), ConstellationFamily::Qam);
}

Constellation make_psk(int m) {
    if (m < 2) throw std::invalid_argument("make_psk: M must be >= 2");
    std::vector<cplx> pts;
    pts.reserve(m);
    for (int k = 0; k < m; ++k) {
        const double a = 2.0 * M_PI * k / m;
        pts.emplace_back(std::cos(a), std::sin(a));
    }
    return normalized(std::move(pts), "psk" + std::to_string(m), ConstellationFamily::Psk);
}

Constellation make_apsk(const std::vector<int>& ring_counts,
                        const std::vector<double>& ring_radii,
                        const std::vector<double>& ring_phases) {
    if (ring_counts.empty() || ring_counts.size() != ring_radii.size() ||
        ring_counts.size() != ring_phases.size()) {
        throw std::invalid_argument("make_apsk: count/radius/phase lists must be equal length");
    }
    double prev = 0.0;
    for (std::size_t r = 0; r < ring_radii.size(); ++r) {
        if (ring_counts[r] < 1) throw std::invalid_argument("make_apsk: ring counts must be >= 1");
        if (!(ring_radii[r] > prev)) {
            throw std::invalid_argument("make_apsk: radii must be positive and strictly increasing");
        }
        prev = ring_radii[r];
    }
    std::vector<cplx> pts;
    int total = 0;
    for (int c : ring_counts) total += c;
    pts.reserve(total);
    for (std::size_t r = 0; r < ring_counts.size(); ++r) {
        for (int k = 0; k < ring_counts[r]; ++k) {
            const double a = 2.0 * M_PI * k / ring_counts[r] + ring_phases[r];
            pts.emplace_back(ring_radii[r] * std::cos(a), ring_radii[r] * std::sin(a));
        }
    }
    return normalized(std::move(pts), "apsk" + std::to_string(total), ConstellationFamily::Apsk);
}

Constellation preset_constellation(const std::string& name) {
    if (name == "qam16") return make_qam(16);
    if (name == "qam64") return make_qam(64);
    if (name == "psk8") return make_psk(8);
    if (name == "apsk32-3ring") {
        auto c = make_apsk({4, 12, 16}, {1.0, 2.84, 5.27}, {M_PI / 4, M_PI / 12, 0.0});
        c.label = name;
        return c;
    }
    if (name == "apsk32-4ring") {
        auto c = make_apsk({4, 8, 4, 16}, {1.0, 2.40, 2.80, 5.20},
                           {M_PI / 4, M_PI / 8, 0.0, M_PI / 16});
        c.label = name;
        return c;
    }
    throw std::invalid_argument("unknown constellation preset: " + name);
}

void write_constellation_csv(const Constellation& c, std::ostream& os) {
    os << "index,re,im\n";
    char buf[80];
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i, c.points[i].real(),
                      c.points[i].imag());
        os << buf;
    }
}

Constellation read_constellation_csv(std::istream& is, const std::string& label) {
    std::string line;
    std::vector<cplx> pts;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // expect "index,re,im"
            header_seen = true;
            if (line.find("re") != std::string::npos) continue;
        }
        std::istringstream row(line);
        std::string field;
        if (!std::getline(row, field, ',')) continue;
        double re = 0.0, im = 0.0;
        if (!std::getline(row, field, ',')) {
            throw std::invalid_argument("constellation csv: missing re column");
        }
        re = std::stod(field);
        if (!std::getline(row, field, ',')) {
            throw std::invalid_argument("constellation csv: missing im column");
        }
        im = std::stod(field);
        pts.emplace_back(re, im);
    }
    if (pts.empty()) throw std::invalid_argument("constellation csv: no points");
    Constellation c{std::move(pts), label, ConstellationFamily::Apsk};
    c.validate();
    return c;
}

}  // namespace splitrx
