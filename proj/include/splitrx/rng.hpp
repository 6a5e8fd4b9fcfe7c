// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace splitrx {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Philox4x32-10 counter-based generator. A (seed, stream) pair selects an
// independent sequence, so Monte-Carlo work split into chunks draws from
// stream = chunk id and gets the same numbers no matter which worker runs
// the chunk.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed;
        const std::uint64_t k0 = splitmix64(s);
        s ^= 0x9E3779B97F4A7C15ULL * (stream + 0x632BE59BD9B4E019ULL);
        const std::uint64_t k1 = splitmix64(s);
        key_ = {static_cast<std::uint32_t>(k0), static_cast<std::uint32_t>(k0 >> 32)};
        ctr_ = {static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k1 >> 32),
                static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        pos_ = 4;
        has_spare_ = false;
        spare_ = 0.0;
    }

    std::uint32_t next_u32() {
        if (pos_ >= 4) refill();
        return out_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe under log().
    double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the spare is cached, so draws come in
    // a fixed order for a given stream.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Circularly symmetric complex Gaussian with unit total variance.
    std::complex<double> circular_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }

    // Unbiased index in [0, n) via 128-bit multiply-shift.
    std::uint64_t index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    static void round(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
        const std::uint64_t p0 = 0xD2511F53ULL * x[0];
        const std::uint64_t p1 = 0xCD9E8D57ULL * x[2];
        x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1],
             static_cast<std::uint32_t>(p0)};
    }

    void refill() {
        std::array<std::uint32_t, 4> x = ctr_;
        std::array<std::uint32_t, 2> k = key_;
        for (int r = 0; r < 10; ++r) {
            round(x, k);
            k[0] += 0x9E3779B9U;
            k[1] += 0xBB67AE85U;
        }
        out_ = x;
        pos_ = 0;
        for (int i = 0; i < 4; ++i) {
            if (++ctr_[i] != 0) break;
        }
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> ctr_;
    std::array<std::uint32_t, 4> out_{};
    int pos_;
    double spare_;
    bool has_spare_;
};

}  // namespace splitrx
