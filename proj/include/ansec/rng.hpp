#ifndef ANSEC_RNG_HPP
#define ANSEC_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "ansec/errors.hpp"

namespace ansec {

/// Seed plus the number of logical substreams a simulation may partition into.
/// Every variate is a pure function of (seed, stream index, draw index), so
/// results never depend on worker count or scheduling.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_count = 1;
};

inline void validate(const RngSpec& spec) {
    if (spec.stream_count < 1) throw invalid_parameter("stream_count must be >= 1");
}

// Philox4x32-10 counter-based block cipher (Salmon et al.). 128-bit counter,
// 64-bit key, 10 rounds; returns 128 random bits per invocation.
struct PhiloxBlock {
    std::uint32_t v[4];
};

inline PhiloxBlock philox4x32_10(PhiloxBlock ctr, std::uint32_t key0, std::uint32_t key1) {
    constexpr std::uint32_t mult0 = 0xD2511F53u;
    constexpr std::uint32_t mult1 = 0xCD9E8D57u;
    constexpr std::uint32_t weyl0 = 0x9E3779B9u;
    constexpr std::uint32_t weyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(mult0) * ctr.v[0];
        const std::uint64_t p1 = std::uint64_t(mult1) * ctr.v[2];
        const PhiloxBlock next = {{
            std::uint32_t(p1 >> 32) ^ ctr.v[1] ^ key0,
            std::uint32_t(p1),
            std::uint32_t(p0 >> 32) ^ ctr.v[3] ^ key1,
            std::uint32_t(p0),
        }};
        ctr = next;
        key0 += weyl0;
        key1 += weyl1;
    }
    return ctr;
}

/// One logical substream of an RngSpec. Stateless apart from the block
/// counter: constructing a stream is free, so parallel kernels make one per
/// work item (e.g. per fading block).
class RandomStream {
public:
    RandomStream(const RngSpec& spec, std::uint64_t stream)
        : key0_(std::uint32_t(spec.seed)),
          key1_(std::uint32_t(spec.seed >> 32)),
          stream_(stream) {}

    // Next 64 random bits. Each call consumes exactly half a Philox block.
    std::uint64_t bits() {
        if (avail_ == 0) {
            const PhiloxBlock ctr = {{std::uint32_t(block_), std::uint32_t(block_ >> 32),
                                      std::uint32_t(stream_), std::uint32_t(stream_ >> 32)}};
            buf_ = philox4x32_10(ctr, key0_, key1_);
            ++block_;
            avail_ = 2;
        }
        const int i = 2 * (2 - avail_);
        --avail_;
        return std::uint64_t(buf_.v[i]) | (std::uint64_t(buf_.v[i + 1]) << 32);
    }

    // Uniform on (0, 1]: never 0, so -log(u) is always finite.
    double uniform() { return 1.0 - double(bits() >> 11) * 0x1.0p-53; }

    // Uniform on [0, 1).
    double uniform_co() { return double(bits() >> 11) * 0x1.0p-53; }

    // Inverse-CDF exponential with the given mean.
    double exponential(double mean) {
        if (!(mean > 0.0)) throw invalid_parameter("exponential mean must be > 0");
        return -mean * std::log(uniform());
    }

    // Circularly symmetric complex Gaussian CN(0, variance), via Box-Muller.
    std::complex<double> complex_gaussian(double variance) {
        if (!(variance >= 0.0)) throw invalid_parameter("variance must be >= 0");
        if (variance == 0.0) {
            bits();  // keep the draw-index accounting uniform
            bits();
            return {0.0, 0.0};
        }
        const double r = std::sqrt(-std::log(uniform()) * variance);
        const double phase = 2.0 * std::numbers::pi * uniform_co();
        return {r * std::cos(phase), r * std::sin(phase)};
    }

private:
    std::uint32_t key0_, key1_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    PhiloxBlock buf_{};
    int avail_ = 0;
};

} // namespace ansec

#endif
