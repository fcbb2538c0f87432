#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace telic {

/// Counter-based RNG (Philox4x32-10, Salmon et al. 2011).
///
/// Every draw is a pure function of (seed, stream, index), so Monte Carlo
/// trials and trajectories can run in any order -- or in parallel -- and
/// still reproduce the serial stream exactly. The stream id is typically a
/// trial or trajectory index; the block index advances along that stream.
namespace philox {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                          std::uint64_t index) {
    std::uint32_t c0 = static_cast<std::uint32_t>(stream);
    std::uint32_t c1 = static_cast<std::uint32_t>(stream >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(index);
    std::uint32_t c3 = static_cast<std::uint32_t>(index >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c2;
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        if (round < 9) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
    }
    return {c0, c1, c2, c3};
}

}  // namespace philox

/// Draw in [0, 1).
inline double counter_uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const auto b = philox::block(seed, stream, index);
    const std::uint64_t v = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
    return static_cast<double>(v >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on one Philox block. Uniforms are kept in
/// (0,1) so the logarithm is always finite.
inline double counter_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const auto b = philox::block(seed, stream, index);
    const std::uint64_t va = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
    const std::uint64_t vb = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
    const double u1 = (static_cast<double>(va >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = static_cast<double>(vb >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace telic
