#pragma once

#include <cstdint>
#include <random>

namespace essig {

/// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent generator for (master seed, stream index). The engine is a
/// 64-bit Mersenne Twister seeded with splitmix64(seed ^ splitmix64(stream)),
/// so a master seed plus a batch index fully determine every draw.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

}  // namespace essig
