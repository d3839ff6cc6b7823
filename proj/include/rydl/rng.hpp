#pragma once

#include <cstdint>
#include <random>

namespace rydl {

// splitmix64; used to derive independent child seeds from (master, index)
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// uniform double in [0,1) built from raw bits; bit-identical across platforms
inline double uniform01(std::mt19937_64& g) {
    return double(g() >> 11) * 0x1.0p-53;
}

}  // namespace rydl
