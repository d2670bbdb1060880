#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace locirr {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Named sub-stream of a master seed. Streams with different labels (or
// indices) are decorrelated, and the mapping is fixed across runs.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index = 0)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(splitmix64(master ^ h) + index);
}

inline Rng make_rng(std::uint64_t master, std::string_view label, std::uint64_t index = 0)
{
    return Rng(derive_seed(master, label, index));
}

} // namespace locirr
