#pragma once

#include <cstdint>
#include <random>

namespace shrinkrisk {

// splitmix64 finalizer; used to decorrelate (seed, stream) pairs before
// feeding them to the mersenne twister.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic per-stream generator. Distinct streams from the same base
// seed are independent for practical purposes.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    const std::uint64_t s = mix64(mix64(seed) ^ mix64(stream + 0x51ed270b7a03f251ULL));
    return std::mt19937_64(s);
}

}  // namespace shrinkrisk
