#pragma once

#include <cstdint>

namespace fnmix {

// Counter-based randomness: a stateless hash of (seed, replicate, step).
// Replicates can be generated in any order or in parallel and still produce
// bit-identical streams.

inline uint64_t mix64(uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

inline uint64_t counter_hash(uint64_t seed, uint64_t replicate, uint64_t step) {
    uint64_t h = mix64(seed ^ 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (replicate + 0xbf58476d1ce4e5b9ULL));
    h = mix64(h ^ (step + 0x94d049bb133111ebULL));
    return h;
}

// Uniform double in [0, 1) with 53 random bits.
inline double counter_uniform(uint64_t seed, uint64_t replicate, uint64_t step) {
    return static_cast<double>(counter_hash(seed, replicate, step) >> 11) * 0x1.0p-53;
}

}  // namespace fnmix
