#pragma once

#include <cstdint>
#include <string_view>

namespace neardup::detail {

// Seed constants are published so shingle sets, band keys, and corpus
// digests are stable across runs and machines.
inline constexpr std::uint64_t kShingleHashSeed = 0x4E45415244555031ull;  // "NEARDUP1"
inline constexpr std::uint64_t kBandKeySeed = 0x4E45415244555032ull;      // "NEARDUP2"
inline constexpr std::uint64_t kDigestSeed = 0x4E45415244555033ull;       // "NEARDUP3"

// SplitMix64 finalizer; full-avalanche bijection on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// Seeded FNV-1a over raw bytes, finalized with mix64 for avalanche.
inline std::uint64_t hash_bytes(std::string_view bytes, std::uint64_t seed) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull ^ seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return mix64(h);
}

// Incremental variant used when hashing several fields into one digest.
inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
    return mix64(h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
}

}  // namespace neardup::detail
