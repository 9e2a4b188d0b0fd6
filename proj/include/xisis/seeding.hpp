#pragma once

#include <cstdint>
#include <random>

namespace xisis {

/// Purpose tags that keep the random streams of one replication apart.
enum class Stream : std::uint64_t {
    design = 1,
    noise = 2,
    ties = 3,
    folds = 4,
    fixture = 5,
};

/// SplitMix64 finalizer; a bijection on 64-bit words with good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based seed split: the child seed depends only on the parent seed
/// and the counter, never on how many seeds were drawn before it.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t counter) noexcept {
    return mix64(mix64(parent) ^ mix64(counter + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t counter,
                                    Stream tag) noexcept {
    return derive_seed(derive_seed(parent, counter), static_cast<std::uint64_t>(tag));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

}  // namespace xisis
