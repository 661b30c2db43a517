#pragma once

#include <cstdint>
#include <random>

namespace d2dmotif {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Substream scheme: a generator is identified by (master seed, stream tag,
// index). The seed is splitmix64 applied three times, folding in one
// component at a time, so distinct (tag, index) pairs under one master seed
// give unrelated generators and trial i can be replayed without running
// trials 0..i-1.
enum class Stream : std::uint64_t {
    parents = 1,
    offsets = 2,
    grouping = 3,
    fading = 4,
    baseline = 5,
    oracle = 6,
    correlated = 7,
};

inline std::uint64_t substream_seed(std::uint64_t master, Stream tag, std::uint64_t index) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ static_cast<std::uint64_t>(tag));
    return splitmix64(s ^ index);
}

inline Rng make_rng(std::uint64_t master, Stream tag, std::uint64_t index = 0) {
    return Rng(substream_seed(master, tag, index));
}

}  // namespace d2dmotif
