#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace clonecert {

// splitmix64 step; the usual finalizer, good enough to decorrelate streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d4a2a9029ca5e7ULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Every random draw in the library flows from one root seed through named
// streams: derive_seed(root, "graph", retry_index) and so on.  Identical
// (root, tag, index) always yields the identical stream.
inline std::uint64_t derive_seed(std::uint64_t root, const std::string& tag,
                                 std::uint64_t index = 0) {
    std::uint64_t state = root ^ fnv1a(tag);
    splitmix64(state);
    state ^= 0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL;
    return splitmix64(state);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

} // namespace clonecert
