#ifndef QAOA_SEEDING_HPP
#define QAOA_SEEDING_HPP

#include <cstdint>

namespace qaoa {

// Splittable seed derivation. Every randomized stage takes a 64-bit seed and
// children are derived as child_seed(parent, stream, index), so any single
// piece of work (one graph, one cut, one sweep cell) can be reproduced in
// isolation. Streams keep sibling purposes (graph generation vs cut drawing
// vs per-theta optimization) from colliding.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace seed_stream {
inline constexpr std::uint64_t per_n = 1;
inline constexpr std::uint64_t graph = 2;
inline constexpr std::uint64_t cut = 3;
inline constexpr std::uint64_t theta = 4;
inline constexpr std::uint64_t bm_init = 5;
inline constexpr std::uint64_t rounding = 6;
} // namespace seed_stream

inline std::uint64_t child_seed(std::uint64_t parent, std::uint64_t stream, std::uint64_t index = 0) {
    return splitmix64(splitmix64(parent ^ (stream * 0xD6E8FEB86659FD93ull)) + index);
}

} // namespace qaoa

#endif
