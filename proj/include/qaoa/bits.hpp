#ifndef QAOA_BITS_HPP
#define QAOA_BITS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qaoa {

// One vertex-side / qubit-value per entry, each 0 or 1. Entry j is qubit j,
// which is bit j (least significant = qubit 0) of a basis-state index.
using Bits = std::vector<std::uint8_t>;

inline std::uint64_t bits_to_index(const Bits& bits) {
    std::uint64_t x = 0;
    for (std::size_t j = 0; j < bits.size(); ++j)
        x |= static_cast<std::uint64_t>(bits[j] & 1u) << j;
    return x;
}

inline Bits index_to_bits(std::uint64_t x, int n) {
    Bits bits(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) bits[static_cast<std::size_t>(j)] = (x >> j) & 1u;
    return bits;
}

// Text form reads left to right: character j is qubit/vertex j.
std::string format_bits(const Bits& bits);
Bits parse_bits(const std::string& text);

inline Bits complement(Bits bits) {
    for (auto& b : bits) b ^= 1u;
    return bits;
}

} // namespace qaoa

#endif
