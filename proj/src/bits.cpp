#include "qaoa/bits.hpp"

#include <stdexcept>

namespace qaoa {

std::string format_bits(const Bits& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

Bits parse_bits(const std::string& text) {
    Bits bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument("bitstring may contain only 0 and 1");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return bits;
}

} // namespace qaoa
