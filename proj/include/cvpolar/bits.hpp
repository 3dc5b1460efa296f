#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvpolar {

// Bit vectors are stored one bit per byte (values 0/1), index 0 first.
using BitVec = std::vector<std::uint8_t>;

inline bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(std::size_t v) {
    if (!is_power_of_two(v)) throw std::invalid_argument("log2_exact: not a power of two");
    int m = 0;
    while ((std::size_t{1} << m) < v) ++m;
    return m;
}

// Hex digit j encodes bits 4j..4j+3, with bit 4j as the digit's most
// significant bit. A final partial group is padded with zeros at the low end.
inline std::string to_hex(const BitVec& bits) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t j = 0; j < bits.size(); j += 4) {
        unsigned v = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            unsigned bit = (j + b < bits.size()) ? (bits[j + b] & 1u) : 0u;
            v = (v << 1) | bit;
        }
        out.push_back(digits[v]);
    }
    return out;
}

inline BitVec from_hex(const std::string& hex, std::size_t nbits) {
    if (hex.size() != (nbits + 3) / 4)
        throw std::invalid_argument("from_hex: expected " + std::to_string((nbits + 3) / 4) +
                                    " hex digits for " + std::to_string(nbits) + " bits, got " +
                                    std::to_string(hex.size()));
    BitVec bits(nbits, 0);
    for (std::size_t j = 0; j < hex.size(); ++j) {
        char c = hex[j];
        unsigned v;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
        else throw std::invalid_argument(std::string("from_hex: invalid hex digit '") + c +
                                         "' at position " + std::to_string(j));
        for (std::size_t b = 0; b < 4; ++b) {
            unsigned bit = (v >> (3 - b)) & 1u;
            if (j * 4 + b < nbits) {
                bits[j * 4 + b] = static_cast<std::uint8_t>(bit);
            } else if (bit) {
                throw std::invalid_argument("from_hex: nonzero padding bits in final digit");
            }
        }
    }
    return bits;
}

} // namespace cvpolar
