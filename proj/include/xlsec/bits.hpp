#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xlsec/errors.hpp"

namespace xlsec {

// Bit sequence, one element per bit, each 0 or 1, MSB first within any
// symbol that gets packed into or out of an integer.
using Bits = std::vector<std::uint8_t>;

// Parses a binary string; spaces and underscores are ignored so grouped
// strings like "0000 1111" stay readable in fixtures and tests.
inline Bits bits_from_string(const std::string& s) {
    Bits out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == ' ' || c == '_') continue;
        if (c == '0') out.push_back(0);
        else if (c == '1') out.push_back(1);
        else throw format_error("bits_from_string: unexpected character '" + std::string(1, c) + "'");
    }
    return out;
}

// Renders bits, optionally grouped with a space every `group` bits.
inline std::string bits_to_string(const Bits& b, std::size_t group = 0) {
    std::string out;
    out.reserve(b.size() + (group ? b.size() / group : 0));
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (group && i && i % group == 0) out.push_back(' ');
        out.push_back(b[i] ? '1' : '0');
    }
    return out;
}

// Unpacks the low `width` bits of value, MSB first.
inline Bits bits_from_uint(std::uint64_t value, std::size_t width) {
    if (width > 64) throw value_error("bits_from_uint: width > 64");
    Bits out(width);
    for (std::size_t i = 0; i < width; ++i)
        out[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
    return out;
}

// Packs up to 64 bits, MSB first.
inline std::uint64_t uint_from_bits(const Bits& b, std::size_t pos, std::size_t width) {
    if (width > 64) throw value_error("uint_from_bits: width > 64");
    if (pos + width > b.size()) throw value_error("uint_from_bits: out of range");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v = (v << 1) | (b[pos + i] & 1u);
    return v;
}

inline std::uint64_t uint_from_bits(const Bits& b) { return uint_from_bits(b, 0, b.size()); }

inline void append_bits(Bits& dst, const Bits& src) { dst.insert(dst.end(), src.begin(), src.end()); }

inline std::size_t hamming_distance(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) throw value_error("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] ^ b[i]) & 1u;
    return d;
}

} // namespace xlsec
