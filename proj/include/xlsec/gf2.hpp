#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xlsec/bits.hpp"
#include "xlsec/errors.hpp"

namespace xlsec {

// Square binary matrix, n <= 32. Rows are stored as bitmasks in the same
// MSB-first convention as symbols: integer bit (n-1-j) of rows[i] is entry
// (i, j). Vectors multiply from the left (row vector times matrix), so
// out bit j = XOR over i of u_i * M[i][j].
struct GF2Matrix {
    std::size_t n = 0;
    std::vector<std::uint32_t> rows;

    bool operator==(const GF2Matrix&) const = default;
};

inline GF2Matrix gf2_zero(std::size_t n) {
    if (n == 0 || n > 32) throw value_error("gf2_zero: size must be in [1, 32]");
    return GF2Matrix{n, std::vector<std::uint32_t>(n, 0)};
}

inline GF2Matrix gf2_identity(std::size_t n) {
    GF2Matrix m = gf2_zero(n);
    for (std::size_t i = 0; i < n; ++i) m.rows[i] = 1u << (n - 1 - i);
    return m;
}

// Builds a matrix from binary-string rows ("11000000", ...), MSB first.
inline GF2Matrix gf2_from_rows(const std::vector<std::string>& rows) {
    if (rows.empty() || rows.size() > 32) throw value_error("gf2_from_rows: need 1..32 rows");
    GF2Matrix m;
    m.n = rows.size();
    for (const auto& r : rows) {
        Bits b = bits_from_string(r);
        if (b.size() != m.n)
            throw value_error("gf2_from_rows: row width " + std::to_string(b.size()) +
                              " does not match row count " + std::to_string(m.n));
        m.rows.push_back(static_cast<std::uint32_t>(uint_from_bits(b)));
    }
    return m;
}

// u * M for a row vector packed MSB-first into an integer.
inline std::uint32_t gf2_mul_vec(const GF2Matrix& m, std::uint32_t u) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < m.n; ++i)
        if ((u >> (m.n - 1 - i)) & 1u) out ^= m.rows[i];
    return out;
}

// A * B, compatible with row-vector multiplication: (u*A)*B = u*(A*B).
inline GF2Matrix gf2_mul(const GF2Matrix& a, const GF2Matrix& b) {
    if (a.n != b.n) throw value_error("gf2_mul: size mismatch");
    GF2Matrix c = gf2_zero(a.n);
    for (std::size_t i = 0; i < a.n; ++i) c.rows[i] = gf2_mul_vec(b, a.rows[i]);
    return c;
}

// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<GF2Matrix> gf2_try_inverse(const GF2Matrix& a) {
    const std::size_t n = a.n;
    std::vector<std::uint32_t> m = a.rows;
    GF2Matrix inv = gf2_identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::uint32_t colmask = 1u << (n - 1 - col);
        std::size_t pivot = col;
        while (pivot < n && !(m[pivot] & colmask)) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(inv.rows[pivot], inv.rows[col]);
        for (std::size_t r = 0; r < n; ++r)
            if (r != col && (m[r] & colmask)) {
                m[r] ^= m[col];
                inv.rows[r] ^= inv.rows[col];
            }
    }
    return inv;
}

inline bool gf2_invertible(const GF2Matrix& a) { return gf2_try_inverse(a).has_value(); }

} // namespace xlsec
