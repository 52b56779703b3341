#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "xlsec/errors.hpp"
#include "xlsec/rng.hpp"

namespace xlsec {

using ChipVector = std::vector<std::int8_t>; // entries are +1 / -1

// Sylvester-type Hadamard matrix: rows are mutually orthogonal +-1 signature
// vectors, H * H^T = order * I, first row and column all +1.
struct HadamardMatrix {
    std::size_t order = 0;
    std::vector<std::int8_t> entries; // row-major

    std::int8_t at(std::size_t r, std::size_t c) const { return entries[r * order + c]; }
};

// H_{2^t} by doubling: H_{2n} = [[H_n, H_n], [H_n, -H_n]], H_1 = [+1].
// Capped at t = 10; larger matrices have no use at this scale.
inline HadamardMatrix sylvester_hadamard(unsigned t) {
    if (t > 10) throw value_error("sylvester_hadamard: t must be <= 10");
    const std::size_t n = std::size_t(1) << t;
    HadamardMatrix h;
    h.order = n;
    h.entries.assign(n * n, +1);
    for (std::size_t block = 1; block < n; block *= 2)
        for (std::size_t r = 0; r < block; ++r)
            for (std::size_t c = 0; c < block; ++c) {
                const std::int8_t v = h.entries[r * n + c];
                h.entries[r * n + (c + block)] = v;
                h.entries[(r + block) * n + c] = v;
                h.entries[(r + block) * n + (c + block)] = static_cast<std::int8_t>(-v);
            }
    return h;
}

// Maps a signed byte onto its signature row: value v rides row v + 128.
// Requires the order-256 matrix so every value has a row.
inline ChipVector modulate_symbol(const HadamardMatrix& h, int value) {
    if (h.order != 256) throw value_error("modulate_symbol: requires the order-256 matrix");
    if (value < -128 || value > 127)
        throw value_error("modulate_symbol: value " + std::to_string(value) + " outside [-128, 127]");
    const std::size_t row = static_cast<std::size_t>(value + 128);
    return ChipVector(h.entries.begin() + row * h.order, h.entries.begin() + (row + 1) * h.order);
}

// Matched-filter reception: correlate against every row, take the argmax,
// ties to the lowest row index. Chip length must equal the order.
inline int demodulate_symbol(const HadamardMatrix& h, const ChipVector& chips) {
    if (chips.size() != h.order)
        throw value_error("demodulate_symbol: got " + std::to_string(chips.size()) +
                          " chips, expected " + std::to_string(h.order));
    std::size_t best_row = 0;
    long best = std::numeric_limits<long>::min();
    for (std::size_t r = 0; r < h.order; ++r) {
        long corr = 0;
        for (std::size_t c = 0; c < h.order; ++c)
            corr += static_cast<long>(h.entries[r * h.order + c]) * chips[c];
        if (corr > best) { best = corr; best_row = r; }
    }
    return static_cast<int>(best_row) - 128;
}

// Binary symmetric channel. Each element flips independently with probability
// pe. The generator and the flip rule are pinned (raw mt19937_64 draws
// compared against floor(pe * 2^64)) so output is byte-identical across
// platforms and runs for a given seed.
class ChannelModel {
public:
    ChannelModel(double pe, std::uint64_t seed) : pe_(pe), rng_(seed) {
        if (!(pe >= 0.0 && pe <= 1.0))
            throw value_error("ChannelModel: pe must be in [0, 1]");
        if (pe_ <= 0.0) threshold_ = 0;
        else if (pe_ >= 1.0) threshold_ = ~static_cast<unsigned __int128>(0);
        else threshold_ = static_cast<unsigned __int128>(
                 pe_ * 18446744073709551616.0L); // 2^64 as long double
    }

    double pe() const { return pe_; }

    bool next_flip() {
        if (threshold_ == 0) { rng_(); return false; }
        return static_cast<unsigned __int128>(rng_()) < threshold_;
    }

    // Flips 0/1 bits.
    template <typename Seq>
    Seq transmit_bits(Seq bits) {
        for (auto& b : bits)
            if (next_flip()) b = static_cast<typename Seq::value_type>(b ^ 1);
        return bits;
    }

    // Flips +-1 chips.
    ChipVector transmit_chips(ChipVector chips) {
        for (auto& c : chips)
            if (next_flip()) c = static_cast<std::int8_t>(-c);
        return chips;
    }

private:
    double pe_;
    Rng rng_;
    unsigned __int128 threshold_ = 0;
};

} // namespace xlsec
