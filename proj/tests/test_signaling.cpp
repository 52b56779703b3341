#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "xlsec/bits.hpp"
#include "xlsec/signaling.hpp"

using namespace xlsec;

TEST_CASE("signature rows are orthogonal") {
    for (unsigned t = 0; t <= 8; ++t) {
        const HadamardMatrix h = sylvester_hadamard(t);
        const std::size_t n = h.order;
        REQUIRE(n == (std::size_t(1) << t));
        REQUIRE(h.entries.size() == n * n);
        for (std::size_t r1 = 0; r1 < n; ++r1)
            for (std::size_t r2 = r1; r2 < n; ++r2) {
                long dot = 0;
                for (std::size_t c = 0; c < n; ++c)
                    dot += static_cast<long>(h.at(r1, c)) * h.at(r2, c);
                if (dot != (r1 == r2 ? static_cast<long>(n) : 0)) {
                    FAIL("rows " << r1 << "," << r2 << " of order " << n << " dot to " << dot);
                }
            }
    }
    CHECK_THROWS_AS(sylvester_hadamard(11), value_error);
}

TEST_CASE("first row and column are all plus one") {
    const HadamardMatrix h = sylvester_hadamard(6);
    for (std::size_t i = 0; i < h.order; ++i) {
        CHECK(h.at(0, i) == 1);
        CHECK(h.at(i, 0) == 1);
    }
}

TEST_CASE("modulation round trips every symbol value") {
    const HadamardMatrix h = sylvester_hadamard(8);
    for (int v = -128; v <= 127; ++v) {
        const ChipVector chips = modulate_symbol(h, v);
        REQUIRE(chips.size() == 256);
        CHECK(demodulate_symbol(h, chips) == v);
    }
    CHECK_THROWS_AS(modulate_symbol(h, 128), value_error);
    CHECK_THROWS_AS(modulate_symbol(h, -129), value_error);
    CHECK_THROWS_AS(modulate_symbol(sylvester_hadamard(4), 0), value_error);
    CHECK_THROWS_AS(demodulate_symbol(h, ChipVector(255, 1)), value_error);
}

TEST_CASE("single chip flips never fool the matched filter at order 8") {
    const HadamardMatrix h = sylvester_hadamard(3);
    for (std::size_t row = 0; row < 8; ++row) {
        ChipVector chips(h.entries.begin() + row * 8, h.entries.begin() + (row + 1) * 8);
        for (std::size_t f = 0; f < 8; ++f) {
            ChipVector hit = chips;
            hit[f] = static_cast<std::int8_t>(-hit[f]);
            CHECK(demodulate_symbol(h, hit) + 128 == static_cast<int>(row));
        }
    }
}

TEST_CASE("up to 63 chip flips never fool the matched filter at order 256") {
    // Distinct rows disagree in exactly 128 chips, so the true correlation
    // stays at least 256 - 126 = 130 while every rival stays at most 126.
    const HadamardMatrix h = sylvester_hadamard(8);
    Rng rng(90210);
    for (int trial = 0; trial < 24; ++trial) {
        const int v = static_cast<int>(rng() % 256) - 128;
        ChipVector chips = modulate_symbol(h, v);
        const std::size_t flips = 1 + rng() % 63;
        std::vector<std::size_t> order(256);
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t i = 0; i < flips; ++i) {
            std::swap(order[i], order[i + rng() % (order.size() - i)]);
            chips[order[i]] = static_cast<std::int8_t>(-chips[order[i]]);
        }
        CHECK(demodulate_symbol(h, chips) == v);
    }
}

TEST_CASE("channel edge rates") {
    Bits data(512);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = (i * 7) & 1;

    ChannelModel clean(0.0, 99);
    CHECK(clean.transmit_bits(data) == data);

    ChannelModel jammed(1.0, 99);
    const Bits flipped = jammed.transmit_bits(data);
    for (std::size_t i = 0; i < data.size(); ++i) REQUIRE(flipped[i] == (data[i] ^ 1));

    ChannelModel polar(1.0, 7);
    const ChipVector chips(64, 1);
    const ChipVector negated = polar.transmit_chips(chips);
    for (auto c : negated) REQUIRE(c == -1);

    CHECK_THROWS_AS(ChannelModel(-0.01, 1), value_error);
    CHECK_THROWS_AS(ChannelModel(1.01, 1), value_error);
}

TEST_CASE("empirical flip rate tracks pe within one percent") {
    const std::size_t n = 100000;
    for (double pe : {0.01, 0.1, 0.5}) {
        ChannelModel ch(pe, 20260814);
        std::size_t flips = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (ch.next_flip()) ++flips;
        const double rate = static_cast<double>(flips) / static_cast<double>(n);
        INFO("pe=" << pe << " rate=" << rate);
        CHECK(std::abs(rate - pe) < 0.01);
    }
}

TEST_CASE("channel output is reproducible per seed") {
    Bits data(4096, 0);
    ChannelModel a(0.25, 1234), b(0.25, 1234), c(0.25, 1235);
    const Bits ba = a.transmit_bits(data);
    const Bits bb = b.transmit_bits(data);
    CHECK(ba == bb);
    CHECK_FALSE(ba == c.transmit_bits(data));
}