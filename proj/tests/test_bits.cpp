#include <catch2/catch_amalgamated.hpp>

#include "xlsec/bits.hpp"
#include "xlsec/rng.hpp"

using namespace xlsec;

TEST_CASE("bit string parsing accepts separators and rejects junk") {
    CHECK(bits_from_string("1011") == Bits({1, 0, 1, 1}));
    CHECK(bits_from_string("10 11_00") == Bits({1, 0, 1, 1, 0, 0}));
    CHECK(bits_from_string("") == Bits{});
    CHECK_THROWS_AS(bits_from_string("10121"), format_error);
    CHECK_THROWS_AS(bits_from_string("abc"), format_error);
}

TEST_CASE("bit string formatting with optional grouping") {
    const Bits b = bits_from_string("0000111101011001");
    CHECK(bits_to_string(b) == "0000111101011001");
    CHECK(bits_to_string(b, 4) == "0000 1111 0101 1001");
    CHECK(bits_to_string(Bits{}, 4).empty());
}

TEST_CASE("fixed-width integer packing is MSB first") {
    CHECK(bits_from_uint(0b1011, 4) == Bits({1, 0, 1, 1}));
    CHECK(bits_from_uint(1, 8) == Bits({0, 0, 0, 0, 0, 0, 0, 1}));
    CHECK(uint_from_bits(bits_from_uint(0xdeadbeefULL, 32)) == 0xdeadbeefULL);
    const Bits b = bits_from_string("11010010");
    CHECK(uint_from_bits(b, 0, 4) == 0b1101);
    CHECK(uint_from_bits(b, 4, 4) == 0b0010);
}

TEST_CASE("packing round trip over random words") {
    Rng rng(12345);
    for (int i = 0; i < 300; ++i) {
        const std::size_t width = 1 + rng() % 64;
        const std::uint64_t value = width == 64 ? rng() : rng() & ((1ull << width) - 1);
        const Bits b = bits_from_uint(value, width);
        REQUIRE(b.size() == width);
        REQUIRE(uint_from_bits(b) == value);
    }
}

TEST_CASE("hamming distance") {
    CHECK(hamming_distance(bits_from_string("0000"), bits_from_string("0000")) == 0);
    CHECK(hamming_distance(bits_from_string("0000"), bits_from_string("1111")) == 4);
    CHECK(hamming_distance(bits_from_string("1010"), bits_from_string("1001")) == 2);
    CHECK_THROWS_AS(hamming_distance(bits_from_string("10"), bits_from_string("100")), value_error);
}

TEST_CASE("append_bits concatenates in order") {
    Bits b = bits_from_string("10");
    append_bits(b, bits_from_string("01"));
    CHECK(b == bits_from_string("1001"));
}

TEST_CASE("sub-seed derivation separates streams") {
    const std::uint64_t base = 42;
    CHECK(derive_seed(base, 0) != derive_seed(base, 1));
    CHECK(derive_seed(base, 0) != derive_seed(base + 1, 0));
    CHECK(derive_seed(base, 7) == derive_seed(base, 7));
}

TEST_CASE("splitmix64 walks a reproducible sequence") {
    std::uint64_t s1 = 99, s2 = 99;
    const std::uint64_t a = splitmix64(s1);
    const std::uint64_t b = splitmix64(s2);
    CHECK(a == b);
    CHECK(s1 == s2);
    CHECK(splitmix64(s1) != a);
}

TEST_CASE("uniform_below stays in range and covers small supports") {
    Rng rng(777);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t bound = 1 + rng() % 100;
        REQUIRE(uniform_below(rng, bound) < bound);
    }
    std::vector<int> seen(5, 0);
    for (int i = 0; i < 1000; ++i) ++seen[uniform_below(rng, 5)];
    for (int count : seen) CHECK(count > 100); // ~200 expected per bucket
}
