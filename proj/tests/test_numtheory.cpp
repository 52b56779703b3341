#include <catch2/catch_amalgamated.hpp>

#include "xlsec/numtheory.hpp"
#include "xlsec/rng.hpp"

using namespace xlsec;

namespace {

BigUint naive_mod_pow(BigUint base, std::uint64_t exp, const BigUint& mod) {
    BigUint acc = 1 % mod;
    base %= mod;
    for (std::uint64_t i = 0; i < exp; ++i) acc = acc * base % mod;
    return acc;
}

} // namespace

TEST_CASE("mod_pow golden values") {
    CHECK(mod_pow(398, 5, 481) == 151);
    CHECK(mod_pow(151, 173, 481) == 398);
    CHECK(mod_pow(0, 0, 7) == 1); // empty product
    CHECK(mod_pow(5, 1, 7) == 5);
    CHECK_THROWS_AS(mod_pow(2, 3, 1), value_error);
    CHECK_THROWS_AS(mod_pow(-2, 3, 7), value_error);
}

TEST_CASE("mod_pow matches the multiply loop") {
    Rng rng(2024);
    for (int i = 0; i < 250; ++i) {
        const BigUint mod = 2 + rng() % 65536;
        const BigUint base = BigUint(rng()) % (mod * 3);
        const std::uint64_t exp = rng() % 40;
        REQUIRE(mod_pow(base, exp, mod) == naive_mod_pow(base, exp, mod));
    }
}

TEST_CASE("mod_inv golden and failure") {
    CHECK(mod_inv(5, 432) == 173);
    CHECK(mod_inv(17, 3120) == 2753);
    CHECK(mod_inv(1, 7) == 1);
    CHECK_THROWS_AS(mod_inv(6, 9), value_error); // gcd 3
    CHECK_THROWS_AS(mod_inv(0, 9), value_error);
}

TEST_CASE("mod_inv really inverts") {
    Rng rng(31337);
    int found = 0;
    while (found < 200) {
        const BigUint m = 2 + rng() % 1000000;
        const BigUint a = 1 + BigUint(rng()) % (m - 1);
        try {
            const BigUint inv = mod_inv(a, m);
            REQUIRE(a * inv % m == 1);
            REQUIRE(inv < m);
            ++found;
        } catch (const value_error&) {
            // not coprime; try another pair
        }
    }
}

TEST_CASE("bitwidth folding golden values") {
    CHECK(reduce_by_bitwidth(300, 107) == 86);
    CHECK(reduce_by_bitwidth(12317, 107) == 12);
    CHECK(reduce_by_bitwidth(106, 107) == 106);
    CHECK(reduce_by_bitwidth(0, 107) == 0);
}

TEST_CASE("bitwidth folding equals the direct remainder") {
    Rng rng(555);
    for (int i = 0; i < 300; ++i) {
        BigUint x = 0;
        const int words = 1 + static_cast<int>(rng() % 4);
        for (int w = 0; w < words; ++w) x = (x << 64) | rng();
        const BigUint n = 2 + BigUint(rng()) % 4294967295u;
        REQUIRE(reduce_by_bitwidth(x, n) == x % n);
    }
}

TEST_CASE("primality on the fixture primes and near misses") {
    for (int p : {2, 3, 13, 37, 107, 109, 113, 1009, 1013})
        CHECK(is_prime(p));
    for (int c : {0, 1, 4, 111, 115, 119, 481, 1022117})
        CHECK_FALSE(is_prime(c));
    CHECK(is_prime(BigUint("2305843009213693951"))); // 2^61 - 1
    CHECK_FALSE(is_prime(BigUint("2305843009213693953")));
}

TEST_CASE("primality agrees with trial division") {
    Rng rng(909);
    for (int i = 0; i < 250; ++i) {
        const std::uint64_t n = 2 + rng() % 100000;
        bool composite = false;
        for (std::uint64_t f = 2; f * f <= n; ++f)
            if (n % f == 0) { composite = true; break; }
        REQUIRE(is_prime(n) == !composite);
    }
}

TEST_CASE("bit_length") {
    CHECK(bit_length(0) == 0);
    CHECK(bit_length(1) == 1);
    CHECK(bit_length(107) == 7);
    CHECK(bit_length(BigUint(1) << 100) == 101);
}
