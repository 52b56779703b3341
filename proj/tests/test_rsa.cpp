#include <catch2/catch_amalgamated.hpp>

#include "xlsec/rng.hpp"
#include "xlsec/rsa.hpp"

using namespace xlsec;

TEST_CASE("keypair derivation golden values") {
    const RsaKeyPair kp = derive_keypair(13, 37, 5);
    CHECK(kp.m == 481);
    CHECK(kp.d == 173);
    CHECK(kp.e * kp.d % 432 == 1);

    // classic textbook pair: phi = 3120, inverse of 17 is 2753
    const RsaKeyPair kp2 = derive_keypair(61, 53, 17);
    CHECK(kp2.m == 3233);
    CHECK(kp2.d == 2753);
}

TEST_CASE("derivation rejects bad parameters") {
    CHECK_THROWS_AS(derive_keypair(12, 37, 5), value_error);  // not prime
    CHECK_THROWS_AS(derive_keypair(13, 13, 5), value_error);  // equal primes
    CHECK_THROWS_AS(derive_keypair(13, 37, 1), value_error);  // exponent too small
    CHECK_THROWS_AS(derive_keypair(13, 37, 6), value_error);  // gcd(6, 432) != 1
}

TEST_CASE("golden block encryption") {
    const RsaKeyPair kp = derive_keypair(13, 37, 5);
    const std::vector<BigUint> msg = {398, 453, 876, 200, 356, 165, 265, 897};
    const std::vector<BigUint> expected = {151, 293, 252, 135, 304, 315, 265, 182};
    const std::vector<BigUint> canonical = {398, 453, 395, 200, 356, 165, 265, 416};
    for (std::size_t i = 0; i < msg.size(); ++i) {
        const BigUint c = encrypt_value(kp.public_key(), msg[i] % kp.m);
        CHECK(c == expected[i]);
        CHECK(decrypt_value(kp.private_key(), c) == canonical[i]);
    }
}

TEST_CASE("values at or above the modulus are rejected") {
    const RsaKeyPair kp = derive_keypair(13, 37, 5);
    CHECK_THROWS_AS(encrypt_value(kp.public_key(), 481), value_error);
    CHECK_THROWS_AS(encrypt_value(kp.public_key(), 876), value_error);
    CHECK_THROWS_AS(decrypt_value(kp.private_key(), 481), value_error);
    CHECK_NOTHROW(encrypt_value(kp.public_key(), 480));
}

TEST_CASE("encrypt/decrypt round trip on random residues") {
    const std::vector<std::pair<int, int>> prime_pairs = {{13, 37}, {61, 53}, {101, 103}, {1009, 1013}};
    Rng rng(4242);
    for (const auto& [p, q] : prime_pairs) {
        BigUint e = 3;
        RsaKeyPair kp;
        for (;; e += 2) {
            try {
                kp = derive_keypair(p, q, e);
                break;
            } catch (const value_error&) {
                // exponent shares a factor with phi; try the next odd one
            }
        }
        for (int i = 0; i < 60; ++i) {
            const BigUint x = BigUint(rng()) % kp.m;
            const BigUint c = encrypt_value(kp.public_key(), x);
            REQUIRE(c < kp.m);
            REQUIRE(decrypt_value(kp.private_key(), c) == x);
        }
    }
}

TEST_CASE("public and private views match the pair") {
    const RsaKeyPair kp = derive_keypair(61, 53, 17);
    CHECK(kp.public_key().m == kp.m);
    CHECK(kp.public_key().e == kp.e);
    CHECK(kp.private_key().m == kp.m);
    CHECK(kp.private_key().d == kp.d);
}
