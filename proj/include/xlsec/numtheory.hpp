#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "xlsec/errors.hpp"
#include "xlsec/rng.hpp"

namespace xlsec {

// Arbitrary-precision non-negative integer. cpp_int keeps a canonical limb
// representation; non-negativity is enforced at the API boundary.
using BigUint = boost::multiprecision::cpp_int;

namespace detail {
inline void require_nonnegative(const BigUint& v, const char* what) {
    if (v < 0) throw value_error(std::string(what) + ": negative value");
}
} // namespace detail

inline std::size_t bit_length(const BigUint& x) {
    return x == 0 ? 0 : boost::multiprecision::msb(x) + 1;
}

// base^exponent mod modulus by left-to-right square and multiply.
inline BigUint mod_pow(const BigUint& base, const BigUint& exponent, const BigUint& modulus) {
    detail::require_nonnegative(base, "mod_pow");
    detail::require_nonnegative(exponent, "mod_pow");
    if (modulus < 2) throw value_error("mod_pow: modulus must be >= 2");
    BigUint result = 1;
    BigUint b = base % modulus;
    const std::size_t nbits = bit_length(exponent);
    for (std::size_t i = nbits; i-- > 0;) {
        result = (result * result) % modulus;
        if (boost::multiprecision::bit_test(exponent, static_cast<unsigned>(i)))
            result = (result * b) % modulus;
    }
    return result;
}

// Least positive t with a·t ≡ 1 (mod modulus), by the extended Euclidean
// algorithm. Throws if gcd(a, modulus) != 1.
inline BigUint mod_inv(const BigUint& a, const BigUint& modulus) {
    detail::require_nonnegative(a, "mod_inv");
    if (modulus < 2) throw value_error("mod_inv: modulus must be >= 2");
    using boost::multiprecision::cpp_int;
    cpp_int r0 = modulus, r1 = a % modulus;
    cpp_int t0 = 0, t1 = 1;
    while (r1 != 0) {
        cpp_int q = r0 / r1;
        cpp_int r2 = r0 - q * r1;
        cpp_int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1)
        throw value_error("mod_inv: no inverse, gcd(" + a.str() + ", " + modulus.str() + ") = " + r0.str());
    if (t0 < 0) t0 += modulus;
    return t0;
}

// x mod n without a division instruction: with b1 = bit length of n, iterate
// x <- (low b1 bits of x) + (2^b1 - n)·(x >> b1) until x fits in b1 bits,
// then one conditional subtraction. Each pass subtracts n·(x >> b1), so it
// preserves the residue and strictly decreases x.
inline BigUint reduce_by_bitwidth(const BigUint& x, const BigUint& n) {
    detail::require_nonnegative(x, "reduce_by_bitwidth");
    if (n < 2) throw value_error("reduce_by_bitwidth: modulus must be >= 2");
    const std::size_t b1 = bit_length(n);
    const BigUint base = BigUint(1) << static_cast<unsigned>(b1);
    const BigUint factor = base - n; // in [0, 2^(b1-1))
    BigUint v = x;
    while (bit_length(v) > b1) {
        BigUint high = v >> static_cast<unsigned>(b1);
        BigUint low = v - (high << static_cast<unsigned>(b1));
        v = low + factor * high;
    }
    if (v >= n) v -= n;
    return v;
}

namespace detail {

inline bool miller_rabin_witness(const BigUint& n, const BigUint& a, const BigUint& d, unsigned r) {
    BigUint x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true; // composite witness found
}

} // namespace detail

// Deterministic trial division for inputs below 2^32, 64 Miller-Rabin rounds
// with fixed-seed bases beyond that. Intended for desk-scale key material.
inline bool is_prime(const BigUint& n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < (BigUint(1) << 32)) {
        const std::uint64_t v = n.convert_to<std::uint64_t>();
        for (std::uint64_t f = 41; f * f <= v; f += 2)
            if (v % f == 0) return false;
        return true;
    }
    BigUint d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    Rng rng(0x5ca1ab1e5eedull); // fixed seed: the rounds must not vary between runs
    const std::size_t span = bit_length(n) - 1;
    for (int round = 0; round < 64; ++round) {
        BigUint a = 0;
        for (std::size_t got = 0; got < span; got += 64)
            a = (a << 64) | rng();
        a = a % (n - 3) + 2; // a in [2, n-2]
        if (detail::miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

} // namespace xlsec
