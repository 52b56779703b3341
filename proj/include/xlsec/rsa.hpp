#pragma once

#include "xlsec/numtheory.hpp"

namespace xlsec {

struct RsaPublicKey {
    BigUint m; // modulus p*q
    BigUint e; // public exponent
};

struct RsaPrivateKey {
    BigUint m;
    BigUint d; // private exponent
};

struct RsaKeyPair {
    BigUint p;
    BigUint q;
    BigUint m; // p*q
    BigUint e;
    BigUint d; // e*d == 1 (mod (p-1)(q-1))

    RsaPublicKey public_key() const { return {m, e}; }
    RsaPrivateKey private_key() const { return {m, d}; }

    bool operator==(const RsaKeyPair&) const = default;
};

// Textbook keypair: d is the least positive inverse of e modulo (p-1)(q-1).
// No padding anywhere in this library; this is a simulation primitive and
// deliberately insecure for real traffic.
inline RsaKeyPair derive_keypair(const BigUint& p, const BigUint& q, const BigUint& e) {
    if (!is_prime(p)) throw value_error("derive_keypair: p = " + p.str() + " is not prime");
    if (!is_prime(q)) throw value_error("derive_keypair: q = " + q.str() + " is not prime");
    if (p == q) throw value_error("derive_keypair: p and q must differ");
    if (e < 2) throw value_error("derive_keypair: exponent must be >= 2");
    const BigUint phi = (p - 1) * (q - 1);
    BigUint d;
    try {
        d = mod_inv(e % phi, phi);
    } catch (const value_error&) {
        throw value_error("derive_keypair: e = " + e.str() + " is not coprime to (p-1)(q-1) = " + phi.str());
    }
    return RsaKeyPair{p, q, p * q, e, d};
}

inline BigUint encrypt_value(const RsaPublicKey& pk, const BigUint& x) {
    if (x < 0 || x >= pk.m)
        throw value_error("encrypt_value: message " + x.str() + " outside [0, " + pk.m.str() + ")");
    return mod_pow(x, pk.e, pk.m);
}

// Same primitive serves decryption and signing (exponent d instead of e).
inline BigUint decrypt_value(const RsaPrivateKey& sk, const BigUint& c) {
    if (c < 0 || c >= sk.m)
        throw value_error("decrypt_value: ciphertext " + c.str() + " outside [0, " + sk.m.str() + ")");
    return mod_pow(c, sk.d, sk.m);
}

} // namespace xlsec
