#pragma once

#include <cstdint>
#include <vector>

#include "xlsec/numtheory.hpp"

namespace xlsec {

// Pairwise-coprime moduli with the constants needed for reconstruction:
// M = prod(m_j), mhat_j = M/m_j, T_j = (mhat_j)^-1 mod m_j.
struct ModuliSet {
    std::vector<std::uint32_t> moduli;
    BigUint M;
    std::vector<BigUint> mhat;
    std::vector<std::uint32_t> T;

    std::size_t size() const { return moduli.size(); }
    bool operator==(const ModuliSet& o) const { return moduli == o.moduli; }
};

// Residues of one integer, aligned with a ModuliSet: 0 <= values[j] < m_j.
struct ResidueVector {
    std::vector<std::uint32_t> values;

    bool operator==(const ResidueVector&) const = default;
};

inline ModuliSet build_moduli_set(const std::vector<std::uint32_t>& moduli) {
    if (moduli.empty()) throw value_error("build_moduli_set: empty moduli list");
    for (std::uint32_t m : moduli)
        if (m < 2) throw value_error("build_moduli_set: modulus " + std::to_string(m) + " < 2");
    for (std::size_t i = 0; i < moduli.size(); ++i)
        for (std::size_t j = i + 1; j < moduli.size(); ++j) {
            std::uint64_t a = moduli[i], b = moduli[j];
            while (b) { std::uint64_t t = a % b; a = b; b = t; }
            if (a != 1)
                throw value_error("build_moduli_set: moduli " + std::to_string(moduli[i]) + " and " +
                                  std::to_string(moduli[j]) + " share a factor");
        }
    ModuliSet ms;
    ms.moduli = moduli;
    ms.M = 1;
    for (std::uint32_t m : moduli) ms.M *= m;
    for (std::uint32_t m : moduli) {
        BigUint mh = ms.M / m;
        ms.mhat.push_back(mh);
        ms.T.push_back(mod_inv(mh % m, BigUint(m)).convert_to<std::uint32_t>());
    }
    return ms;
}

inline ResidueVector to_residues(const ModuliSet& ms, const BigUint& x) {
    if (x < 0 || x >= ms.M)
        throw value_error("to_residues: value " + x.str() + " outside dynamic range [0, " + ms.M.str() + ")");
    ResidueVector r;
    r.values.reserve(ms.size());
    for (std::uint32_t m : ms.moduli)
        r.values.push_back((x % m).convert_to<std::uint32_t>());
    return r;
}

// CRT reconstruction: (sum_j mhat_j * T_j * x_j) mod M. Unique on [0, M).
inline BigUint from_residues(const ModuliSet& ms, const ResidueVector& r) {
    if (r.values.size() != ms.size())
        throw value_error("from_residues: residue count " + std::to_string(r.values.size()) +
                          " does not match moduli count " + std::to_string(ms.size()));
    for (std::size_t j = 0; j < ms.size(); ++j)
        if (r.values[j] >= ms.moduli[j])
            throw value_error("from_residues: residue " + std::to_string(r.values[j]) +
                              " out of range for modulus " + std::to_string(ms.moduli[j]));
    BigUint acc = 0;
    for (std::size_t j = 0; j < ms.size(); ++j)
        acc += ms.mhat[j] * ms.T[j] * r.values[j];
    return acc % ms.M;
}

} // namespace xlsec
