#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xlsec/numtheory.hpp"

namespace xlsec {

// ---------------------------------------------------------------------------
// Attack-cost calculators. All arithmetic in long double; the factorials and
// 2^k powers stay exact well past k = 16 at that precision.
// ---------------------------------------------------------------------------

struct AttackParams {
    std::uint32_t p_blocks = 0; // known plaintext-ciphertext block count
    std::uint32_t q_states = 0; // transducer state count
    std::uint32_t k = 0;        // bits per symbol
    std::uint32_t stages = 0;   // cascade depth N
    BigUint rsa_p = 0;
    BigUint rsa_q = 0;
};

inline void validate_attack_params(const AttackParams& ap) {
    if (ap.q_states < 1) throw value_error("attack params: state count must be >= 1");
    if (ap.stages < 1) throw value_error("attack params: stage count must be >= 1");
    if (ap.p_blocks <= ap.k + 1)
        throw value_error("attack params: block count must exceed k + 1 = " + std::to_string(ap.k + 1));
}

// Difference-of-squares factoring cost: steps to walk from ceil(sqrt(pq)) up
// to (p+q)/2. Algebraically (sqrt(q) - sqrt(p))^2 / 2.
inline long double fermat_steps(const BigUint& p, const BigUint& q) {
    if (p < 2 || q < 2) throw value_error("fermat_steps: operands must be >= 2");
    const long double pf = p.convert_to<long double>();
    const long double qf = q.convert_to<long double>();
    return (pf + qf) / 2.0L - sqrtl(pf * qf);
}

// Known-plaintext cost of solving one cascade stage, raised to the cascade
// depth: S2 = [p * ((q*2^k)/(p-k-1) * (q*2^k)/p * k!/p * 1/p * (k/2)^2 * 4)]^N.
inline long double cascade_attack_steps(const AttackParams& ap) {
    validate_attack_params(ap);
    const long double p = ap.p_blocks, q = ap.q_states, k = ap.k;
    const long double two_k = powl(2.0L, k);
    long double k_fact = 1.0L;
    for (std::uint32_t i = 2; i <= ap.k; ++i) k_fact *= i;
    const long double inner = (q * two_k) / (p - k - 1.0L) *
                              ((q * two_k) / p) *
                              (k_fact / p) *
                              (1.0L / p) *
                              (k / 2.0L) * (k / 2.0L) *
                              4.0L;
    return powl(p * inner, static_cast<long double>(ap.stages));
}

inline long double combined_attack_steps(const AttackParams& ap) {
    return fermat_steps(ap.rsa_p, ap.rsa_q) * cascade_attack_steps(ap);
}

// ---------------------------------------------------------------------------
// Throughput
// ---------------------------------------------------------------------------

enum class ThroughputMode { exact, approx };

// exact: R * (1 - pe)^N. approx: first-order R * (1 - N*pe), clamped at 0.
inline long double throughput(long double rate, long double pe, std::uint64_t block_bits,
                              ThroughputMode mode) {
    if (!(pe >= 0.0L && pe <= 1.0L)) throw value_error("throughput: pe must be in [0, 1]");
    if (rate <= 0.0L) throw value_error("throughput: rate must be positive");
    if (block_bits < 1) throw value_error("throughput: block must be >= 1 bit");
    if (mode == ThroughputMode::exact)
        return rate * powl(1.0L - pe, static_cast<long double>(block_bits));
    const long double t = rate * (1.0L - static_cast<long double>(block_bits) * pe);
    return t > 0.0L ? t : 0.0L;
}

// ---------------------------------------------------------------------------
// Coded-signaling bit-error bound
// ---------------------------------------------------------------------------

// Distance spectrum of one convolutional code: a_d counts paths at Hamming
// distance d from the zero codeword; L is the free distance (smallest d).
struct CodeProfile {
    std::string name;
    std::uint32_t k = 0;
    std::uint32_t L = 0;
    std::map<std::uint32_t, std::uint64_t> a_d;
};

// Exponent applied to the bracket term: the fixed free distance L for every
// term, or each term's own path distance d.
enum class ExponentMode { L, D };

inline void validate_code_profile(const CodeProfile& profile) {
    if (profile.a_d.empty()) throw value_error("code profile '" + profile.name + "': empty distance spectrum");
    if (profile.k == 0) throw value_error("code profile '" + profile.name + "': k must be positive");
    if (profile.a_d.begin()->first != profile.L)
        throw value_error("code profile '" + profile.name + "': smallest distance must equal L");
}

// Union-style upper bound on the symbol-coded bit error probability:
//   (2^(k-1)/(2^k - 1)) * sum_d a_d * [4(1 + (k/L)g) / (2 + (k/L)g)^2]^E
// with g the per-bit SNR and E chosen by the exponent mode.
inline long double pb_bound(const CodeProfile& profile, long double gamma_b, ExponentMode mode) {
    validate_code_profile(profile);
    if (!(gamma_b > 0.0L)) throw value_error("pb_bound: SNR must be positive");
    const long double k = profile.k;
    const long double x = (k / static_cast<long double>(profile.L)) * gamma_b;
    const long double bracket = 4.0L * (1.0L + x) / ((2.0L + x) * (2.0L + x));
    const long double factor = powl(2.0L, k - 1.0L) / (powl(2.0L, k) - 1.0L);
    long double sum = 0.0L;
    for (const auto& [d, count] : profile.a_d) {
        const long double e = mode == ExponentMode::L ? static_cast<long double>(profile.L)
                                                      : static_cast<long double>(d);
        sum += static_cast<long double>(count) * powl(bracket, e);
    }
    return factor * sum;
}

// Distance spectrum T(D) = D^3 + 2 D^4 of the 2-bit-symbol code.
inline CodeProfile code_profile_k2() {
    return CodeProfile{"(2,2,2)", 2, 3, {{3, 1}, {4, 2}}};
}

// Distance spectrum D^3 + 2D^4 + 3D^5 + 5D^6 + 9D^7 + 16D^8 + 28D^9 + 49D^10
// + 85 D^11 of the 4-bit-symbol code.
inline CodeProfile code_profile_k4() {
    return CodeProfile{
        "(4,4,2)", 4, 3,
        {{3, 1}, {4, 2}, {5, 3}, {6, 5}, {7, 9}, {8, 16}, {9, 28}, {10, 49}, {11, 85}}};
}

// ---------------------------------------------------------------------------
// CSV curve emission. Locale-independent: '.' decimal point via to_chars,
// comma separators, '\n' newlines, header first.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct SweepGrid {
    double lo = 0;
    double hi = 0;
    double step = 1;
};

inline std::vector<double> expand_grid(const SweepGrid& g) {
    if (!(g.step > 0.0) || g.hi < g.lo)
        throw value_error("sweep: need lo <= hi and a positive step");
    std::vector<double> points;
    const auto count = static_cast<std::size_t>((g.hi - g.lo) / g.step + 1e-9) + 1;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) points.push_back(g.lo + static_cast<double>(i) * g.step);
    return points;
}

struct BerSweep {
    SweepGrid snr_db;
    ExponentMode mode = ExponentMode::L;
    std::vector<CodeProfile> profiles = {code_profile_k2(), code_profile_k4()};
};

inline std::string emit_curves(const BerSweep& sweep) {
    if (sweep.profiles.empty()) throw value_error("sweep: no code profiles");
    std::string out = "snr_db";
    for (const auto& p : sweep.profiles) out += ",pb_k" + std::to_string(p.k);
    out += '\n';
    for (double db : expand_grid(sweep.snr_db)) {
        const long double gamma = powl(10.0L, static_cast<long double>(db) / 10.0L);
        out += format_double(db);
        for (const auto& p : sweep.profiles)
            out += ',' + format_double(static_cast<double>(pb_bound(p, gamma, sweep.mode)));
        out += '\n';
    }
    return out;
}

struct ThroughputSweep {
    double rate = 1.0;
    std::uint64_t block_bits = 1;
    SweepGrid pe;
};

inline std::string emit_curves(const ThroughputSweep& sweep) {
    std::string out = "pe,throughput_exact,throughput_approx\n";
    for (double pe : expand_grid(sweep.pe)) {
        out += format_double(pe);
        out += ',' + format_double(static_cast<double>(
                   throughput(sweep.rate, pe, sweep.block_bits, ThroughputMode::exact)));
        out += ',' + format_double(static_cast<double>(
                   throughput(sweep.rate, pe, sweep.block_bits, ThroughputMode::approx)));
        out += '\n';
    }
    return out;
}

// Attack cost swept over the cascade depth N.
struct AttackSweep {
    AttackParams base; // stages ignored; swept below
    std::uint32_t stages_lo = 1;
    std::uint32_t stages_hi = 4;
};

inline std::string emit_curves(const AttackSweep& sweep) {
    if (sweep.stages_lo < 1 || sweep.stages_hi < sweep.stages_lo)
        throw value_error("sweep: need 1 <= first stage count <= last");
    std::string out = "n_stages,s1,s2,s_total\n";
    for (std::uint32_t n = sweep.stages_lo; n <= sweep.stages_hi; ++n) {
        AttackParams ap = sweep.base;
        ap.stages = n;
        const long double s1 = fermat_steps(ap.rsa_p, ap.rsa_q);
        const long double s2 = cascade_attack_steps(ap);
        out += std::to_string(n);
        out += ',' + format_double(static_cast<double>(s1));
        out += ',' + format_double(static_cast<double>(s2));
        out += ',' + format_double(static_cast<double>(s1 * s2));
        out += '\n';
    }
    return out;
}

} // namespace xlsec
