#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "xlsec/errors.hpp"

namespace xlsec {

// Integer lifting predictor taps. The split rule predicts each odd sample
// from up to three forward even samples; h = {2, 0, 0} is the working set
// used throughout the built-in demos.
struct LiftingKernel {
    std::int32_t h1 = 2;
    std::int32_t h2 = 0;
    std::int32_t h3 = 0;

    bool operator==(const LiftingKernel&) const = default;
};

// Multilevel decomposition of one residue sequence over Z_modulus.
// levels[0] is the first (longest) detail sequence; lengths halve per level;
// final_approx is the single surviving approximation point.
struct SubbandFrame {
    std::uint32_t modulus = 0;
    std::vector<std::vector<std::uint32_t>> levels;
    std::uint32_t final_approx = 0;
    LiftingKernel kernel;

    bool operator==(const SubbandFrame&) const = default;
};

namespace detail {

inline void check_ring_modulus(std::uint32_t m, const char* who) {
    if (m < 2 || m > (1u << 30))
        throw value_error(std::string(who) + ": modulus must be in [2, 2^30]");
}

// Prediction for index k over the approximation sequence, reduced into [0, m).
inline std::uint32_t lift_prediction(const std::vector<std::uint32_t>& approx, std::size_t k,
                                     const LiftingKernel& kernel, std::uint32_t m) {
    const std::int64_t taps[3] = {kernel.h1, kernel.h2, kernel.h3};
    std::int64_t acc = 0;
    for (std::size_t t = 0; t < 3; ++t) {
        if (k + t >= approx.size()) break; // zero extension past the end
        std::int64_t h = taps[t] % m;
        if (h < 0) h += m;
        acc = (acc + h * (approx[k + t] % m)) % m;
    }
    return static_cast<std::uint32_t>(acc);
}

} // namespace detail

// One lifting split over Z_m. Even samples pass through as the approximation;
// detail[k] = (odd[k] - h1*even[k] - h2*even[k+1] - h3*even[k+2]) mod m with
// zero extension past the end. Exactly invertible for any kernel, any m.
inline std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
split_level(const std::vector<std::uint32_t>& x, const LiftingKernel& kernel, std::uint32_t m) {
    detail::check_ring_modulus(m, "split_level");
    if (x.size() < 2 || x.size() % 2 != 0)
        throw value_error("split_level: length " + std::to_string(x.size()) + " is not even and >= 2");
    for (std::uint32_t v : x)
        if (v >= m) throw value_error("split_level: value " + std::to_string(v) + " outside Z_" + std::to_string(m));
    const std::size_t half = x.size() / 2;
    std::vector<std::uint32_t> approx(half), detail_seq(half);
    for (std::size_t k = 0; k < half; ++k) approx[k] = x[2 * k];
    for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t pred = detail::lift_prediction(approx, k, kernel, m);
        const std::uint32_t odd = x[2 * k + 1];
        detail_seq[k] = odd >= pred ? odd - pred : odd + m - pred;
    }
    return {std::move(approx), std::move(detail_seq)};
}

// Exact inverse of split_level: odd[k] = (detail[k] + prediction) mod m.
inline std::vector<std::uint32_t>
merge_level(const std::vector<std::uint32_t>& approx, const std::vector<std::uint32_t>& detail_seq,
            const LiftingKernel& kernel, std::uint32_t m) {
    detail::check_ring_modulus(m, "merge_level");
    if (approx.size() != detail_seq.size())
        throw value_error("merge_level: approx length " + std::to_string(approx.size()) +
                          " != detail length " + std::to_string(detail_seq.size()));
    const std::size_t half = approx.size();
    std::vector<std::uint32_t> evens(half);
    for (std::size_t k = 0; k < half; ++k) evens[k] = approx[k] % m;
    std::vector<std::uint32_t> out(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t pred = detail::lift_prediction(evens, k, kernel, m);
        out[2 * k] = evens[k];
        out[2 * k + 1] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(detail_seq[k] % m) + pred) % m);
    }
    return out;
}

// Splits log2(len) times, recursing on the approximation half each time.
// Input length must be a power of two; length 1 yields zero levels.
inline SubbandFrame decompose(const std::vector<std::uint32_t>& x, const LiftingKernel& kernel, std::uint32_t m) {
    detail::check_ring_modulus(m, "decompose");
    if (x.empty() || (x.size() & (x.size() - 1)) != 0)
        throw value_error("decompose: length " + std::to_string(x.size()) + " is not a power of two");
    for (std::uint32_t v : x)
        if (v >= m) throw value_error("decompose: value " + std::to_string(v) + " outside Z_" + std::to_string(m));
    SubbandFrame frame;
    frame.modulus = m;
    frame.kernel = kernel;
    std::vector<std::uint32_t> cur = x;
    while (cur.size() > 1) {
        auto [approx, detail_seq] = split_level(cur, kernel, m);
        frame.levels.push_back(std::move(detail_seq));
        cur = std::move(approx);
    }
    frame.final_approx = cur[0];
    return frame;
}

// Exact inverse of decompose.
inline std::vector<std::uint32_t> reconstruct(const SubbandFrame& frame) {
    detail::check_ring_modulus(frame.modulus, "reconstruct");
    std::size_t expect = 1;
    for (std::size_t i = frame.levels.size(); i-- > 0;) {
        if (frame.levels[i].size() != expect)
            throw value_error("reconstruct: level " + std::to_string(i + 1) + " has " +
                              std::to_string(frame.levels[i].size()) + " entries, expected " +
                              std::to_string(expect));
        expect *= 2;
    }
    for (const auto& lvl : frame.levels)
        for (std::uint32_t v : lvl)
            if (v >= frame.modulus) throw value_error("reconstruct: detail value out of ring");
    if (frame.final_approx >= frame.modulus) throw value_error("reconstruct: approx value out of ring");
    std::vector<std::uint32_t> cur{frame.final_approx};
    for (std::size_t i = frame.levels.size(); i-- > 0;)
        cur = merge_level(cur, frame.levels[i], frame.kernel, frame.modulus);
    return cur;
}

} // namespace xlsec
