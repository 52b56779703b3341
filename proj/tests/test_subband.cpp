#include <catch2/catch_amalgamated.hpp>

#include <bit>

#include "xlsec/rng.hpp"
#include "xlsec/subband.hpp"

using namespace xlsec;

namespace {

std::vector<std::uint32_t> golden_residues(std::uint32_t m) {
    const std::vector<std::uint32_t> layer = {151, 293, 252, 135, 304, 315, 265, 182};
    std::vector<std::uint32_t> out;
    for (auto v : layer) out.push_back(v % m);
    return out;
}

std::uint32_t neg(std::uint32_t a, std::uint32_t m) { return (m - a % m) % m; }

} // namespace

TEST_CASE("level-1 details match the worked residues") {
    // details congruent to -9, -48, -79, -27 modulo each modulus' own ring
    const SubbandFrame f107 = decompose(golden_residues(107), LiftingKernel{}, 107);
    CHECK(f107.levels.at(0) ==
          std::vector<std::uint32_t>({neg(9, 107), neg(48, 107), neg(79, 107), neg(27, 107)}));
    CHECK(f107.levels.at(0) == std::vector<std::uint32_t>({98, 59, 28, 80}));

    const SubbandFrame f109 = decompose(golden_residues(109), LiftingKernel{}, 109);
    CHECK(f109.levels.at(0) ==
          std::vector<std::uint32_t>({neg(9, 109), neg(42, 109), neg(75, 109), neg(21, 109)}));

    const SubbandFrame f113 = decompose(golden_residues(113), LiftingKernel{}, 113);
    CHECK(f113.levels.at(0) ==
          std::vector<std::uint32_t>({neg(9, 113), neg(30, 113), neg(67, 113), neg(9, 113)}));
}

TEST_CASE("decomposition shape") {
    const SubbandFrame f = decompose(golden_residues(107), LiftingKernel{}, 107);
    REQUIRE(f.levels.size() == 3);
    CHECK(f.levels[0].size() == 4);
    CHECK(f.levels[1].size() == 2);
    CHECK(f.levels[2].size() == 1);
    CHECK(reconstruct(f) == golden_residues(107));

    const SubbandFrame single = decompose({42}, LiftingKernel{}, 107);
    CHECK(single.levels.empty());
    CHECK(single.final_approx == 42);
    CHECK(reconstruct(single) == std::vector<std::uint32_t>({42}));
}

TEST_CASE("split and merge invert each other") {
    const std::vector<std::uint32_t> x = golden_residues(109);
    const auto [approx, detail] = split_level(x, LiftingKernel{}, 109);
    REQUIRE(approx.size() == 4);
    REQUIRE(detail.size() == 4);
    CHECK(approx == std::vector<std::uint32_t>({x[0], x[2], x[4], x[6]}));
    CHECK(merge_level(approx, detail, LiftingKernel{}, 109) == x);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(decompose({}, LiftingKernel{}, 107), value_error);
    CHECK_THROWS_AS(decompose({1, 2, 3}, LiftingKernel{}, 107), value_error); // not a power of two
    CHECK_THROWS_AS(decompose({1, 200}, LiftingKernel{}, 107), value_error);  // out of ring
    CHECK_THROWS_AS(decompose({1, 2}, LiftingKernel{}, 1), value_error);
    CHECK_THROWS_AS(decompose({1, 2}, LiftingKernel{}, (1u << 30) + 1), value_error);

    SubbandFrame bad;
    bad.modulus = 107;
    bad.levels = {{1, 2}, {3, 4}}; // lengths must halve
    bad.final_approx = 5;
    CHECK_THROWS_AS(reconstruct(bad), value_error);
}

TEST_CASE("round trip identity over random ring sequences") {
    Rng rng(777001);
    for (int i = 0; i < 250; ++i) {
        const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng() % ((1u << 30) - 1));
        const std::size_t len = std::size_t(1) << (rng() % 8);
        std::vector<std::uint32_t> x(len);
        for (auto& v : x) v = static_cast<std::uint32_t>(rng() % m);
        LiftingKernel kernel;
        kernel.h1 = static_cast<std::int32_t>(rng() % 11) - 5;
        kernel.h2 = static_cast<std::int32_t>(rng() % 11) - 5;
        kernel.h3 = static_cast<std::int32_t>(rng() % 11) - 5;
        const SubbandFrame f = decompose(x, kernel, m);
        REQUIRE(f.levels.size() == (len == 1 ? 0u : static_cast<std::size_t>(std::countr_zero(len))));
        REQUIRE(reconstruct(f) == x);
    }
}

TEST_CASE("detail values depend on the prediction taps") {
    const std::vector<std::uint32_t> x = {10, 50, 20, 60};
    LiftingKernel flat{0, 0, 0};
    const SubbandFrame f = decompose(x, flat, 107);
    // zero prediction: details are the odd samples themselves
    CHECK(f.levels.at(0) == std::vector<std::uint32_t>({50, 60}));
}
