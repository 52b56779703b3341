#pragma once

#include <string>

#include "xlsec/convcrypt.hpp"

namespace xlsec {

// ---------------------------------------------------------------------------
// Built-in cascade keys.
//
//   identity - single pass-through stage; frames carry the raw symbols.
//   demo8    - two-stage rate-1 product cipher over 8-bit symbols: keyed
//              linear transducers (two matrix sets, input-range switching),
//              four 2-bit S-boxes and a full-reversal P-box between stages.
//              Algebraically decryptable; no redundancy.
//   fig4x23  - two-stage error-correcting cascade built from the repo's
//              transition-table fixtures: a rate-1 (2,2,3) stage, a 2-bit
//              XOR S-box and swap P-box, then a rate-1/2 (4,2,3) stage.
//              Decoded with the trellis decoder; corrects single bit errors
//              per terminated block.
//
// The embedded table text below is byte-identical to the files under data/;
// a test enforces that, so the fixtures and the library cannot drift apart.
// ---------------------------------------------------------------------------

inline constexpr const char* kCascade4x23Stage1Table =
    R"tbl(# Stage-1 transition table of the built-in (4,2,3) error-correcting cascade.
# One transition per line: input in_state output out_state
# 2-bit input, 4-bit state (S1 S0 I1 I0), 2-bit output. 64 rows, total.
00 0000 00 0000
01 0000 01 0010
10 0000 10 1000
11 0000 11 1010
00 0001 01 0000
01 0001 00 0010
10 0001 11 1000
11 0001 10 1010
00 0010 01 0001
01 0010 00 0011
10 0010 11 1011
11 0010 10 1011
00 0011 00 0001
01 0011 01 0011
10 0011 10 1001
11 0011 11 1011
00 0100 10 0000
01 0100 11 0010
10 0100 00 1000
11 0100 01 1010
00 0101 11 0000
01 0101 10 0010
10 0101 01 1000
11 0101 00 1010
00 0110 11 0001
01 0110 10 0011
10 0110 01 1001
11 0110 00 1011
00 0111 10 0001
01 0111 11 0011
10 0111 00 1001
11 0111 01 1011
00 1000 10 0100
01 1000 11 0110
10 1000 00 1100
11 1000 01 1110
00 1001 11 0100
01 1001 10 0110
10 1001 01 1100
11 1001 00 1110
00 1010 11 0101
01 1010 10 0111
10 1010 01 1101
11 1010 00 1111
00 1011 10 0101
01 1011 11 0111
10 1011 00 1101
11 1011 01 1111
00 1100 00 0100
01 1100 01 0110
10 1100 10 0100
11 1100 11 0110
00 1101 01 0100
01 1101 00 0110
10 1101 11 1100
11 1101 10 1110
00 1110 01 0101
01 1110 00 0111
10 1110 11 1101
11 1110 10 1111
00 1111 00 0101
01 1111 01 0111
10 1111 10 1101
11 1111 11 1111
)tbl";

inline constexpr const char* kCascade4x23Stage2Table =
    R"tbl(# Stage-2 transition table of the built-in (4,2,3) error-correcting cascade.
# One transition per line: input in_state output out_state
# 2-bit input, 4-bit state (S1 S0 I1 I0), 4-bit output. 64 rows, total.
00 0000 0000 0000
01 0000 0011 0010
10 0000 1100 1000
11 0000 1111 1010
00 0001 0011 0000
01 0001 0000 0010
10 0001 1111 1000
11 0001 1100 1010
00 0010 0010 0001
01 0010 0001 0011
10 0010 1110 1011
11 0010 1101 1011
00 0011 0001 0001
01 0011 0010 0011
10 0011 1101 1011
11 0011 1110 1011
00 0100 1100 0000
01 0100 1111 0010
10 0100 0000 1000
11 0100 0011 1010
00 0101 1111 0000
01 0101 1100 0010
10 0101 0011 1000
11 0101 0000 1010
00 0110 1110 0001
01 0110 1101 0011
10 0110 0010 1001
11 0110 0001 1011
00 0111 1101 0001
01 0111 1110 0011
10 0111 0001 1001
11 0111 0010 1011
00 1000 1000 0100
01 1000 1011 0110
10 1000 0100 1100
11 1000 0111 1110
00 1001 1011 0100
01 1001 1000 0110
10 1001 0111 1100
11 1001 0100 1110
00 1010 1010 0101
01 1010 1001 0111
10 1010 0101 1101
11 1010 0101 1111
00 1011 1001 0101
01 1011 1010 0111
10 1011 0101 1101
11 1011 0101 1111
00 1100 0100 0100
01 1100 0111 0110
10 1100 1000 1100
11 1100 1011 1110
00 1101 0101 0100
01 1101 0100 0110
10 1101 1010 0110
11 1101 1011 1100
00 1110 0110 0101
01 1110 0101 0111
10 1110 1001 1101
11 1110 1001 1111
00 1111 0101 0101
01 1111 0110 0111
10 1111 1001 1101
11 1111 1010 1111
)tbl";

inline Transducer make_cascade4x23_stage1() { return load_transducer_table(std::string(kCascade4x23Stage1Table)); }
inline Transducer make_cascade4x23_stage2() { return load_transducer_table(std::string(kCascade4x23Stage2Table)); }

// The 8x8 generator matrices of the demo key. g0 couples each input bit to
// the next lower output; g2 taps the second register; the middle register is
// unused (zero matrix).
inline GF2Matrix demo8_g0() {
    return gf2_from_rows({
        "11000000", "01000000", "00100000", "00010000",
        "00001000", "00000100", "00000010", "00000001"});
}

inline GF2Matrix demo8_g2() {
    return gf2_from_rows({
        "10000000", "01100000", "00110000", "00011000",
        "00001100", "00000110", "00000010", "00000001"});
}

// Demo transducer: two matrix sets with input-range switching. Set 0 keeps
// low inputs (0x00-0x07) and hands everything else to set 1; set 1 keeps
// low inputs (0x00-0x7F) and hands the top half back.
inline Transducer make_demo8_transducer() {
    LinearStageSpec spec;
    spec.k = 8;
    spec.sets.push_back({{demo8_g0(), gf2_zero(8), demo8_g2()}});
    spec.sets.push_back({{demo8_g0(), gf2_zero(8), gf2_zero(8)}});
    spec.transitions.push_back({{0x00, 0x07, 0}, {0x08, 0xff, 1}});
    spec.transitions.push_back({{0x00, 0x7f, 1}, {0x80, 0xff, 0}});
    return compile_linear_transducer(spec);
}

// The four 2-bit substitution boxes of the demo key, applied to bit pairs
// MSB-first (boxes[0] shuffles the two leftmost bits).
inline SBoxLayer make_demo8_sbox_layer() {
    SBoxLayer layer;
    layer.box_width = 2;
    layer.boxes = {
        {0b00, 0b11, 0b10, 0b01},
        {0b01, 0b00, 0b11, 0b10},
        {0b10, 0b01, 0b00, 0b11},
        {0b11, 0b10, 0b01, 0b00},
    };
    return layer;
}

// Full bit reversal: position 1 (MSB) trades places with position 8.
inline PBoxLayer make_demo8_pbox_layer() {
    return PBoxLayer{{8, 7, 6, 5, 4, 3, 2, 1}};
}

inline CascadeKey make_demo8_cascade() {
    CascadeKey key;
    key.name = "demo8";
    key.stages = {make_demo8_transducer(), make_demo8_transducer()};
    key.interstage = {{make_demo8_sbox_layer(), make_demo8_pbox_layer()}};
    validate_cascade(key);
    return key;
}

// Interstage key of the error-correcting cascade: XOR each 2-bit symbol with
// 10, then swap the pair. Both are the unique single-box solutions consistent
// with the cascade's published stage traces.
inline SBoxLayer make_fig4x23_sbox_layer() {
    SBoxLayer layer;
    layer.box_width = 2;
    layer.boxes = {{0b10, 0b11, 0b00, 0b01}};
    return layer;
}

inline PBoxLayer make_fig4x23_pbox_layer() { return PBoxLayer{{2, 1}}; }

inline CascadeKey make_fig4x23_cascade() {
    CascadeKey key;
    key.name = "fig4x23";
    key.stages = {make_cascade4x23_stage1(), make_cascade4x23_stage2()};
    key.interstage = {{make_fig4x23_sbox_layer(), make_fig4x23_pbox_layer()}};
    validate_cascade(key);
    return key;
}

// Single pass-through stage over 8-bit symbols.
inline CascadeKey make_identity_cascade() {
    LinearStageSpec spec;
    spec.k = 8;
    spec.sets.push_back({{gf2_identity(8)}});
    spec.transitions.push_back({{0x00, 0xff, 0}});
    CascadeKey key;
    key.name = "identity";
    key.stages = {compile_linear_transducer(spec)};
    validate_cascade(key);
    return key;
}

// Looks up a built-in transducer table by the name used in key bundles.
inline const char* builtin_table_text(const std::string& name) {
    if (name == "cascade4x23_stage1") return kCascade4x23Stage1Table;
    if (name == "cascade4x23_stage2") return kCascade4x23Stage2Table;
    return nullptr;
}

} // namespace xlsec
