#include <catch2/catch_amalgamated.hpp>

#include "xlsec/builtin_cascades.hpp"
#include "xlsec/viterbi.hpp"

using namespace xlsec;

TEST_CASE("trellis mirrors the transducer") {
    const Trellis tr = build_trellis(make_cascade4x23_stage2());
    CHECK(tr.k == 2);
    CHECK(tr.n == 4);
    CHECK(tr.state_bits == 4);
    CHECK(tr.num_states == 16);
    CHECK(tr.initial_state == 0);
    CHECK(tr.edges.size() == 64);
    CHECK(tr.edge(0, 3) == TrellisEdge{0, 3, 0b1111, 0b1010});
    CHECK(tr.edge(0b1010, 0b11) == TrellisEdge{0b1010, 0b11, 0b0101, 0b1111});
}

TEST_CASE("trellis construction refuses huge state spaces") {
    CHECK_THROWS_AS(build_trellis(make_demo8_transducer()), value_error);
}

TEST_CASE("first survivor step on a corrupted symbol") {
    const Trellis tr = build_trellis(make_cascade4x23_stage2());
    DecodeTrace trace;
    const DecodeResult res =
        decode_block(tr, bits_from_string("1000111101011001"), {}, &trace);

    // Four states are reachable after one symbol; their survivor metrics are
    // the per-edge bit agreements of 0000/0011/1100/1111 against 1000.
    std::vector<TraceRow> first;
    for (const auto& r : trace.rows)
        if (r.step == 1) first.push_back(r);
    REQUIRE(first.size() == 4);
    CHECK(first[0] == TraceRow{1, 0b0000, 3});
    CHECK(first[1] == TraceRow{1, 0b0010, 1});
    CHECK(first[2] == TraceRow{1, 0b1000, 3});
    CHECK(first[3] == TraceRow{1, 0b1010, 1});

    CHECK(bits_to_string(res.input, 2) == "00 11 11 10");
    CHECK(res.agreements == 15);
    CHECK(res.final_state == 0b1101);
}

TEST_CASE("trace serializes as csv") {
    const Trellis tr = build_trellis(make_cascade4x23_stage2());
    DecodeTrace trace;
    decode_block(tr, bits_from_string("1000"), {}, &trace);
    const std::string csv = trace_to_csv(trace);
    CHECK(csv == "step,state,metric\n"
                 "1,0000,3\n"
                 "1,0010,1\n"
                 "1,1000,3\n"
                 "1,1010,1\n");
}

TEST_CASE("clean codewords decode exactly") {
    const Trellis tr = build_trellis(make_cascade4x23_stage2());
    const DecodeResult res = decode_block(tr, bits_from_string("0000111101011001"));
    CHECK(bits_to_string(res.input) == "00111110");
    CHECK(res.agreements == 16);

    const CascadeKey key = make_fig4x23_cascade();
    CHECK(cascade_decode(key, bits_from_string("0000111101011001")) ==
          bits_from_string("10110000"));
    CascadeDecodeOptions free_final;
    free_final.zero_terminated = false;
    CHECK(cascade_decode(key, bits_from_string("0000111101011001"), free_final) ==
          bits_from_string("10110000"));
}

TEST_CASE("any single bit flip is corrected") {
    const CascadeKey key = make_fig4x23_cascade();
    const Bits clean = cascade_encrypt(key, bits_from_string("10110000"));
    REQUIRE(clean.size() == 16);
    for (std::size_t i = 0; i < clean.size(); ++i) {
        Bits received = clean;
        received[i] = received[i] ^ 1;
        INFO("flipped bit " << i);
        CHECK(cascade_decode(key, received) == bits_from_string("10110000"));
    }
}

TEST_CASE("ties resolve to smaller input then smaller predecessor") {
    // Both inputs from state 0 emit 1 and return to state 0: a pure input
    // tie, settled in favor of the smaller symbol.
    const Transducer in_tie = load_transducer_table("0 0 1 0\n"
                                                    "1 0 1 0\n"
                                                    "0 1 0 1\n"
                                                    "1 1 1 1\n");
    const DecodeResult ri = decode_block(build_trellis(in_tie), bits_from_string("1"));
    CHECK(ri.agreements == 1);
    CHECK(bits_to_string(ri.input) == "0");

    // Survivors from states 0 and 1 collide in state 0 with equal metric and
    // equal input; the smaller predecessor wins, which fixes the first step.
    const Transducer from_tie = load_transducer_table("0 0 1 0\n"
                                                      "1 0 1 1\n"
                                                      "0 1 1 0\n"
                                                      "1 1 0 1\n");
    const DecodeResult rf = decode_block(build_trellis(from_tie), bits_from_string("11"));
    CHECK(rf.agreements == 2);
    CHECK(bits_to_string(rf.input) == "00");
    CHECK(rf.final_state == 0);

    // Free-final tie across states goes to the smallest state id.
    const Trellis tr2 = build_trellis(make_cascade4x23_stage2());
    const DecodeResult amb = decode_block(tr2, bits_from_string("0110"));
    CHECK(amb.agreements == 2);
    CHECK(bits_to_string(amb.input) == "00");
    CHECK(amb.final_state == 0);
}

TEST_CASE("decoding is deterministic") {
    const CascadeKey key = make_fig4x23_cascade();
    const Bits received = bits_from_string("1000111101011001");
    const Bits a = cascade_decode(key, received);
    const Bits b = cascade_decode(key, received);
    CHECK(a == b);
}

TEST_CASE("decode failure modes") {
    const Trellis tr = build_trellis(make_cascade4x23_stage2());
    CHECK_THROWS_AS(decode_block(tr, bits_from_string("00011")), value_error);

    // A machine that leaves state 0 and never comes back cannot satisfy the
    // zero-final constraint.
    const Transducer t = load_transducer_table("0 0 0 1\n"
                                               "1 0 1 1\n"
                                               "0 1 0 1\n"
                                               "1 1 1 1\n");
    DecodeOptions zero_final;
    zero_final.require_zero_final = true;
    CHECK_THROWS_AS(decode_block(build_trellis(t), bits_from_string("0"), zero_final),
                    decode_error);

    // Received block shorter than the termination tail.
    const CascadeKey key = make_fig4x23_cascade();
    CHECK_THROWS_AS(cascade_decode(key, bits_from_string("0000")), decode_error);

    // A machine where input 1 also returns to state 0, so the best zero-final
    // path can carry a nonzero tail; the tail check must reject it.
    const Transducer loop = load_transducer_table("0 0 1 0\n"
                                                  "1 0 0 0\n"
                                                  "0 1 0 0\n"
                                                  "1 1 1 1\n");
    CascadeKey single;
    single.name = "loop";
    single.stages = {loop};
    const Bits word = cascade_encrypt(single, bits_from_string("11"));
    CHECK(word == bits_from_string("00"));
    CHECK_THROWS_AS(cascade_decode(single, word), decode_error);
    CascadeDecodeOptions free_final;
    free_final.zero_terminated = false;
    CHECK(cascade_decode(single, word, free_final) == bits_from_string("11"));
}
