#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "xlsec/convcrypt.hpp"

namespace xlsec {

struct TrellisEdge {
    std::uint32_t from = 0;
    std::uint32_t input = 0;
    std::uint32_t output = 0;
    std::uint32_t to = 0;

    bool operator==(const TrellisEdge&) const = default;
};

// Decode graph of a transducer: one edge per (state, input), ordered by
// (from, input) so edge lookup is indexed.
struct Trellis {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t state_bits = 0;
    std::uint32_t num_states = 0;
    std::uint32_t initial_state = 0;
    std::vector<TrellisEdge> edges;

    const TrellisEdge& edge(std::uint32_t from, std::uint32_t input) const {
        return edges[(std::size_t(from) << k) | input];
    }
};

// Materializes the decode graph. Refuses transducers whose state space is too
// big to enumerate; those are meant for algebraic decryption, not trellis
// search.
inline Trellis build_trellis(const Transducer& t) {
    const std::uint64_t edge_count = t.num_states() << t.k();
    if (edge_count > (std::uint64_t(1) << 22))
        throw value_error("build_trellis: " + std::to_string(edge_count) +
                          " edges exceed the trellis size cap");
    Trellis tr;
    tr.k = t.k();
    tr.n = t.n();
    tr.state_bits = t.state_bits();
    tr.num_states = static_cast<std::uint32_t>(t.num_states());
    tr.initial_state = t.initial_state();
    tr.edges.reserve(edge_count);
    for (std::uint32_t s = 0; s < tr.num_states; ++s)
        for (std::uint32_t u = 0; u < (1u << tr.k); ++u) {
            const TransducerStep st = t.step(s, u);
            tr.edges.push_back({s, u, st.output, st.next_state});
        }
    return tr;
}

struct DecodeOptions {
    // Constrain the winning path to end in the all-zero state. Appropriate
    // only for a stage whose own input stream was zero-terminated.
    bool require_zero_final = false;
    // When nonzero, the winner must have a state id below this bound. Cascade
    // decoding uses it to pin the leading component of a product state while
    // leaving the trailing components free. Ignored if require_zero_final.
    std::uint32_t final_state_below = 0;
};

struct DecodeResult {
    Bits input;
    std::size_t agreements = 0;
    std::uint32_t final_state = 0;
};

// Survivor snapshot: the winning way to be in `state` after `step` symbols.
struct TraceRow {
    std::size_t step = 0;
    std::uint32_t state = 0;
    std::size_t metric = 0; // cumulative bit agreements

    bool operator==(const TraceRow&) const = default;
};

struct DecodeTrace {
    std::size_t state_bits = 0;
    std::vector<TraceRow> rows;
};

inline std::string trace_to_csv(const DecodeTrace& trace) {
    std::string out = "step,state,metric\n";
    for (const auto& r : trace.rows) {
        out += std::to_string(r.step);
        out += ',';
        out += bits_to_string(bits_from_uint(r.state, trace.state_bits));
        out += ',';
        out += std::to_string(r.metric);
        out += '\n';
    }
    return out;
}

// Maximum-agreement Viterbi search (equivalently minimum Hamming distance).
// The path always starts in the all-zero state. Per-state survivor ties go to
// the smaller input symbol, then the smaller predecessor id; a free final
// selection tie goes to the smallest final state id, so decodes are fully
// deterministic.
inline DecodeResult decode_block(const Trellis& tr, const Bits& received,
                                 const DecodeOptions& opts = {}, DecodeTrace* trace = nullptr) {
    if (received.size() % tr.n != 0)
        throw value_error("decode_block: received length " + std::to_string(received.size()) +
                          " is not a multiple of n = " + std::to_string(tr.n));
    const std::size_t steps = received.size() / tr.n;
    constexpr std::int64_t kUnreached = -1;
    std::vector<std::int64_t> metric(tr.num_states, kUnreached);
    metric[tr.initial_state] = 0;
    struct Back { std::uint32_t from, input; };
    std::vector<std::vector<Back>> back(steps, std::vector<Back>(tr.num_states));
    if (trace) {
        trace->state_bits = tr.state_bits;
        trace->rows.clear();
    }
    std::vector<std::int64_t> next(tr.num_states);
    std::vector<Back> choice(tr.num_states);
    for (std::size_t s = 0; s < steps; ++s) {
        const auto rsym = static_cast<std::uint32_t>(uint_from_bits(received, s * tr.n, tr.n));
        std::fill(next.begin(), next.end(), kUnreached);
        for (std::uint32_t from = 0; from < tr.num_states; ++from) {
            if (metric[from] == kUnreached) continue;
            for (std::uint32_t u = 0; u < (1u << tr.k); ++u) {
                const TrellisEdge& e = tr.edge(from, u);
                const auto agree = static_cast<std::int64_t>(
                    tr.n - std::popcount(e.output ^ rsym));
                const std::int64_t cand = metric[from] + agree;
                std::int64_t& cur = next[e.to];
                Back& pick = choice[e.to];
                if (cand > cur ||
                    (cand == cur && (u < pick.input || (u == pick.input && from < pick.from)))) {
                    cur = cand;
                    pick = {from, u};
                }
            }
        }
        metric = next;
        for (std::uint32_t st = 0; st < tr.num_states; ++st)
            if (metric[st] != kUnreached) {
                back[s][st] = choice[st];
                if (trace)
                    trace->rows.push_back({s + 1, st, static_cast<std::size_t>(metric[st])});
            }
    }
    std::uint32_t best_state = 0;
    if (opts.require_zero_final) {
        if (metric[0] == kUnreached)
            throw decode_error("decode_block: no path reaches the all-zero final state");
    } else {
        std::uint32_t limit = tr.num_states;
        if (opts.final_state_below && opts.final_state_below < limit)
            limit = opts.final_state_below;
        std::int64_t best = kUnreached;
        for (std::uint32_t st = 0; st < limit; ++st)
            if (metric[st] > best) { best = metric[st]; best_state = st; }
        if (best == kUnreached)
            throw decode_error("decode_block: no surviving path ends in an allowed final state");
    }
    DecodeResult res;
    res.final_state = best_state;
    res.agreements = static_cast<std::size_t>(metric[best_state]);
    res.input.resize(steps * tr.k);
    std::uint32_t cur = best_state;
    for (std::size_t s = steps; s-- > 0;) {
        const Back& b = back[s][cur];
        const Bits ub = bits_from_uint(b.input, tr.k);
        std::copy(ub.begin(), ub.end(), res.input.begin() + s * tr.k);
        cur = b.from;
    }
    return res;
}

struct CascadeDecodeOptions {
    // The encoder appended zero bits to flush the first stage; constrain the
    // winning path accordingly and verify the recovered tail is zero.
    bool zero_terminated = true;
};

// Product trellis of a whole cascade: one composite state per tuple of stage
// states with the first stage in the most significant position, one edge per
// (composite state, first-stage input symbol). Each edge's output is what the
// last stage emits once the symbol has been pushed through every stage and
// every interstage box.
inline Trellis build_cascade_trellis(const CascadeKey& key) {
    validate_cascade(key);
    const std::size_t n_stages = key.stages.size();
    std::uint64_t states = 1;
    std::size_t state_bits = 0;
    for (const auto& st : key.stages) {
        states *= st.num_states();
        state_bits += st.state_bits();
    }
    const std::size_t k1 = key.stages.front().k();
    const std::uint64_t edge_count = states << k1;
    if (edge_count > (std::uint64_t(1) << 22))
        throw value_error("build_cascade_trellis: " + std::to_string(edge_count) +
                          " edges exceed the trellis size cap");
    // suffix[i] = combined state count of the stages after stage i
    std::vector<std::uint64_t> suffix(n_stages, 1);
    for (std::size_t i = n_stages - 1; i-- > 0;)
        suffix[i] = suffix[i + 1] * key.stages[i + 1].num_states();
    Trellis tr;
    tr.k = k1;
    tr.n = key.stages.back().n();
    tr.state_bits = state_bits;
    tr.num_states = static_cast<std::uint32_t>(states);
    std::uint64_t init = 0;
    for (std::size_t i = 0; i < n_stages; ++i)
        init += key.stages[i].initial_state() * suffix[i];
    tr.initial_state = static_cast<std::uint32_t>(init);
    tr.edges.reserve(edge_count);
    for (std::uint32_t id = 0; id < tr.num_states; ++id)
        for (std::uint32_t u = 0; u < (1u << k1); ++u) {
            std::uint32_t sym = u;
            std::uint64_t to = 0;
            for (std::size_t i = 0; i < n_stages; ++i) {
                const auto s_i =
                    static_cast<std::uint32_t>((id / suffix[i]) % key.stages[i].num_states());
                const TransducerStep step = key.stages[i].step(s_i, sym);
                to += step.next_state * suffix[i];
                sym = step.output;
                if (i + 1 < n_stages) {
                    Bits b = bits_from_uint(sym, key.stages[i].n());
                    b = sbox_apply(key.interstage[i].sbox, b, false);
                    b = pbox_apply(key.interstage[i].pbox, b, false);
                    sym = static_cast<std::uint32_t>(uint_from_bits(b, 0, b.size()));
                }
            }
            tr.edges.push_back({id, u, sym, static_cast<std::uint32_t>(to)});
        }
    return tr;
}

// Trellis decoding of a cascade as a single machine. Searching the product of
// the stage state spaces couples the stages: the first stage's termination
// constrains which last-stage paths are admissible. Decoding one stage at a
// time loses that coupling and mis-corrects flips near the end of the block,
// where the last stage alone has too little distance left. Returns the full
// recovered first-stage input, termination tail included.
inline Bits cascade_decode(const CascadeKey& key, const Bits& received,
                           const CascadeDecodeOptions& opts = {}) {
    const Trellis tr = build_cascade_trellis(key);
    DecodeOptions dopt;
    if (opts.zero_terminated) {
        std::uint64_t rest = 1;
        for (std::size_t i = 1; i < key.stages.size(); ++i) rest *= key.stages[i].num_states();
        // ids below `rest` are exactly those whose first-stage registers are zero
        dopt.final_state_below = static_cast<std::uint32_t>(rest);
    }
    Bits seq = decode_block(tr, received, dopt).input;
    if (opts.zero_terminated) {
        const std::size_t tail = cascade_termination_bits(key);
        if (seq.size() < tail)
            throw decode_error("cascade_decode: block shorter than the termination tail");
        for (std::size_t i = seq.size() - tail; i < seq.size(); ++i)
            if (seq[i])
                throw decode_error("cascade_decode: nonzero termination tail after decode");
    }
    return seq;
}

} // namespace xlsec
