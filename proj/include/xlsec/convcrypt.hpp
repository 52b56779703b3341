#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "xlsec/bits.hpp"
#include "xlsec/errors.hpp"
#include "xlsec/gf2.hpp"
#include "xlsec/rng.hpp"

namespace xlsec {

// ---------------------------------------------------------------------------
// Transducer: a finite-state machine consuming k input bits and emitting n
// output bits per step. Two interchangeable cores:
//   TableCore  - explicit (state, input) -> (output, next) rows, as loaded
//                from a transition-table file.
//   LinearCore - output computed from keyed generator matrices over GF(2)
//                with a shift register of `memory` k-bit symbols and a keyed
//                state-set switching function. Equivalent to an explicit
//                table but never materialized (the table can be huge).
// State ids are integers; the all-zero id is always the initial state.
// ---------------------------------------------------------------------------

struct TransducerStep {
    std::uint32_t output = 0;
    std::uint32_t next_state = 0;

    bool operator==(const TransducerStep&) const = default;
};

struct TableCore {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t state_bits = 0;
    // indexed by (state << k) | input
    std::vector<TransducerStep> rows;

    bool operator==(const TableCore&) const = default;
};

// Half-open is avoided on purpose: ranges are inclusive [lo, hi] so a full
// 32-bit input space stays representable.
struct TransitionRange {
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;
    std::uint32_t next_set = 0;

    bool operator==(const TransitionRange&) const = default;
};

// One named state-set: the generator matrices selected while the machine is
// in that set. matrices[0] acts on the current input, matrices[i] on the
// i-th most recent register.
struct LinearStateSet {
    std::vector<GF2Matrix> matrices; // size memory + 1

    bool operator==(const LinearStateSet&) const = default;
};

struct LinearCore {
    std::size_t k = 0;      // input width == output width
    std::size_t memory = 0; // shift-register depth in symbols
    std::vector<LinearStateSet> sets;
    std::vector<std::vector<TransitionRange>> transitions; // per set, sorted by lo
    std::uint32_t initial_set = 0;

    bool operator==(const LinearCore&) const = default;
};

class Transducer {
public:
    Transducer() = default;
    explicit Transducer(TableCore core) : core_(std::move(core)) {}
    explicit Transducer(LinearCore core) : core_(std::move(core)) {}

    bool is_table() const { return std::holds_alternative<TableCore>(core_); }
    const TableCore& table() const { return std::get<TableCore>(core_); }
    const LinearCore& linear() const { return std::get<LinearCore>(core_); }

    std::size_t k() const {
        return is_table() ? table().k : linear().k;
    }
    std::size_t n() const {
        return is_table() ? table().n : linear().k;
    }
    std::size_t state_bits() const {
        if (is_table()) return table().state_bits;
        const auto& lc = linear();
        std::size_t set_bits = 0;
        while ((std::size_t(1) << set_bits) < lc.sets.size()) ++set_bits;
        return set_bits + lc.k * lc.memory;
    }
    std::uint64_t num_states() const {
        if (is_table()) return std::uint64_t(1) << table().state_bits;
        const auto& lc = linear();
        return std::uint64_t(lc.sets.size()) << (lc.k * lc.memory);
    }
    // Zero-termination tail length: enough zero bits to flush the registers.
    std::size_t termination_bits() const {
        return is_table() ? table().state_bits : linear().k * linear().memory;
    }
    std::uint32_t initial_state() const { return 0; }

    TransducerStep step(std::uint32_t state, std::uint32_t input) const {
        if (is_table()) {
            const auto& tc = table();
            return tc.rows[(std::size_t(state) << tc.k) | input];
        }
        const auto& lc = linear();
        const std::uint32_t reg_bits = static_cast<std::uint32_t>(lc.k * lc.memory);
        const std::uint32_t set = state >> reg_bits;
        std::uint32_t out = gf2_mul_vec(lc.sets[set].matrices[0], input);
        for (std::size_t i = 1; i <= lc.memory; ++i) {
            const std::uint32_t reg =
                (state >> (lc.k * (lc.memory - i))) & ((1u << lc.k) - 1u);
            out ^= gf2_mul_vec(lc.sets[set].matrices[i], reg);
        }
        std::uint32_t next_set = set;
        for (const auto& r : lc.transitions[set])
            if (input >= r.lo && input <= r.hi) { next_set = r.next_set; break; }
        std::uint32_t regs = state & ((reg_bits >= 32 ? 0u : (1u << reg_bits)) - 1u);
        if (lc.memory > 0) {
            regs = ((input << (lc.k * (lc.memory - 1))) |
                    (regs >> lc.k)) & ((1u << reg_bits) - 1u);
        }
        return {out, (next_set << reg_bits) | regs};
    }

    bool operator==(const Transducer&) const = default;

private:
    std::variant<TableCore, LinearCore> core_;
};

// ---------------------------------------------------------------------------
// Construction and validation
// ---------------------------------------------------------------------------

struct LinearStageSpec {
    std::size_t k = 0;
    std::vector<LinearStateSet> sets;
    std::vector<std::vector<TransitionRange>> transitions;
    std::uint32_t initial_set = 0;
};

// Builds a keyed linear transducer. Validates the key: all matrix lists the
// same length, all matrices k x k, and every set's transition ranges must
// partition the whole k-bit input space.
inline Transducer compile_linear_transducer(const LinearStageSpec& spec) {
    if (spec.k == 0 || spec.k > 16) throw key_error("linear transducer: k must be in [1, 16]");
    if (spec.sets.empty()) throw key_error("linear transducer: no state sets");
    if (spec.transitions.size() != spec.sets.size())
        throw key_error("linear transducer: one transition function required per state set");
    if (spec.initial_set >= spec.sets.size())
        throw key_error("linear transducer: initial set out of range");
    const std::size_t arity = spec.sets.front().matrices.size();
    if (arity == 0) throw key_error("linear transducer: need at least the input matrix g0");
    for (const auto& s : spec.sets) {
        if (s.matrices.size() != arity)
            throw key_error("linear transducer: state sets disagree on matrix count");
        for (const auto& m : s.matrices)
            if (m.n != spec.k)
                throw key_error("linear transducer: matrices must be " + std::to_string(spec.k) + "x" +
                                std::to_string(spec.k));
    }
    const std::uint64_t top = (std::uint64_t(1) << spec.k) - 1;
    LinearCore lc;
    lc.k = spec.k;
    lc.memory = arity - 1;
    lc.sets = spec.sets;
    lc.initial_set = spec.initial_set;
    for (std::size_t s = 0; s < spec.transitions.size(); ++s) {
        auto ranges = spec.transitions[s];
        std::sort(ranges.begin(), ranges.end(),
                  [](const TransitionRange& a, const TransitionRange& b) { return a.lo < b.lo; });
        std::uint64_t expect = 0;
        for (const auto& r : ranges) {
            if (r.lo != expect || r.hi < r.lo || r.hi > top)
                throw key_error("linear transducer: transition ranges of set " + std::to_string(s) +
                                " do not partition the input space");
            if (r.next_set >= spec.sets.size())
                throw key_error("linear transducer: transition target out of range");
            expect = std::uint64_t(r.hi) + 1;
        }
        if (expect != top + 1)
            throw key_error("linear transducer: transition ranges of set " + std::to_string(s) +
                            " do not cover the input space");
        lc.transitions.push_back(std::move(ranges));
    }
    std::size_t set_bits = 0;
    while ((std::size_t(1) << set_bits) < lc.sets.size()) ++set_bits;
    if (lc.k * lc.memory + set_bits > 31)
        throw key_error("linear transducer: state space too large");
    // Initial state must be the all-zero id; renumber so the initial set is 0.
    if (lc.initial_set != 0) {
        std::swap(lc.sets[0], lc.sets[lc.initial_set]);
        std::swap(lc.transitions[0], lc.transitions[lc.initial_set]);
        for (auto& trs : lc.transitions)
            for (auto& r : trs) {
                if (r.next_set == 0) r.next_set = lc.initial_set;
                else if (r.next_set == lc.initial_set) r.next_set = 0;
            }
        lc.initial_set = 0;
    }
    return Transducer(std::move(lc));
}

// Parses a transition-table: one row per line, '#' comments, four binary
// fields "input in_state output out_state". Rows must cover every
// (state, input) pair exactly once.
inline Transducer load_transducer_table(std::istream& in) {
    std::size_t k = 0, n = 0, sb = 0;
    struct Row { std::uint32_t input, state, output, next; };
    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string fi, fs, fo, fn;
        if (!(ls >> fi)) continue; // blank
        if (!(ls >> fs >> fo >> fn))
            throw format_error("transducer table line " + std::to_string(lineno) + ": expected 4 fields");
        std::string extra;
        if (ls >> extra)
            throw format_error("transducer table line " + std::to_string(lineno) + ": trailing field");
        Bits bi = bits_from_string(fi), bs = bits_from_string(fs), bo = bits_from_string(fo),
             bn = bits_from_string(fn);
        if (rows.empty()) {
            k = bi.size();
            sb = bs.size();
            n = bo.size();
            if (k == 0 || k > 16 || sb == 0 || sb > 16 || n == 0 || n > 16 || sb + k > 24)
                throw key_error("transducer table: unsupported widths");
        }
        if (bi.size() != k || bs.size() != sb || bo.size() != n || bn.size() != sb)
            throw format_error("transducer table line " + std::to_string(lineno) + ": inconsistent field widths");
        rows.push_back({static_cast<std::uint32_t>(uint_from_bits(bi)),
                        static_cast<std::uint32_t>(uint_from_bits(bs)),
                        static_cast<std::uint32_t>(uint_from_bits(bo)),
                        static_cast<std::uint32_t>(uint_from_bits(bn))});
    }
    if (rows.empty()) throw format_error("transducer table: no rows");
    TableCore tc;
    tc.k = k;
    tc.n = n;
    tc.state_bits = sb;
    const std::size_t total = std::size_t(1) << (sb + k);
    tc.rows.assign(total, TransducerStep{});
    std::vector<bool> seen(total, false);
    for (const auto& r : rows) {
        const std::size_t idx = (std::size_t(r.state) << k) | r.input;
        if (seen[idx])
            throw key_error("transducer table: duplicate row for state " +
                            bits_to_string(bits_from_uint(r.state, sb)) + " input " +
                            bits_to_string(bits_from_uint(r.input, k)));
        seen[idx] = true;
        tc.rows[idx] = {r.output, r.next};
    }
    for (std::size_t idx = 0; idx < total; ++idx)
        if (!seen[idx])
            throw key_error("transducer table: missing row for state " +
                            bits_to_string(bits_from_uint(static_cast<std::uint32_t>(idx >> k), sb)) +
                            " input " +
                            bits_to_string(bits_from_uint(static_cast<std::uint32_t>(idx & ((1u << k) - 1)), k)));
    return Transducer(std::move(tc));
}

inline Transducer load_transducer_table(const std::string& text) {
    std::istringstream in(text);
    return load_transducer_table(in);
}

// Encodes one block, starting from the initial state. Input length must be a
// multiple of k; output is the concatenation of the per-step n-bit outputs.
inline Bits encode_block(const Transducer& t, const Bits& input) {
    const std::size_t k = t.k(), n = t.n();
    if (input.size() % k != 0)
        throw value_error("encode_block: input length " + std::to_string(input.size()) +
                          " is not a multiple of k = " + std::to_string(k));
    Bits out;
    out.reserve(input.size() / k * n);
    std::uint32_t state = t.initial_state();
    for (std::size_t pos = 0; pos < input.size(); pos += k) {
        const auto u = static_cast<std::uint32_t>(uint_from_bits(input, pos, k));
        const TransducerStep s = t.step(state, u);
        append_bits(out, bits_from_uint(s.output, n));
        state = s.next_state;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interstage layers
// ---------------------------------------------------------------------------

// Parallel bank of same-width bijective substitution boxes; the bank width
// (box count times box width) must equal the symbol width it is applied to.
struct SBoxLayer {
    std::size_t box_width = 0;
    std::vector<std::vector<std::uint8_t>> boxes; // each size 1 << box_width

    std::size_t width() const { return box_width * boxes.size(); }
    bool operator==(const SBoxLayer&) const = default;
};

inline void validate_sbox_layer(const SBoxLayer& layer) {
    if (layer.box_width == 0 || layer.box_width > 8)
        throw key_error("sbox layer: box width must be in [1, 8]");
    if (layer.boxes.empty()) throw key_error("sbox layer: no boxes");
    const std::size_t domain = std::size_t(1) << layer.box_width;
    for (std::size_t b = 0; b < layer.boxes.size(); ++b) {
        const auto& box = layer.boxes[b];
        if (box.size() != domain)
            throw key_error("sbox layer: box " + std::to_string(b) + " has wrong size");
        std::vector<bool> hit(domain, false);
        for (std::uint8_t v : box) {
            if (v >= domain || hit[v])
                throw key_error("sbox layer: box " + std::to_string(b) + " is not a bijection");
            hit[v] = true;
        }
    }
}

inline Bits sbox_apply(const SBoxLayer& layer, const Bits& symbol, bool inverse) {
    if (symbol.size() != layer.width())
        throw value_error("sbox_apply: symbol width " + std::to_string(symbol.size()) +
                          " != layer width " + std::to_string(layer.width()));
    const std::size_t w = layer.box_width;
    Bits out(symbol.size());
    for (std::size_t b = 0; b < layer.boxes.size(); ++b) {
        const auto v = static_cast<std::uint8_t>(uint_from_bits(symbol, b * w, w));
        std::uint8_t mapped;
        if (!inverse) {
            mapped = layer.boxes[b][v];
        } else {
            mapped = 0;
            for (std::size_t i = 0; i < layer.boxes[b].size(); ++i)
                if (layer.boxes[b][i] == v) { mapped = static_cast<std::uint8_t>(i); break; }
        }
        const Bits mb = bits_from_uint(mapped, w);
        std::copy(mb.begin(), mb.end(), out.begin() + b * w);
    }
    return out;
}

// Bit-position permutation. Positions are 1-based MSB-first in the external
// interface ("bit position 1" is the leftmost); perm(i) is where input
// position i lands.
struct PBoxLayer {
    std::vector<std::uint32_t> perm; // 1-based images, perm[i-1] = perm(i)

    std::size_t width() const { return perm.size(); }
    bool operator==(const PBoxLayer&) const = default;
};

inline void validate_pbox_layer(const PBoxLayer& layer) {
    const std::size_t n = layer.perm.size();
    if (n == 0) throw key_error("pbox layer: empty permutation");
    std::vector<bool> hit(n, false);
    for (std::uint32_t p : layer.perm) {
        if (p < 1 || p > n || hit[p - 1])
            throw key_error("pbox layer: not a permutation of 1.." + std::to_string(n));
        hit[p - 1] = true;
    }
}

inline Bits pbox_apply(const PBoxLayer& layer, const Bits& symbol, bool inverse) {
    const std::size_t n = layer.width();
    if (symbol.size() != n)
        throw value_error("pbox_apply: symbol width " + std::to_string(symbol.size()) +
                          " != permutation size " + std::to_string(n));
    Bits out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t to = layer.perm[i] - 1;
        if (!inverse) out[to] = symbol[i];
        else out[i] = symbol[to];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cascade
// ---------------------------------------------------------------------------

struct InterstageLayer {
    SBoxLayer sbox;
    PBoxLayer pbox;

    bool operator==(const InterstageLayer&) const = default;
};

struct CascadeKey {
    std::string name; // free-form label, carried through serialization
    std::vector<Transducer> stages;
    std::vector<InterstageLayer> interstage; // one per gap between stages

    bool operator==(const CascadeKey&) const = default;
};

// Width chain: stage i output feeds the i-th interstage layer and then
// stage i+1, all at the same symbol width.
inline void validate_cascade(const CascadeKey& key) {
    if (key.stages.empty()) throw key_error("cascade: no stages");
    if (key.interstage.size() + 1 != key.stages.size())
        throw key_error("cascade: need exactly one interstage layer per stage gap");
    for (std::size_t i = 0; i + 1 < key.stages.size(); ++i) {
        const std::size_t w = key.stages[i].n();
        validate_sbox_layer(key.interstage[i].sbox);
        validate_pbox_layer(key.interstage[i].pbox);
        if (key.interstage[i].sbox.width() != w || key.interstage[i].pbox.width() != w ||
            key.stages[i + 1].k() != w)
            throw key_error("cascade: width chain broken after stage " + std::to_string(i));
    }
}

inline bool cascade_is_redundant(const CascadeKey& key) {
    for (const auto& s : key.stages)
        if (s.n() > s.k()) return true;
    return false;
}

inline std::size_t cascade_input_width(const CascadeKey& key) { return key.stages.front().k(); }
inline std::size_t cascade_output_width(const CascadeKey& key) { return key.stages.back().n(); }

// Zero bits to append per block so the first stage's registers flush.
inline std::size_t cascade_termination_bits(const CascadeKey& key) {
    return key.stages.front().termination_bits();
}

// Product-cipher encryption: per step, k1 input bits pass through stage 0,
// then its output symbol is substituted and permuted and fed to stage 1, and
// so on. All stages start from their initial states.
inline Bits cascade_encrypt(const CascadeKey& key, const Bits& data) {
    validate_cascade(key);
    const std::size_t k1 = cascade_input_width(key);
    if (data.size() % k1 != 0)
        throw value_error("cascade_encrypt: input length " + std::to_string(data.size()) +
                          " is not a multiple of the first-stage width " + std::to_string(k1));
    std::vector<std::uint32_t> state(key.stages.size());
    for (std::size_t i = 0; i < key.stages.size(); ++i) state[i] = key.stages[i].initial_state();
    const std::size_t n_out = cascade_output_width(key);
    Bits out;
    out.reserve(data.size() / k1 * n_out);
    for (std::size_t pos = 0; pos < data.size(); pos += k1) {
        std::uint32_t sym = static_cast<std::uint32_t>(uint_from_bits(data, pos, k1));
        for (std::size_t i = 0; i < key.stages.size(); ++i) {
            const TransducerStep st = key.stages[i].step(state[i], sym);
            state[i] = st.next_state;
            sym = st.output;
            if (i + 1 < key.stages.size()) {
                Bits b = bits_from_uint(sym, key.stages[i].n());
                b = sbox_apply(key.interstage[i].sbox, b, false);
                b = pbox_apply(key.interstage[i].pbox, b, false);
                sym = static_cast<std::uint32_t>(uint_from_bits(b));
            }
        }
        append_bits(out, bits_from_uint(sym, n_out));
    }
    return out;
}

namespace detail {

// Per-state output inversion for one rate-1 stage, or nullopt when some state
// reuses an output (then only trellis decoding can invert the stage).
struct StageInverter {
    const Transducer* t = nullptr;
    // table stages: inverse lookup per state; linear stages: g0 inverses per set
    std::vector<std::int32_t> table_inv; // (state << n) | output -> input, -1 invalid
    std::vector<GF2Matrix> g0_inv;

    std::uint32_t invert(std::uint32_t state, std::uint32_t output) const {
        if (t->is_table()) {
            const std::int32_t u = table_inv[(std::size_t(state) << t->n()) | output];
            if (u < 0)
                throw decode_error("cascade_decrypt: output symbol impossible in current state");
            return static_cast<std::uint32_t>(u);
        }
        const auto& lc = t->linear();
        const std::uint32_t reg_bits = static_cast<std::uint32_t>(lc.k * lc.memory);
        const std::uint32_t set = state >> reg_bits;
        std::uint32_t c = 0;
        for (std::size_t i = 1; i <= lc.memory; ++i) {
            const std::uint32_t reg = (state >> (lc.k * (lc.memory - i))) & ((1u << lc.k) - 1u);
            c ^= gf2_mul_vec(lc.sets[set].matrices[i], reg);
        }
        return gf2_mul_vec(g0_inv[set], output ^ c);
    }
};

inline std::optional<StageInverter> make_stage_inverter(const Transducer& t) {
    if (t.n() != t.k()) return std::nullopt;
    StageInverter inv;
    inv.t = &t;
    if (t.is_table()) {
        const auto& tc = t.table();
        const std::size_t states = std::size_t(1) << tc.state_bits;
        inv.table_inv.assign(states << tc.n, -1);
        for (std::size_t s = 0; s < states; ++s)
            for (std::uint32_t u = 0; u < (1u << tc.k); ++u) {
                const auto& row = tc.rows[(s << tc.k) | u];
                auto& slot = inv.table_inv[(s << tc.n) | row.output];
                if (slot != -1) return std::nullopt; // output reused: not invertible
                slot = static_cast<std::int32_t>(u);
            }
        return inv;
    }
    for (const auto& set : t.linear().sets) {
        auto g = gf2_try_inverse(set.matrices[0]);
        if (!g) return std::nullopt;
        inv.g0_inv.push_back(std::move(*g));
    }
    return inv;
}

} // namespace detail

// Exact algebraic inverse of cascade_encrypt. Requires every stage to be
// rate-1 with a per-state bijective output map; otherwise the cascade can
// only be decoded with the trellis decoder and requires_viterbi is thrown.
inline Bits cascade_decrypt(const CascadeKey& key, const Bits& data) {
    validate_cascade(key);
    std::vector<detail::StageInverter> inverters;
    for (const auto& s : key.stages) {
        auto inv = detail::make_stage_inverter(s);
        if (!inv)
            throw requires_viterbi("cascade_decrypt: stage is not rate-1 invertible; use the trellis decoder");
        inverters.push_back(std::move(*inv));
    }
    const std::size_t n_out = cascade_output_width(key);
    if (data.size() % n_out != 0)
        throw value_error("cascade_decrypt: input length " + std::to_string(data.size()) +
                          " is not a multiple of the output width " + std::to_string(n_out));
    std::vector<std::uint32_t> state(key.stages.size());
    for (std::size_t i = 0; i < key.stages.size(); ++i) state[i] = key.stages[i].initial_state();
    Bits out;
    out.reserve(data.size());
    for (std::size_t pos = 0; pos < data.size(); pos += n_out) {
        std::uint32_t sym = static_cast<std::uint32_t>(uint_from_bits(data, pos, n_out));
        for (std::size_t i = key.stages.size(); i-- > 0;) {
            const std::uint32_t u = inverters[i].invert(state[i], sym);
            state[i] = key.stages[i].step(state[i], u).next_state;
            sym = u;
            if (i > 0) {
                Bits b = bits_from_uint(sym, key.stages[i].k());
                b = pbox_apply(key.interstage[i - 1].pbox, b, true);
                b = sbox_apply(key.interstage[i - 1].sbox, b, true);
                sym = static_cast<std::uint32_t>(uint_from_bits(b));
            }
        }
        append_bits(out, bits_from_uint(sym, cascade_input_width(key)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Key-space enumerators. These count keys under the library's conventions:
// register-to-adder connection patterns, input-compare mappings, box choices
// and bit-position permutations.
// ---------------------------------------------------------------------------

inline std::uint64_t keyspace_matrix_connections(std::size_t k, std::size_t memory) {
    if (k * memory >= 64) throw value_error("keyspace_matrix_connections: overflow");
    return std::uint64_t(1) << (k * memory);
}

inline std::uint64_t keyspace_transition_functions(std::size_t k) {
    if (k >= 64) throw value_error("keyspace_transition_functions: overflow");
    return std::uint64_t(1) << k;
}

inline std::uint64_t keyspace_sbox(std::size_t num_boxes, std::size_t width) {
    if (width >= 64) throw value_error("keyspace_sbox: overflow");
    return std::uint64_t(num_boxes) << width;
}

inline std::uint64_t keyspace_pbox(std::size_t n) {
    if (n < 2) throw value_error("keyspace_pbox: need n >= 2");
    std::uint64_t r = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (r > ~0ull / (n - 1)) throw value_error("keyspace_pbox: overflow");
        r *= n - 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Random key generation (seeded, reproducible)
// ---------------------------------------------------------------------------

inline GF2Matrix random_invertible_gf2(Rng& rng, std::size_t n) {
    for (;;) {
        GF2Matrix m = gf2_zero(n);
        for (auto& row : m.rows)
            row = static_cast<std::uint32_t>(rng() & ((n == 32 ? 0ull : (1ull << n)) - 1ull));
        if (gf2_invertible(m)) return m;
    }
}

inline GF2Matrix random_gf2(Rng& rng, std::size_t n) {
    GF2Matrix m = gf2_zero(n);
    for (auto& row : m.rows)
        row = static_cast<std::uint32_t>(rng() & ((n == 32 ? 0ull : (1ull << n)) - 1ull));
    return m;
}

inline std::vector<std::uint8_t> random_bijection(Rng& rng, std::size_t domain) {
    std::vector<std::uint8_t> box(domain);
    for (std::size_t i = 0; i < domain; ++i) box[i] = static_cast<std::uint8_t>(i);
    for (std::size_t i = domain; i-- > 1;)
        std::swap(box[i], box[uniform_below(rng, i + 1)]);
    return box;
}

// Two-stage rate-1 cascade over 8-bit symbols with random generator matrices
// (invertible g0, so the key stays algebraically decryptable), random 2-set
// transition partitions, random 2-bit S-boxes and a random 8-bit P-box.
inline CascadeKey random_cascade_key(std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0xca5cade));
    const std::size_t k = 8, memory = 2;
    CascadeKey key;
    key.name = "random";
    for (int stage = 0; stage < 2; ++stage) {
        LinearStageSpec spec;
        spec.k = k;
        for (int set = 0; set < 2; ++set) {
            LinearStateSet s;
            s.matrices.push_back(random_invertible_gf2(rng, k));
            for (std::size_t r = 0; r < memory; ++r) s.matrices.push_back(random_gf2(rng, k));
            spec.sets.push_back(std::move(s));
        }
        for (int set = 0; set < 2; ++set) {
            // random split point; both halves nonempty so the state actually switches
            const auto split = static_cast<std::uint32_t>(1 + uniform_below(rng, (1u << k) - 1));
            const auto lo_target = static_cast<std::uint32_t>(uniform_below(rng, 2));
            spec.transitions.push_back({{0, split - 1, lo_target},
                                        {split, (1u << k) - 1, 1u - lo_target}});
        }
        key.stages.push_back(compile_linear_transducer(spec));
    }
    SBoxLayer sbox;
    sbox.box_width = 2;
    for (int b = 0; b < 4; ++b) sbox.boxes.push_back(random_bijection(rng, 4));
    PBoxLayer pbox;
    {
        auto images = random_bijection(rng, 8);
        for (std::uint8_t v : images) pbox.perm.push_back(v + 1u);
    }
    key.interstage.push_back({std::move(sbox), std::move(pbox)});
    validate_cascade(key);
    return key;
}

} // namespace xlsec
