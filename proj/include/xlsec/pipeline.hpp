#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "xlsec/convcrypt.hpp"
#include "xlsec/frames.hpp"
#include "xlsec/keybundle.hpp"
#include "xlsec/rns.hpp"
#include "xlsec/rsa.hpp"
#include "xlsec/signaling.hpp"
#include "xlsec/subband.hpp"
#include "xlsec/viterbi.hpp"

namespace xlsec {

namespace detail {

// Rethrow with the failing pipeline stage named, preserving the dynamic type.
template <typename Fn>
auto pipeline_stage(const char* name, Fn&& fn) -> decltype(fn()) {
    const auto prefix = [name](const std::exception& e) { return std::string(name) + ": " + e.what(); };
    try {
        return fn();
    } catch (const requires_viterbi& e) {
        throw requires_viterbi(prefix(e));
    } catch (const decode_error& e) {
        throw decode_error(prefix(e));
    } catch (const version_error& e) {
        throw version_error(prefix(e));
    } catch (const format_error& e) {
        throw format_error(prefix(e));
    } catch (const key_error& e) {
        throw key_error(prefix(e));
    } catch (const value_error& e) {
        throw value_error(prefix(e));
    } catch (const error& e) {
        throw error(prefix(e));
    }
}

// Step geometry of one cascade pass over a unit of 8-bit symbols.
struct UnitShape {
    std::size_t k1 = 0;            // first-stage input width
    std::size_t n_out = 0;         // last-stage output width
    std::size_t data_row_bits = 0; // encrypted bits per 8-bit symbol
    std::size_t tail_steps = 0;    // zero-input steps appended per unit
    std::size_t tail_input_bits = 0;
    std::size_t tail_row_bits = 0;
    bool redundant = false;

    static UnitShape of(const CascadeKey& key) {
        UnitShape s;
        s.k1 = cascade_input_width(key);
        s.n_out = cascade_output_width(key);
        s.data_row_bits = 8 / s.k1 * s.n_out;
        s.redundant = cascade_is_redundant(key);
        if (s.redundant) {
            const std::size_t term = cascade_termination_bits(key);
            s.tail_steps = (term + s.k1 - 1) / s.k1;
            s.tail_input_bits = s.tail_steps * s.k1;
            s.tail_row_bits = s.tail_steps * s.n_out;
        }
        return s;
    }
};

// Encrypt one subband unit: 8 bits per symbol, zero tail when the cascade
// expands (so the trellis decoder gets a known final state).
inline Bits encode_unit(const CascadeKey& key, const UnitShape& shape,
                        const std::vector<std::uint32_t>& symbols) {
    Bits in;
    in.reserve(symbols.size() * 8 + shape.tail_input_bits);
    for (std::uint32_t sym : symbols) append_bits(in, bits_from_uint(sym, 8));
    in.resize(in.size() + shape.tail_input_bits, 0);
    return cascade_encrypt(key, in);
}

inline std::vector<std::uint32_t> decode_unit(const CascadeKey& key, const UnitShape& shape,
                                              const Bits& received, std::size_t count) {
    Bits data;
    if (shape.redundant) {
        CascadeDecodeOptions opts;
        opts.zero_terminated = shape.tail_input_bits > 0;
        data = cascade_decode(key, received, opts);
        if (data.size() != count * 8 + shape.tail_input_bits)
            throw decode_error("decoded unit has wrong length");
        for (std::size_t i = count * 8; i < data.size(); ++i)
            if (data[i]) throw decode_error("nonzero padding inside the termination tail");
        data.resize(count * 8);
    } else {
        data = cascade_decrypt(key, received);
        if (data.size() != count * 8) throw decode_error("decoded unit has wrong length");
    }
    std::vector<std::uint32_t> symbols(count);
    for (std::size_t i = 0; i < count; ++i)
        symbols[i] = static_cast<std::uint32_t>(uint_from_bits(data, i * 8, 8));
    return symbols;
}

} // namespace detail

struct EncryptOptions {
    // 0 means one block spanning the whole (padded) input; otherwise a
    // power of two and the input is zero-padded to a multiple of it.
    std::size_t block_size = 0;
};

// Full forward pass: canonicalize mod m, RSA, residues per modulus, multilevel
// lifting per residue sequence, cascade encryption per (block, modulus, level)
// unit. Deterministic: no randomness anywhere on this side.
inline FrameSet encrypt_pipeline(const KeyBundle& kb, const std::vector<BigUint>& plaintext,
                                 const EncryptOptions& options = {}) {
    validate_bundle(kb);
    if (plaintext.empty()) throw value_error("encrypt_pipeline: plaintext is empty");
    if (kb.rsa.m > kb.moduli.M)
        throw key_error("encrypt_pipeline: rsa modulus " + kb.rsa.m.str() +
                        " exceeds the residue range " + kb.moduli.M.str());

    std::size_t block = options.block_size;
    if (block == 0) {
        block = 1;
        while (block < plaintext.size()) block <<= 1;
    } else if ((block & (block - 1)) != 0) {
        throw value_error("encrypt_pipeline: block_size must be a power of two");
    }
    const std::size_t padded = (plaintext.size() + block - 1) / block * block;
    const std::size_t nblocks = padded / block;

    std::vector<BigUint> cipher(padded, BigUint(0));
    detail::pipeline_stage("rsa", [&] {
        for (std::size_t i = 0; i < plaintext.size(); ++i) {
            if (plaintext[i] < 0)
                throw value_error("plaintext value at index " + std::to_string(i) + " is negative");
            cipher[i] = encrypt_value(kb.rsa.public_key(), plaintext[i] % kb.rsa.m);
        }
        for (std::size_t i = plaintext.size(); i < padded; ++i)
            cipher[i] = encrypt_value(kb.rsa.public_key(), BigUint(0));
    });

    const detail::UnitShape shape = detail::UnitShape::of(kb.cascade);
    FrameSet fs;
    fs.true_count = plaintext.size();
    fs.block_size = block;
    for (std::size_t b = 0; b < nblocks; ++b) {
        for (std::uint32_t m : kb.moduli.moduli) {
            std::vector<std::uint32_t> residues(block);
            detail::pipeline_stage("rns", [&] {
                for (std::size_t i = 0; i < block; ++i)
                    residues[i] = static_cast<std::uint32_t>(cipher[b * block + i] % m);
            });
            const SubbandFrame sub = detail::pipeline_stage(
                "lifting", [&] { return decompose(residues, kb.kernel, m); });
            // level t is 1 + number of splits performed before it; the
            // approximation point rides as level 0.
            std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> units;
            for (std::size_t l = 0; l < sub.levels.size(); ++l)
                units.emplace_back(static_cast<std::uint32_t>(l + 1), sub.levels[l]);
            units.emplace_back(0u, std::vector<std::uint32_t>{sub.final_approx});
            for (const auto& [level, symbols] : units) {
                const Bits out = detail::pipeline_stage(
                    "cascade", [&] { return detail::encode_unit(kb.cascade, shape, symbols); });
                for (std::size_t i = 0; i < symbols.size(); ++i) {
                    FrameRow row;
                    row.message_index = static_cast<std::uint32_t>(b);
                    row.modulus = m;
                    row.level = level;
                    row.position = static_cast<std::uint32_t>(i);
                    row.symbol_bits.assign(out.begin() + i * shape.data_row_bits,
                                           out.begin() + (i + 1) * shape.data_row_bits);
                    fs.rows.push_back(std::move(row));
                }
                if (shape.tail_row_bits > 0) {
                    FrameRow row;
                    row.message_index = static_cast<std::uint32_t>(b);
                    row.modulus = m;
                    row.level = level;
                    row.position = static_cast<std::uint32_t>(symbols.size());
                    row.symbol_bits.assign(out.end() - shape.tail_row_bits, out.end());
                    fs.rows.push_back(std::move(row));
                }
            }
        }
    }
    return fs;
}

// Flip frame bits through a binary symmetric channel, in stored row order.
// The draw sequence is one stream across the whole set, so the result is
// reproducible from (pe, seed) alone.
inline FrameSet corrupt_frames(const FrameSet& fs, ChannelModel& channel) {
    FrameSet out = fs;
    for (auto& row : out.rows) row.symbol_bits = channel.transmit_bits(row.symbol_bits);
    return out;
}

// Inverse of encrypt_pipeline. Redundant cascades decode through the trellis
// (correcting what the redundancy allows); rate-1 cascades invert exactly.
inline std::vector<BigUint> decrypt_pipeline(const KeyBundle& kb, const FrameSet& fs) {
    validate_bundle(kb);
    if (fs.block_size == 0 || (fs.block_size & (fs.block_size - 1)) != 0)
        throw format_error("decrypt_pipeline: block_size must be a power of two");
    if (fs.rows.empty()) throw format_error("decrypt_pipeline: no frame rows");

    std::size_t t = 0;
    while ((std::size_t(1) << t) < fs.block_size) ++t;

    // (block, modulus) -> level -> position -> bits
    std::map<std::pair<std::uint32_t, std::uint32_t>,
             std::map<std::uint32_t, std::map<std::uint32_t, const Bits*>>>
        grouped;
    std::size_t nblocks = 0;
    for (const auto& row : fs.rows) {
        bool known = false;
        for (std::uint32_t m : kb.moduli.moduli) known |= (m == row.modulus);
        if (!known)
            throw decode_error("decrypt_pipeline: frames use modulus " + std::to_string(row.modulus) +
                               " that is not in the key bundle");
        auto& unit = grouped[{row.message_index, row.modulus}];
        if (!unit[row.level].emplace(row.position, &row.symbol_bits).second)
            throw format_error("decrypt_pipeline: duplicate frame row (message " +
                               std::to_string(row.message_index) + ", modulus " +
                               std::to_string(row.modulus) + ", level " + std::to_string(row.level) +
                               ", position " + std::to_string(row.position) + ")");
        nblocks = std::max(nblocks, std::size_t(row.message_index) + 1);
    }
    if (fs.true_count > nblocks * fs.block_size)
        throw format_error("decrypt_pipeline: count exceeds the frame capacity");

    const detail::UnitShape shape = detail::UnitShape::of(kb.cascade);
    const auto gather_unit = [&](std::map<std::uint32_t, const Bits*>& by_pos, std::size_t count,
                                 std::uint32_t level) {
        Bits unit_bits;
        unit_bits.reserve(count * shape.data_row_bits + shape.tail_row_bits);
        for (std::size_t i = 0; i < count; ++i) {
            auto it = by_pos.find(static_cast<std::uint32_t>(i));
            if (it == by_pos.end())
                throw format_error("decrypt_pipeline: missing frame row at level " +
                                   std::to_string(level) + " position " + std::to_string(i));
            if (it->second->size() != shape.data_row_bits)
                throw format_error("decrypt_pipeline: frame row at level " + std::to_string(level) +
                                   " position " + std::to_string(i) + " has " +
                                   std::to_string(it->second->size()) + " bits, expected " +
                                   std::to_string(shape.data_row_bits));
            append_bits(unit_bits, *it->second);
        }
        std::size_t expected_rows = count;
        if (shape.tail_row_bits > 0) {
            auto it = by_pos.find(static_cast<std::uint32_t>(count));
            if (it == by_pos.end())
                throw format_error("decrypt_pipeline: missing termination row at level " +
                                   std::to_string(level));
            if (it->second->size() != shape.tail_row_bits)
                throw format_error("decrypt_pipeline: termination row at level " + std::to_string(level) +
                                   " has wrong width");
            append_bits(unit_bits, *it->second);
            ++expected_rows;
        }
        if (by_pos.size() != expected_rows)
            throw format_error("decrypt_pipeline: level " + std::to_string(level) +
                               " has stray frame rows");
        return unit_bits;
    };

    std::vector<BigUint> plain;
    plain.reserve(nblocks * fs.block_size);
    for (std::size_t b = 0; b < nblocks; ++b) {
        std::vector<std::vector<std::uint32_t>> residue_seqs; // one per modulus, bundle order
        for (std::uint32_t m : kb.moduli.moduli) {
            auto git = grouped.find({static_cast<std::uint32_t>(b), m});
            if (git == grouped.end())
                throw format_error("decrypt_pipeline: message " + std::to_string(b) +
                                   " has no rows for modulus " + std::to_string(m));
            auto& by_level = git->second;
            SubbandFrame sub;
            sub.modulus = m;
            sub.kernel = kb.kernel;
            for (std::uint32_t level = 1; level <= t; ++level) {
                auto lit = by_level.find(level);
                if (lit == by_level.end())
                    throw format_error("decrypt_pipeline: message " + std::to_string(b) + " modulus " +
                                       std::to_string(m) + " is missing level " + std::to_string(level));
                const std::size_t count = fs.block_size >> level;
                const Bits unit_bits = gather_unit(lit->second, count, level);
                sub.levels.push_back(detail::pipeline_stage(
                    "cascade", [&] { return detail::decode_unit(kb.cascade, shape, unit_bits, count); }));
            }
            auto ait = by_level.find(0);
            if (ait == by_level.end())
                throw format_error("decrypt_pipeline: message " + std::to_string(b) + " modulus " +
                                   std::to_string(m) + " is missing the approximation row");
            const Bits approx_bits = gather_unit(ait->second, 1, 0);
            sub.final_approx = detail::pipeline_stage("cascade", [&] {
                return detail::decode_unit(kb.cascade, shape, approx_bits, 1)[0];
            });
            if (by_level.size() != t + 1)
                throw format_error("decrypt_pipeline: message " + std::to_string(b) + " modulus " +
                                   std::to_string(m) + " has stray levels");
            residue_seqs.push_back(detail::pipeline_stage("lifting", [&] {
                try {
                    return reconstruct(sub);
                } catch (const value_error& e) {
                    // Out-of-ring symbols mean the channel beat the decoder.
                    throw decode_error(e.what());
                }
            }));
        }
        detail::pipeline_stage("rsa", [&] {
            for (std::size_t i = 0; i < fs.block_size; ++i) {
                ResidueVector rv;
                for (const auto& seq : residue_seqs) rv.values.push_back(seq[i]);
                const BigUint c = from_residues(kb.moduli, rv);
                if (c >= kb.rsa.m)
                    throw decode_error("recovered ciphertext exceeds the rsa modulus");
                plain.push_back(decrypt_value(kb.rsa.private_key(), c));
            }
        });
    }
    plain.resize(fs.true_count);
    return plain;
}

} // namespace xlsec
