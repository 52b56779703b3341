#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "xlsec/analysis.hpp" // format_double
#include "xlsec/builtin_cascades.hpp"
#include "xlsec/convcrypt.hpp"
#include "xlsec/rns.hpp"
#include "xlsec/rsa.hpp"
#include "xlsec/subband.hpp"

namespace xlsec {

// All shared material for one link. Serialized as a sectioned key=value text
// file (diffable fixtures beat binary blobs here).
struct KeyBundle {
    static constexpr std::uint32_t kFormatVersion = 1;

    RsaKeyPair rsa;
    ModuliSet moduli;
    LiftingKernel kernel;
    CascadeKey cascade;
    struct Signaling {
        std::uint32_t order = 256;
        double pe = 0.0;
        std::uint64_t seed = 0;

        bool operator==(const Signaling&) const = default;
    } signaling;

    bool operator==(const KeyBundle&) const = default;
};

// Residue symbols ride in single bytes and the cascade consumes them in
// k-bit slices, so every modulus must fit a byte and the first-stage width
// must divide 8.
inline void validate_bundle(const KeyBundle& kb) {
    if (kb.rsa.m != kb.rsa.p * kb.rsa.q || kb.rsa.e * kb.rsa.d % ((kb.rsa.p - 1) * (kb.rsa.q - 1)) != 1)
        throw key_error("bundle: rsa key fields are inconsistent");
    for (std::uint32_t m : kb.moduli.moduli)
        if (m >= 256)
            throw key_error("bundle: modulus " + std::to_string(m) + " does not fit one byte");
    if (kb.kernel.h1 == 0) throw key_error("bundle: lifting tap h1 must be nonzero");
    validate_cascade(kb.cascade);
    if (8 % cascade_input_width(kb.cascade) != 0)
        throw key_error("bundle: cascade first-stage width " +
                        std::to_string(cascade_input_width(kb.cascade)) + " does not divide 8");
    const auto ord = kb.signaling.order;
    if (ord < 2 || ord > 1024 || (ord & (ord - 1)) != 0)
        throw key_error("bundle: signaling order must be a power of two in [2, 1024]");
    if (!(kb.signaling.pe >= 0.0 && kb.signaling.pe <= 1.0))
        throw key_error("bundle: channel pe must be in [0, 1]");
}

namespace detail {

inline std::string join_u32(const std::vector<std::uint32_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

inline std::string matrix_rows_text(const GF2Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.n; ++i) {
        if (i) out += ',';
        out += bits_to_string(bits_from_uint(m.rows[i], m.n));
    }
    return out;
}

inline std::string table_rows_text(const TableCore& tc) {
    std::string out;
    for (std::size_t s = 0; s < (std::size_t(1) << tc.state_bits); ++s)
        for (std::uint32_t u = 0; u < (1u << tc.k); ++u) {
            if (!out.empty()) out += ';';
            const auto& row = tc.rows[(s << tc.k) | u];
            out += bits_to_string(bits_from_uint(u, tc.k)) + ' ' +
                   bits_to_string(bits_from_uint(static_cast<std::uint32_t>(s), tc.state_bits)) + ' ' +
                   bits_to_string(bits_from_uint(row.output, tc.n)) + ' ' +
                   bits_to_string(bits_from_uint(row.next_state, tc.state_bits));
        }
    return out;
}

inline std::string range_text(const TransitionRange& r, std::size_t k) {
    return bits_to_string(bits_from_uint(r.lo, k)) + '-' + bits_to_string(bits_from_uint(r.hi, k)) +
           ':' + std::to_string(r.next_set);
}

} // namespace detail

inline std::string bundle_to_text(const KeyBundle& kb) {
    validate_bundle(kb);
    std::string out;
    out += "# key bundle: all shared material for one link\n";
    out += "format_version=" + std::to_string(KeyBundle::kFormatVersion) + "\n";
    out += "\n[rsa]\n";
    out += "p=" + kb.rsa.p.str() + "\n";
    out += "q=" + kb.rsa.q.str() + "\n";
    out += "m=" + kb.rsa.m.str() + "\n";
    out += "e=" + kb.rsa.e.str() + "\n";
    out += "d=" + kb.rsa.d.str() + "\n";
    out += "\n[rns]\n";
    out += "moduli=" + detail::join_u32(kb.moduli.moduli) + "\n";
    out += "\n[lifting]\n";
    out += "h=" + std::to_string(kb.kernel.h1) + "," + std::to_string(kb.kernel.h2) + "," +
           std::to_string(kb.kernel.h3) + "\n";
    out += "\n[cascade]\n";
    out += "name=" + kb.cascade.name + "\n";
    out += "stages=" + std::to_string(kb.cascade.stages.size()) + "\n";
    for (std::size_t i = 0; i < kb.cascade.stages.size(); ++i) {
        const auto& st = kb.cascade.stages[i];
        const std::string pfx = "stage" + std::to_string(i) + ".";
        if (st.is_table()) {
            out += pfx + "kind=table\n";
            // Prefer a built-in reference when the rows match one; the text
            // stays short and the fixture file remains the single source.
            const char* builtin = nullptr;
            for (const char* name : {"cascade4x23_stage1", "cascade4x23_stage2"})
                if (load_transducer_table(std::string(builtin_table_text(name))) == st) {
                    builtin = name;
                    break;
                }
            if (builtin) {
                out += pfx + "table=" + builtin + "\n";
            } else {
                out += pfx + "rows=" + detail::table_rows_text(st.table()) + "\n";
            }
        } else {
            const auto& lc = st.linear();
            out += pfx + "kind=linear\n";
            out += pfx + "k=" + std::to_string(lc.k) + "\n";
            out += pfx + "sets=" + std::to_string(lc.sets.size()) + "\n";
            for (std::size_t s = 0; s < lc.sets.size(); ++s) {
                const std::string spfx = pfx + "set" + std::to_string(s) + ".";
                for (std::size_t g = 0; g < lc.sets[s].matrices.size(); ++g)
                    out += spfx + "g" + std::to_string(g) + "=" +
                           detail::matrix_rows_text(lc.sets[s].matrices[g]) + "\n";
                out += spfx + "next=";
                for (std::size_t r = 0; r < lc.transitions[s].size(); ++r) {
                    if (r) out += ',';
                    out += detail::range_text(lc.transitions[s][r], lc.k);
                }
                out += "\n";
            }
        }
    }
    for (std::size_t i = 0; i < kb.cascade.interstage.size(); ++i) {
        const std::string pfx = "inter" + std::to_string(i) + ".";
        const auto& layer = kb.cascade.interstage[i];
        out += pfx + "sbox_width=" + std::to_string(layer.sbox.box_width) + "\n";
        out += pfx + "sbox=";
        for (std::size_t b = 0; b < layer.sbox.boxes.size(); ++b) {
            if (b) out += '|';
            for (std::size_t v = 0; v < layer.sbox.boxes[b].size(); ++v) {
                if (v) out += ',';
                out += bits_to_string(bits_from_uint(layer.sbox.boxes[b][v], layer.sbox.box_width));
            }
        }
        out += "\n";
        out += pfx + "pbox=" + detail::join_u32(layer.pbox.perm) + "\n";
    }
    out += "\n[signaling]\n";
    out += "order=" + std::to_string(kb.signaling.order) + "\n";
    out += "pe=" + format_double(kb.signaling.pe) + "\n";
    out += "seed=" + std::to_string(kb.signaling.seed) + "\n";
    return out;
}

namespace detail {

// Strict sectioned key=value parser. Every key save emits must be consumed
// exactly once; leftovers mean the file came from a newer writer.
class BundleParser {
public:
    explicit BundleParser(std::istream& in) {
        std::string line, section;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
                line.pop_back();
            std::size_t start = 0;
            while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
            line.erase(0, start);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw format_error("bundle line " + std::to_string(lineno) + ": malformed section header");
                section = line.substr(1, line.size() - 2);
                sections_[section]; // remember even if empty
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw format_error("bundle line " + std::to_string(lineno) + ": expected key=value");
            const std::string key = line.substr(0, eq);
            const std::string val = line.substr(eq + 1);
            auto& sec = sections_[section];
            if (!sec.emplace(key, val).second)
                throw format_error("bundle line " + std::to_string(lineno) + ": duplicate key '" + key +
                                   "' in section [" + section + "]");
        }
    }

    bool has_section(const std::string& name) const { return sections_.count(name) != 0; }

    void require_section(const std::string& name) const {
        if (!has_section(name)) throw format_error("bundle: missing section [" + name + "]");
    }

    bool has(const std::string& section, const std::string& key) const {
        auto it = sections_.find(section);
        return it != sections_.end() && it->second.count(key) != 0;
    }

    std::string take(const std::string& section, const std::string& key) {
        auto it = sections_.find(section);
        if (it == sections_.end())
            throw format_error("bundle: missing section [" + section + "]");
        auto kit = it->second.find(key);
        if (kit == it->second.end())
            throw format_error("bundle: section [" + section + "] is missing key '" + key + "'");
        std::string val = kit->second;
        it->second.erase(kit);
        return val;
    }

    std::string take_or(const std::string& section, const std::string& key, const std::string& fallback) {
        return has(section, key) ? take(section, key) : fallback;
    }

    // Everything must be consumed; unknown leftovers are future fields.
    void finish(const std::vector<std::string>& known_sections) const {
        for (const auto& [name, keys] : sections_) {
            bool known = false;
            for (const auto& k : known_sections)
                if (k == name) { known = true; break; }
            if (!known)
                throw version_error("bundle: unknown section [" + name + "] (newer format?)");
            if (!keys.empty())
                throw version_error("bundle: unknown field '" + keys.begin()->first + "' in section [" +
                                    name + "] (newer format?)");
        }
    }

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    std::uint64_t v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw format_error("bundle: " + what + ": not a non-negative integer: '" + s + "'");
    return v;
}

inline std::int64_t parse_i64(const std::string& s, const std::string& what) {
    std::int64_t v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw format_error("bundle: " + what + ": not an integer: '" + s + "'");
    return v;
}

inline double parse_double(const std::string& s, const std::string& what) {
    double v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw format_error("bundle: " + what + ": not a number: '" + s + "'");
    return v;
}

inline BigUint parse_biguint(const std::string& s, const std::string& what) {
    if (s.empty()) throw format_error("bundle: " + what + ": empty value");
    for (char c : s)
        if (c < '0' || c > '9')
            throw format_error("bundle: " + what + ": not a decimal integer: '" + s + "'");
    return BigUint(s);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) { out.push_back(cur); cur.clear(); }
        else cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

inline Transducer parse_bundle_stage(BundleParser& p, std::size_t index) {
    const std::string pfx = "stage" + std::to_string(index) + ".";
    const std::string kind = p.take("cascade", pfx + "kind");
    if (kind == "table") {
        if (p.has("cascade", pfx + "table")) {
            const std::string name = p.take("cascade", pfx + "table");
            const char* text = builtin_table_text(name);
            if (!text) throw format_error("bundle: unknown built-in table '" + name + "'");
            return load_transducer_table(std::string(text));
        }
        const std::string rows = p.take("cascade", pfx + "rows");
        std::string text;
        for (const auto& row : split(rows, ';')) text += row + "\n";
        return load_transducer_table(text);
    }
    if (kind != "linear")
        throw format_error("bundle: stage " + std::to_string(index) + ": unknown kind '" + kind + "'");
    LinearStageSpec spec;
    spec.k = static_cast<std::size_t>(parse_u64(p.take("cascade", pfx + "k"), pfx + "k"));
    const auto nsets = parse_u64(p.take("cascade", pfx + "sets"), pfx + "sets");
    for (std::uint64_t s = 0; s < nsets; ++s) {
        const std::string spfx = pfx + "set" + std::to_string(s) + ".";
        LinearStateSet set;
        for (std::size_t g = 0;; ++g) {
            const std::string key = spfx + "g" + std::to_string(g);
            if (!p.has("cascade", key)) break;
            set.matrices.push_back(gf2_from_rows(split(p.take("cascade", key), ',')));
        }
        if (set.matrices.empty())
            throw format_error("bundle: " + spfx + "g0 is missing");
        std::vector<TransitionRange> ranges;
        for (const auto& rt : split(p.take("cascade", spfx + "next"), ',')) {
            const auto dash = rt.find('-');
            const auto colon = rt.find(':', dash == std::string::npos ? 0 : dash + 1);
            if (dash == std::string::npos || colon == std::string::npos)
                throw format_error("bundle: " + spfx + "next: malformed range '" + rt + "'");
            TransitionRange r;
            r.lo = static_cast<std::uint32_t>(uint_from_bits(bits_from_string(rt.substr(0, dash))));
            r.hi = static_cast<std::uint32_t>(uint_from_bits(bits_from_string(rt.substr(dash + 1, colon - dash - 1))));
            r.next_set = static_cast<std::uint32_t>(parse_u64(rt.substr(colon + 1), spfx + "next target"));
            ranges.push_back(r);
        }
        spec.sets.push_back(std::move(set));
        spec.transitions.push_back(std::move(ranges));
    }
    return compile_linear_transducer(spec);
}

inline InterstageLayer parse_bundle_interstage(BundleParser& p, std::size_t index) {
    const std::string pfx = "inter" + std::to_string(index) + ".";
    InterstageLayer layer;
    layer.sbox.box_width =
        static_cast<std::size_t>(parse_u64(p.take("cascade", pfx + "sbox_width"), pfx + "sbox_width"));
    for (const auto& box_text : split(p.take("cascade", pfx + "sbox"), '|')) {
        std::vector<std::uint8_t> box;
        for (const auto& entry : split(box_text, ','))
            box.push_back(static_cast<std::uint8_t>(uint_from_bits(bits_from_string(entry))));
        layer.sbox.boxes.push_back(std::move(box));
    }
    for (const auto& img : split(p.take("cascade", pfx + "pbox"), ','))
        layer.pbox.perm.push_back(static_cast<std::uint32_t>(parse_u64(img, pfx + "pbox")));
    return layer;
}

} // namespace detail

inline KeyBundle bundle_from_text(std::istream& in) {
    detail::BundleParser p(in);
    if (!p.has("", "format_version"))
        throw format_error("bundle: missing format_version header line");
    const auto version = detail::parse_u64(p.take("", "format_version"), "format_version");
    if (version != KeyBundle::kFormatVersion)
        throw version_error("bundle: format_version " + std::to_string(version) +
                            " is not supported (this build reads version " +
                            std::to_string(KeyBundle::kFormatVersion) + ")");
    for (const char* sec : {"rsa", "rns", "lifting", "cascade", "signaling"}) p.require_section(sec);

    KeyBundle kb;
    const BigUint rp = detail::parse_biguint(p.take("rsa", "p"), "rsa.p");
    const BigUint rq = detail::parse_biguint(p.take("rsa", "q"), "rsa.q");
    const BigUint re = detail::parse_biguint(p.take("rsa", "e"), "rsa.e");
    kb.rsa = derive_keypair(rp, rq, re);
    if (p.has("rsa", "m")) {
        const BigUint m = detail::parse_biguint(p.take("rsa", "m"), "rsa.m");
        if (m != kb.rsa.m)
            throw format_error("bundle: rsa.m = " + m.str() + " does not equal p*q = " + kb.rsa.m.str());
    }
    if (p.has("rsa", "d")) {
        const BigUint d = detail::parse_biguint(p.take("rsa", "d"), "rsa.d");
        if (d != kb.rsa.d)
            throw format_error("bundle: rsa.d = " + d.str() + " does not invert e (expected " +
                               kb.rsa.d.str() + ")");
    }

    std::vector<std::uint32_t> moduli;
    for (const auto& tok : detail::split(p.take("rns", "moduli"), ','))
        moduli.push_back(static_cast<std::uint32_t>(detail::parse_u64(tok, "rns.moduli")));
    kb.moduli = build_moduli_set(moduli);

    const auto taps = detail::split(p.take("lifting", "h"), ',');
    if (taps.size() != 3) throw format_error("bundle: lifting.h needs exactly three taps");
    kb.kernel.h1 = static_cast<std::int32_t>(detail::parse_i64(taps[0], "lifting.h"));
    kb.kernel.h2 = static_cast<std::int32_t>(detail::parse_i64(taps[1], "lifting.h"));
    kb.kernel.h3 = static_cast<std::int32_t>(detail::parse_i64(taps[2], "lifting.h"));

    kb.cascade.name = p.take_or("cascade", "name", "");
    const auto nstages = detail::parse_u64(p.take("cascade", "stages"), "cascade.stages");
    if (nstages == 0) throw format_error("bundle: cascade needs at least one stage");
    for (std::uint64_t i = 0; i < nstages; ++i)
        kb.cascade.stages.push_back(detail::parse_bundle_stage(p, static_cast<std::size_t>(i)));
    for (std::uint64_t i = 0; i + 1 < nstages; ++i)
        kb.cascade.interstage.push_back(detail::parse_bundle_interstage(p, static_cast<std::size_t>(i)));

    kb.signaling.order = static_cast<std::uint32_t>(detail::parse_u64(p.take("signaling", "order"), "signaling.order"));
    kb.signaling.pe = detail::parse_double(p.take("signaling", "pe"), "signaling.pe");
    kb.signaling.seed = detail::parse_u64(p.take("signaling", "seed"), "signaling.seed");

    p.finish({"", "rsa", "rns", "lifting", "cascade", "signaling"});
    validate_bundle(kb);
    return kb;
}

inline KeyBundle bundle_from_text(const std::string& text) {
    std::istringstream in(text);
    return bundle_from_text(in);
}

inline void save_bundle(const KeyBundle& kb, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw value_error("save_bundle: cannot open '" + path + "' for writing");
    out << bundle_to_text(kb);
    if (!out) throw value_error("save_bundle: write to '" + path + "' failed");
}

inline KeyBundle load_bundle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw value_error("load_bundle: cannot open '" + path + "'");
    return bundle_from_text(in);
}

} // namespace xlsec
