#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "xlsec/bits.hpp"
#include "xlsec/errors.hpp"

namespace xlsec {

// One encrypted symbol (or one termination tail) of one subband level.
// level 0 is the final approximation point, levels 1..t are detail bands.
// A tail row carries position == number of data symbols in its unit.
struct FrameRow {
    std::uint32_t message_index = 0;
    std::uint32_t modulus = 0;
    std::uint32_t level = 0;
    std::uint32_t position = 0;
    Bits symbol_bits;

    bool operator==(const FrameRow&) const = default;
};

// Wire image of one encrypted message. Row order is exactly the order the
// channel sees the bits in, so readers must preserve it.
struct FrameSet {
    std::size_t true_count = 0; // plaintext values before zero padding
    std::size_t block_size = 0; // padded values per message block
    std::vector<FrameRow> rows;

    bool operator==(const FrameSet&) const = default;
};

inline std::string frames_to_csv(const FrameSet& fs) {
    std::string out;
    out += "# encrypted frames v1\n";
    out += "# count=" + std::to_string(fs.true_count) + "\n";
    out += "# block_size=" + std::to_string(fs.block_size) + "\n";
    out += "message_index,modulus,level,position,symbol_bits\n";
    for (const auto& r : fs.rows) {
        out += std::to_string(r.message_index) + ',' + std::to_string(r.modulus) + ',' +
               std::to_string(r.level) + ',' + std::to_string(r.position) + ',' +
               bits_to_string(r.symbol_bits) + '\n';
    }
    return out;
}

namespace detail {

inline std::uint64_t frames_parse_u64(const std::string& s, std::size_t lineno) {
    std::uint64_t v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw format_error("frames line " + std::to_string(lineno) + ": bad integer '" + s + "'");
    return v;
}

} // namespace detail

inline FrameSet frames_from_csv(std::istream& in) {
    FrameSet fs;
    bool saw_count = false, saw_block = false, saw_header = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string body = line.substr(1);
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                std::string key = body.substr(0, eq);
                std::size_t start = key.find_first_not_of(' ');
                key = start == std::string::npos ? "" : key.substr(start);
                if (key == "count") {
                    fs.true_count = detail::frames_parse_u64(body.substr(eq + 1), lineno);
                    saw_count = true;
                } else if (key == "block_size") {
                    fs.block_size = detail::frames_parse_u64(body.substr(eq + 1), lineno);
                    saw_block = true;
                }
            }
            continue;
        }
        if (!saw_header) {
            if (line != "message_index,modulus,level,position,symbol_bits")
                throw format_error("frames line " + std::to_string(lineno) + ": unexpected header '" +
                                   line + "'");
            saw_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') { fields.push_back(cur); cur.clear(); }
            else cur.push_back(c);
        }
        fields.push_back(cur);
        if (fields.size() != 5)
            throw format_error("frames line " + std::to_string(lineno) + ": expected 5 fields, got " +
                               std::to_string(fields.size()));
        FrameRow r;
        r.message_index = static_cast<std::uint32_t>(detail::frames_parse_u64(fields[0], lineno));
        r.modulus = static_cast<std::uint32_t>(detail::frames_parse_u64(fields[1], lineno));
        r.level = static_cast<std::uint32_t>(detail::frames_parse_u64(fields[2], lineno));
        r.position = static_cast<std::uint32_t>(detail::frames_parse_u64(fields[3], lineno));
        r.symbol_bits = bits_from_string(fields[4]);
        if (r.symbol_bits.empty())
            throw format_error("frames line " + std::to_string(lineno) + ": empty symbol_bits");
        fs.rows.push_back(std::move(r));
    }
    if (!saw_header) throw format_error("frames: missing column header row");
    if (!saw_count || !saw_block) throw format_error("frames: missing '# count=' or '# block_size=' comment");
    return fs;
}

inline FrameSet frames_from_csv(const std::string& text) {
    std::istringstream in(text);
    return frames_from_csv(in);
}

inline void save_frames(const FrameSet& fs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw value_error("save_frames: cannot open '" + path + "' for writing");
    out << frames_to_csv(fs);
    if (!out) throw value_error("save_frames: write to '" + path + "' failed");
}

inline FrameSet load_frames(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw value_error("load_frames: cannot open '" + path + "'");
    return frames_from_csv(in);
}

} // namespace xlsec
