#pragma once

#include <stdexcept>
#include <string>

namespace xlsec {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Domain violations: bad parameters, out-of-range values, wrong widths/lengths.
struct value_error : error {
    using error::error;
};

// Key material that fails validation (non-partitioning transitions,
// non-bijective boxes, broken width chains, bad transducer tables).
struct key_error : value_error {
    using value_error::value_error;
};

// Text formats (key bundles, frame files, transducer tables) that do not parse.
struct format_error : error {
    using error::error;
};

// A file that parsed but claims a format revision (or fields) this build
// does not know.
struct version_error : format_error {
    using format_error::format_error;
};

// Trellis decode could not produce a valid path.
struct decode_error : error {
    using error::error;
};

// Algebraic cascade inversion is impossible (some stage is not rate-1
// invertible); the caller should use the trellis decoder instead.
struct requires_viterbi : error {
    using error::error;
};

} // namespace xlsec
