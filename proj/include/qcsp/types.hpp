#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcsp {

// All times (processing, travel, ready, start, completion) are integral.
using Time = std::int64_t;

// Malformed input: bad ids, dimension mismatches, out-of-range values,
// unreadable files.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text input that failed to parse; carries the 1-based line number.
struct parse_error : input_error {
    parse_error(int line_no, const std::string& msg)
        : input_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    int line;
};

// Raised when an assignment admits no well-defined unidirectional
// schedule (the ordering demands placed on the start times are cyclic).
struct decode_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qcsp
