#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace amot {

// Exact rational numbers for slopes and weights. All magnitudes at desk scale
// are tiny (degrees and valuations), so 64-bit components never overflow.
using Rat = boost::rational<long long>;

inline std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// User-facing input problems: malformed expressions, domain violations,
// mismatched fields. CLI exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed text input, with a position for diagnostics. CLI exit code 2.
struct ParseError : InputError {
    ParseError(const std::string& msg, size_t pos_)
        : InputError(msg + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
    size_t pos;
};

// Precision or resource exhaustion: the computation cannot certify an answer
// at the configured precision or cap. CLI exit code 3.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated internal invariant (for example a characteristic polynomial whose
// coefficients fail to descend). Always a bug, never a user error.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace amot
