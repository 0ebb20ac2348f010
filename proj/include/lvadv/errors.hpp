#pragma once

#include <stdexcept>
#include <string>

namespace lvadv {

/// Requested enumeration would exceed the caller-supplied cap.
struct CapExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter set cannot yield a valid code instance.
struct InfeasibleParamsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// List decoder hit a degenerate interpolation (solution space wider than the
/// guaranteed list-size bound); refusing to guess.
struct DecodeDegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input file or received word does not match the declared shape.
struct MalformedInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lvadv
