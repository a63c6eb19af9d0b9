#pragma once

#include <stdexcept>
#include <string>

namespace helicon {

// Raised when an evaluation would touch a sample index outside the signal.
// Carries the first missing index so callers (and diagnostics) can name it.
struct BoundaryError : std::out_of_range {
    BoundaryError(long long missing_index, const std::string& context)
        : std::out_of_range(context + ": sample index " + std::to_string(missing_index) +
                            " is outside the signal"),
          index(missing_index) {}
    long long index;
};

// File and stream problems (bad container magic, truncated data, ...).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace helicon
