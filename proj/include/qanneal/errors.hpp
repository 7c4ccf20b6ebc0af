#pragma once

#include <stdexcept>

namespace qanneal {

// Violated precondition or type invariant on caller-supplied values.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed, contradictory, or unknown configuration input.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: eigensolver non-convergence, non-finite values.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qanneal
