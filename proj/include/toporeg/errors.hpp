#pragma once

#include <stdexcept>
#include <string>

namespace toporeg {

/// Raised when an argument violates a documented precondition.
struct invalid_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised by brute-force oracles when an instance exceeds their size cap.
struct size_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a frozen configuration references a simplex that no longer
/// has a value in the supplied snapshot.
struct stale_configuration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an operation is called out of order (e.g. backward before
/// forward).
struct state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File/parse failures; the message carries path and line/field context.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace toporeg
