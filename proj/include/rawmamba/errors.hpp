#pragma once

#include <stdexcept>
#include <string>

namespace rawmamba {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tensor rank/extent mismatches. Message names both shapes involved.
struct ShapeError : Error {
    using Error::Error;
};

/// Invalid static configuration (kernel sizes, factors, rates, CLI options).
struct ConfigError : Error {
    using Error::Error;
};

/// A runtime contract was violated (non-scalar loss, empty metadata, mode mismatch).
struct ContractError : Error {
    using Error::Error;
};

/// Non-finite values produced during evaluation; message names the producing op.
struct EvalError : Error {
    using Error::Error;
};

/// File format / filesystem failures.
struct IoError : Error {
    using Error::Error;
};

}  // namespace rawmamba
