#pragma once

#include <stdexcept>
#include <string>

namespace pinn {

/// Bad configuration or input file: rejected before any computation runs.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error("config error: " + msg) {}
};

/// API misuse: a precondition documented on the call was violated.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error("usage error: " + msg) {}
};

/// Numerical failure at runtime: singularities, non-finite values, divergence.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error("numeric error: " + msg) {}
};

/// Filesystem / stream failure, carries the offending path.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error("io error: " + msg) {}
};

/// Checkpoint decode failure; `kind` distinguishes the malformed-header,
/// shape-mismatch and truncated-payload cases.
struct CheckpointError : std::runtime_error {
    enum class Kind { malformed_header, shape_mismatch, truncated, unwritable };
    Kind kind;
    CheckpointError(Kind k, const std::string& msg)
        : std::runtime_error("checkpoint error: " + msg), kind(k) {}
};

} // namespace pinn
