#pragma once

#include <stdexcept>
#include <string>

namespace hierrec {

// Error taxonomy mirrors the CLI exit codes: config/parse -> 2,
// data -> 3, numerical failure -> 4.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input files, bad configuration, unusable options.
struct ConfigError : Error {
    using Error::Error;
};

// Structurally valid input that violates dataset-level contracts:
// duplicate ids, dangling references, hash mismatches, missing users.
struct DataError : Error {
    using Error::Error;
};

// Non-finite objectives, diverged optimizations, degenerate metrics.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace hierrec
