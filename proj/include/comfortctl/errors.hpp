#pragma once

#include <stdexcept>

namespace comfortctl {

// Bad argument values: non-finite temperatures, invalid model parameters.
class DomainError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

// Configuration parse or validation failure. The message carries the
// offending field path or the parser's line/column context.
class ConfigError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

// Numerical failure during integration (diverging trajectory).
class NumericError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace comfortctl
