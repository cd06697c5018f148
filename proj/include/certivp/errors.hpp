#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace certivp {

/// Base class for all solver errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed problem file, inconsistent flags, or other configuration
/// mistakes. Maps to CLI exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Expression text could not be parsed. Carries the byte offset of the first
/// offending character.
class ParseError : public ConfigError {
public:
    ParseError(const std::string& message, std::size_t offset)
        : ConfigError(message + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Expression evaluation produced a non-finite intermediate result.
class EvalError : public Error {
public:
    using Error::Error;
};

/// The supplied bound M or Lipschitz constant L is inconsistent with the
/// right-hand side, or the right-hand side failed to evaluate inside the
/// problem rectangle. Maps to CLI exit code 2.
class HypothesisError : public Error {
public:
    using Error::Error;
};

/// Requested accuracy, level, or grid size exceeds the configured caps.
/// Maps to CLI exit code 3.
class CapacityError : public Error {
public:
    using Error::Error;
};

}  // namespace certivp
