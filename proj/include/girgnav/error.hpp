#pragma once

#include <stdexcept>
#include <string>

namespace girgnav {

/// Raised when an operation receives arguments outside its domain.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for malformed or inconsistent configuration files and fields.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when reading or writing a file fails or its contents are malformed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace girgnav
