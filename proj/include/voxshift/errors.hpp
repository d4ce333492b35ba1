#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace voxshift {

// Base for all library failures. `error_class()` is the short tag the CLI
// prints so failures stay greppable.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* error_class() const noexcept { return "error"; }
};

class InvalidArgument : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "invalid-argument"; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* error_class() const noexcept override { return "io"; }
};

// Malformed input file. `offset()` is a byte offset for binary formats and
// a 1-based line number for text formats.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t offset)
        : Error(what + " (at " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }
    const char* error_class() const noexcept override { return "format"; }

private:
    std::size_t offset_;
};

} // namespace voxshift
