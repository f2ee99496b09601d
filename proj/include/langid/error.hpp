#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace langid {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed UTF-8; byte_offset points at the first offending byte.
struct DecodeError : Error {
    DecodeError(std::size_t offset, const std::string& what)
        : Error("decode error at byte " + std::to_string(offset) + ": " + what),
          byte_offset(offset) {}
    std::size_t byte_offset;
};

// A persisted profile (or other structured input) violates its schema.
struct ValidationError : Error {
    ValidationError(std::string field_name, const std::string& what)
        : Error(field_name + ": " + what), field(std::move(field_name)) {}
    std::string field;
};

// Input contains no letters after normalization; no detection is possible.
struct UndeterminableError : Error {
    using Error::Error;
};

struct NoiseError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace langid
