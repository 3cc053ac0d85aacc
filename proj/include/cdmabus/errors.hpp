#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdmabus {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// lfsr / codebook
struct InvalidState : Error {
    using Error::Error;
};
struct InvalidConfig : Error {
    using Error::Error;
};
struct InsufficientWidth : Error {
    using Error::Error;
};
struct UnsupportedLength : Error {
    using Error::Error;
};

// codec geometry
struct GeometryError : Error {
    using Error::Error;
};
struct IncompatibleGeometry : GeometryError {
    using GeometryError::GeometryError;
};
struct RangeError : Error {
    using Error::Error;
};

// decode failures carry the offending bit position
struct DecodeError : Error {
    DecodeError(const std::string& msg, std::size_t bit) : Error(msg), bit(bit) {}
    std::size_t bit;
};
struct AmbiguousBit : DecodeError {
    using DecodeError::DecodeError;
};
struct IntegrityViolation : DecodeError {
    using DecodeError::DecodeError;
};

// channel
struct CodeCollision : Error {
    using Error::Error;
};

// bus
struct AddressOutOfRange : Error {
    using Error::Error;
};
struct UnknownPrefix : Error {
    using Error::Error;
};

// simulator / cli
struct ConfigError : Error {
    ConfigError(const std::string& field, const std::string& msg)
        : Error("config field '" + field + "': " + msg), field(field) {}
    std::string field;
};
struct DifferentialMismatch : Error {
    DifferentialMismatch(const std::string& msg, std::size_t txn_index)
        : Error(msg), txn_index(txn_index) {}
    std::size_t txn_index;
};

}  // namespace cdmabus
