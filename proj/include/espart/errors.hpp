#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace espart {

// Base class for all library errors so callers can catch one type at the CLI
// boundary and map it to an exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two equal values were found where distinctness is required. Positions are
// 1-based indices into the offending sequence.
struct DuplicateValueError : Error {
    DuplicateValueError(long long value, std::size_t pos_a, std::size_t pos_b)
        : Error("duplicate value " + std::to_string(value) + " at positions " +
                std::to_string(pos_a) + " and " + std::to_string(pos_b)),
          value(value), pos_a(pos_a), pos_b(pos_b) {}
    long long value;
    std::size_t pos_a;
    std::size_t pos_b;
};

struct PositionOutOfRangeError : Error {
    PositionOutOfRangeError(std::size_t pos, std::size_t size)
        : Error("position " + std::to_string(pos) + " out of range 1.." +
                std::to_string(size + 1)),
          pos(pos), size(size) {}
    std::size_t pos;
    std::size_t size;
};

struct UnknownKeyError : Error {
    explicit UnknownKeyError(std::uint64_t id)
        : Error("unknown or dead point key " + std::to_string(id)), id(id) {}
    std::uint64_t id;
};

struct InvalidConfigError : Error {
    using Error::Error;
};

struct InvalidKappaError : Error {
    explicit InvalidKappaError(double kappa)
        : Error("kappa must lie in (0,1), got " + std::to_string(kappa)),
          kappa(kappa) {}
    double kappa;
};

struct OutOfBoundsError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

struct BadSpecError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace espart
