#pragma once

#include <stdexcept>
#include <string>

namespace l1idx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad syntax, invalid JSON, arguments outside the domain.
struct ParseError : Error {
    using Error::Error;
};

// A precondition of an operation does not hold for the given values.
struct DomainError : Error {
    using Error::Error;
};

// A documented resource cap would be exceeded (ground set, support bound,
// orthant count, closure size).  Callers may retry with smaller inputs.
struct CapError : Error {
    using Error::Error;
};

// Machine-width coefficient arithmetic overflowed.
struct OverflowError : Error {
    using Error::Error;
};

}  // namespace l1idx
