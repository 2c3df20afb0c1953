#pragma once

#include <stdexcept>
#include <string>

namespace diffuni {

// Base type for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A field could not be built (bad degree, reducible modulus, ...).
struct ConstructionError : Error { using Error::Error; };

// Inversion or division by the zero element.
struct DivisionByZero : Error { using Error::Error; };

// A precondition on an argument was violated.
struct InvalidArgument : Error { using Error::Error; };

// Two elements from fields with different specs were combined.
struct SpecMismatch : Error { using Error::Error; };

// The degree residue class is outside the supported set.
struct UnsupportedResidue : Error { using Error::Error; };

// A closed form is undefined because a leading coefficient vanished.
struct DegreeDrop : Error { using Error::Error; };

// The field is too small for the requested construction.
struct InsufficientDegree : Error { using Error::Error; };

// An internal consistency check failed; indicates a bug, not bad input.
struct InternalInvariantViolation : Error { using Error::Error; };

} // namespace diffuni
