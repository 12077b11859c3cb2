#pragma once

#include <stdexcept>
#include <string>

namespace bsq {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// to_physical received coefficients that are not Hermitian-symmetric.
struct SymmetryError : Error {
    using Error::Error;
};

// Negative-order multiplier (Lambda^s or A^s, s < 0) applied to a field with
// nonzero mean.
struct SingularMultiplierError : Error {
    using Error::Error;
};

// Commutator exponent outside (0,2) or equal to 1.
struct UnsupportedExponentError : Error {
    using Error::Error;
};

// Norm specification with p < 1 or otherwise malformed.
struct InvalidSpecError : Error {
    using Error::Error;
};

// Time samples handed to a quadrature out of order.
struct OrderingError : Error {
    using Error::Error;
};

// Fields living on different grids were combined.
struct DimensionError : Error {
    using Error::Error;
};

// Synthesis exponent s <= 0.
struct InvalidExponentError : Error {
    using Error::Error;
};

// Taylor recursion order above the supported maximum.
struct UnsupportedOrderError : Error {
    using Error::Error;
};

// NaN/overflow detected in the state; carries the last time reached.
struct BlowUpError : Error {
    double t_reached;
    explicit BlowUpError(double t)
        : Error("solution blew up (NaN/overflow in coefficients) at t = " + std::to_string(t)),
          t_reached(t) {}
};

// Series analyses fed too few records.
struct InsufficientDataError : Error {
    using Error::Error;
};

struct EmptyInputError : Error {
    using Error::Error;
};

// Flow-map / density snapshot time disagreement.
struct ConsistencyError : Error {
    using Error::Error;
};

// Velocity provider could not supply a requested stage time.
struct MissingVelocityError : Error {
    using Error::Error;
};

// Malformed or unreadable checkpoint; names the offending field.
struct CheckpointError : Error {
    std::string field;
    CheckpointError(const std::string& fld, const std::string& what)
        : Error("corrupt checkpoint (" + fld + "): " + what), field(fld) {}
};

// Configuration rejected at load time.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace bsq
