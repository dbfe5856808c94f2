#pragma once

#include <stdexcept>
#include <string>

namespace charclass {

/// Base class of all library failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linear algebra
struct DimensionMismatch : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct NotDiagonalizable : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct NotSkew : Error { using Error::Error; };
struct OddDimension : Error { using Error::Error; };
struct DegenerateFamily : Error { using Error::Error; };
struct ExponentCapExceeded : Error { using Error::Error; };

// group domain
struct WrongFamily : Error { using Error::Error; };
struct NotInGroup : Error { using Error::Error; };
struct NotInAlgebra : Error { using Error::Error; };

// character engine
struct Degenerate : Error { using Error::Error; };
struct DegeneratePersistent : Error { using Error::Error; };

// oracle
struct PairingAmbiguous : Error { using Error::Error; };
struct IrregularElement : Error { using Error::Error; };
struct InsufficientPowerSums : Error { using Error::Error; };

} // namespace charclass
