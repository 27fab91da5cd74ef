// errors.hpp — error taxonomy for the qrelax library

#pragma once

#include <stdexcept>
#include <string>

namespace qrelax {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linalg
struct NonHermitianInput : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// states
struct InvalidKet : Error { using Error::Error; };

// redfield
struct NegativeTime : Error { using Error::Error; };

// normalize
struct DegenerateSigma : Error { using Error::Error; };
struct InvalidAlpha : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };

// observables
struct InvalidState : Error { using Error::Error; };
struct NotXState : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// io
struct ParseError : Error { using Error::Error; };
struct NonPhysicalRecord : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace qrelax
