// errors.hpp — error types thrown across the library, named by failure mode

#pragma once

#include <stdexcept>
#include <string>

namespace explab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitianError : Error { using Error::Error; };
struct NotPsdError : Error { using Error::Error; };
struct NotPdError : Error { using Error::Error; };
struct ZeroOperatorError : Error { using Error::Error; };
struct SupportMismatchError : Error { using Error::Error; };
struct CapExceededError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct EigenSolverError : Error { using Error::Error; };
struct OutOfRangeError : Error { using Error::Error; };
struct DisjointSupportError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };       // affine psi, no unique root
struct NTooSmallError : Error { using Error::Error; };
struct NotSemiClassicalError : Error { using Error::Error; };
struct CommutingInputError : Error { using Error::Error; };
struct ScanFailedError : Error { using Error::Error; };
struct CertificateError : Error { using Error::Error; };
struct DegenerateFamilyError : Error { using Error::Error; };
struct DepthTooSmallError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace explab
