#ifndef QBND_ERRORS_HPP
#define QBND_ERRORS_HPP

#include <stdexcept>

namespace qbnd {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteError : Error { using Error::Error; };
struct NonHermitianError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };

struct NotMemberError : Error { using Error::Error; };
struct DegenerateBaseError : Error { using Error::Error; };
struct LpInfeasibleError : Error { using Error::Error; };
struct LpUnboundedError : Error { using Error::Error; };

struct NotTracePreservingError : Error { using Error::Error; };
struct InvalidChoiError : Error { using Error::Error; };
struct SingularMarginalError : Error { using Error::Error; };
struct SingularNormalizerError : Error { using Error::Error; };

struct NotPsdError : Error { using Error::Error; };
struct NotInteriorError : Error { using Error::Error; };
struct NotQubitError : Error { using Error::Error; };
struct ValidationFailedError : Error { using Error::Error; };

}  // namespace qbnd

#endif  // QBND_ERRORS_HPP
