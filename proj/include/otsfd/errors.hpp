#pragma once

#include <stdexcept>
#include <string>

namespace otsfd {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad parameters, unknown names, inconsistent flags.
class ConfigError : public Error {
   public:
    using Error::Error;
};

/// A stencil needs more ghost layers than the field carries.
class InsufficientGhostError : public Error {
   public:
    using Error::Error;
};

/// Time step exceeds the scheme's stability bound, or the solution blew up.
class StabilityError : public Error {
   public:
    using Error::Error;
};

/// A correction term or start-up formula needs a derivative the bundle lacks.
class MissingDerivativeError : public Error {
   public:
    using Error::Error;
};

/// The leading-error polynomial has no positive root (alpha and beta differ in sign).
class NoPositiveRootError : public Error {
   public:
    using Error::Error;
};

/// The level set changes sign more than once along a cell edge.
class UnresolvedBoundaryError : public Error {
   public:
    using Error::Error;
};

/// The implicit domain has no interior nodes on the bounding grid.
class DegenerateDomainError : public Error {
   public:
    using Error::Error;
};

/// boundary_point was asked for an edge without a sign change.
class NoSignChangeError : public Error {
   public:
    using Error::Error;
};

/// The domain is too thin for a cubic ghost extrapolant at this resolution.
class NotEnoughInteriorPointsError : public Error {
   public:
    using Error::Error;
};

/// A corner ghost was filled before one of the edge ghosts it reads.
class GhostOrderError : public Error {
   public:
    using Error::Error;
};

/// The optimal 2D advection variant was requested on a grid or step that is not optimal.
class RatioMismatchError : public Error {
   public:
    using Error::Error;
};

/// A 2D Laplacian stencil was applied on a grid with dx != dy.
class AnisotropicGridError : public Error {
   public:
    using Error::Error;
};

/// Elimination without pivoting hit a (numerically) zero pivot.
class ZeroPivotError : public Error {
   public:
    using Error::Error;
};

/// An iterative solver ran out of iterations.
class NotConvergedError : public Error {
   public:
    using Error::Error;
};

}  // namespace otsfd
