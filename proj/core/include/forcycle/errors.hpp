#pragma once

#include <stdexcept>
#include <string>

namespace forcycle {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument lies outside the mathematical domain of an operation
/// (e.g. tau outside (0, 1], delta <= 1, tolerance out of range).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// The map produced a nonpositive radial image: the orbit left the
/// validity region of the cylinder reduction.
class MapImageError : public Error {
public:
    explicit MapImageError(const std::string& what) : Error(what) {}
};

/// An iterative solver (Newton, bisection, adaptive integrator) failed
/// to converge; the message carries the failing location/time.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/// A grid is too coarse to resolve the requested structure
/// (e.g. a fold gap narrower than the slice spacing).
class GridError : public Error {
public:
    explicit GridError(const std::string& what) : Error(what) {}
};

/// A point handed to a fixed-point routine does not satisfy the
/// fixed-point residual precondition.
class NotFixedPointError : public Error {
public:
    explicit NotFixedPointError(const std::string& what) : Error(what) {}
};

/// A fixed point handed to a manifold routine is not a saddle.
class NotSaddleError : public Error {
public:
    explicit NotSaddleError(const std::string& what) : Error(what) {}
};

/// A branch-evaluation window extends past the end of the branch.
class WindowError : public Error {
public:
    explicit WindowError(const std::string& what) : Error(what) {}
};

/// File/stream failure; the message carries the path.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace forcycle
