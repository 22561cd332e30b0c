#pragma once

#include <stdexcept>
#include <string>

namespace membrane {

/// Matrix fails the unit-determinant / positive-definiteness contract.
class InvalidMatrixError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Complex dilatation with |mu| >= 1.
class InvalidDilatationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad catalog / operation parameters (unknown entry, out-of-range values).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A finite-difference stencil point left the map's domain.
class StencilError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-positive Jacobian where an orientation-preserving map was required.
class OrientationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MeshingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Eigensolver hit its iteration cap; carries the last Rayleigh quotient.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_lambda)
        : std::runtime_error(what), last_lambda(last_lambda) {}
    double last_lambda;
};

/// Quadrature failed to settle (overflow or >10% change at the last level).
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace membrane
