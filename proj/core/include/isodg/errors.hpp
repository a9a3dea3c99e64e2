#pragma once

#include <stdexcept>
#include <string>

namespace isodg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mesh / I/O
class UnsupportedFormat : public Error { public: using Error::Error; };
class MixedElementTypes : public Error { public: using Error::Error; };
class DanglingVertexReference : public Error { public: using Error::Error; };
class InvalidMesh : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

// Geometry
class ProjectionFailure : public Error { public: using Error::Error; };
class DegenerateMap : public Error { public: using Error::Error; };

// Quadrature / basis
class UnsupportedDegree : public Error { public: using Error::Error; };

// Assembly / solve
class NonUnitDirection : public Error { public: using Error::Error; };
class SingularMatrix : public Error { public: using Error::Error; };
class MaxIterationsExceeded : public Error { public: using Error::Error; };

// Analysis / CLI
class MissingExactSolution : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };
class NonpositiveError : public Error { public: using Error::Error; };
class ConfigParseError : public Error { public: using Error::Error; };

} // namespace isodg
