#pragma once

#include <stdexcept>
#include <string>

namespace absorder {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Element payload does not match the space model / level it is used with.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Operation requires a self-adjoint element.
class NotSelfAdjoint : public Error {
 public:
  using Error::Error;
};

// Operation requires cone membership of its inputs.
class OutsideCone : public Error {
 public:
  using Error::Error;
};

// Operation requires p in the order interval [0, e].
class OutOfInterval : public Error {
 public:
  using Error::Error;
};

// Kernel/quotient machinery requires an absolute-value preserving map.
class NotAbsPreserving : public Error {
 public:
  using Error::Error;
};

// Map inversion / bijective suites require an invertible action.
class Singular : public Error {
 public:
  using Error::Error;
};

// Suite requires a surjective map.
class NotSurjective : public Error {
 public:
  using Error::Error;
};

// Suite requires a unital map.
class NotUnital : public Error {
 public:
  using Error::Error;
};

// Matricial levels and the operator Jordan product are not defined on the
// lattice model.
class LatticeUnsupported : public Error {
 public:
  using Error::Error;
};

// Malformed file or descriptor input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace absorder
