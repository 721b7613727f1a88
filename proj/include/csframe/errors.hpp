#pragma once

#include <stdexcept>
#include <string>

namespace csframe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with incompatible algebra or module shapes.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed argument that is not a shape problem (bad counts, ranges, files).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotPositive : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  using Error::Error;
};

class NotCentral : public Error {
 public:
  using Error::Error;
};

class NotAFrame : public Error {
 public:
  using Error::Error;
};

class NotControlledFrame : public Error {
 public:
  using Error::Error;
};

class NotSelfAdjoint : public Error {
 public:
  using Error::Error;
};

class NotPositiveWeights : public Error {
 public:
  using Error::Error;
};

class NotSemiNormalized : public Error {
 public:
  using Error::Error;
};

class NotDiagonalOnFrame : public Error {
 public:
  using Error::Error;
};

class DivergentConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace csframe
