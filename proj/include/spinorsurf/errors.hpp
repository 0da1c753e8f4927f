#pragma once

#include <stdexcept>
#include <string>

namespace spinorsurf {

// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// Jacobian of the immersion has rank < 2 at some node.
class DegenerateImmersion : public Error {
  public:
    using Error::Error;
};

// Neighbouring frames too far apart to pick a consistent spin lift.
class LiftAmbiguity : public Error {
  public:
    using Error::Error;
};

class ZeroLength : public Error {
  public:
    using Error::Error;
};

class SingularPath : public Error {
  public:
    using Error::Error;
};

// Period forms have genuine periods (or the chart is not simply connected).
class NotExact : public Error {
  public:
    using Error::Error;
};

class NonPositiveFactor : public Error {
  public:
    using Error::Error;
};

class GaugeMismatch : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

// File could not be read or written; the message carries the path.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace spinorsurf
