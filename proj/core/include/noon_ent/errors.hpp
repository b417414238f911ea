#pragma once

#include <stdexcept>
#include <string>

namespace noon_ent {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TraceError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

class MomentUnavailable : public Error {
 public:
  using Error::Error;
};

class DegenerateUnresolvable : public Error {
 public:
  using Error::Error;
};

class UnsupportedModeCount : public Error {
 public:
  using Error::Error;
};

class NotDiagonal : public Error {
 public:
  using Error::Error;
};

// Malformed JSON or a document that does not follow the expected schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace noon_ent
