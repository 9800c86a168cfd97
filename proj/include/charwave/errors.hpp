#pragma once

#include <stdexcept>
#include <string>

namespace charwave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the declared domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Value below the range of a monotone map.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A computation needed data beyond the certified time horizon.
class HorizonExceeded : public Error {
 public:
  using Error::Error;
};

// 1 + f(t) vanished where the reflection coefficient was needed.
class FeedbackSingularity : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A root could not be bracketed where geometry says it must exist.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class RunawayError : public Error {
 public:
  using Error::Error;
};

}  // namespace charwave
