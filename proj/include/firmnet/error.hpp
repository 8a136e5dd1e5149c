#pragma once

#include <stdexcept>
#include <string>

namespace firmnet {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Illegal layer/mode combination in a degree query.
class InvalidModeError : public Error {
  public:
    using Error::Error;
};

// A node id outside 0..n-1 was referenced.
class UnknownNodeError : public Error {
  public:
    using Error::Error;
};

// Malformed input row; message carries the line number.
class ParseError : public Error {
  public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

// Data admit no finite optimum (e.g. all tail values equal).
class DegenerateError : public Error {
  public:
    using Error::Error;
};

// Matrix input with wrong dimensions.
class ShapeError : public Error {
  public:
    using Error::Error;
};

// Matrix input with an illegal cell value.
class ValueError : public Error {
  public:
    using Error::Error;
};

// Correlation of a constant matrix.
class DegenerateVarianceError : public Error {
  public:
    using Error::Error;
};

// Rank-deficient weighted normal system in logistic fitting.
class SingularError : public Error {
  public:
    using Error::Error;
};

// Network below the minimum analyzable size.
class TooSmallError : public Error {
  public:
    using Error::Error;
};

class EmptyNetworkError : public Error {
  public:
    using Error::Error;
};

// Pair sampling made no progress for too many rounds.
class StalledError : public Error {
  public:
    using Error::Error;
};

// Conditional probability table inconsistent with its graph.
class InvalidCptError : public Error {
  public:
    using Error::Error;
};

// Every conditioning stratum of a contingency test is degenerate.
class InsufficientDataError : public Error {
  public:
    using Error::Error;
};

}  // namespace firmnet
