#ifndef TOPENT_ERROR_H_
#define TOPENT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topent {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic left the 64-bit numerator/denominator range.
class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

class MetricAxiomViolation : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

// A map of the symbolic example systems would leave the level cap.
class TruncationExceeded : public Error {
 public:
  using Error::Error;
};

class NotACover : public Error {
 public:
  using Error::Error;
};

class DegenerateSpace : public Error {
 public:
  using Error::Error;
};

class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

// The weak* tail bound is too large to certify distinctness of embedded points.
class TruncationTooCoarse : public Error {
 public:
  using Error::Error;
};

class EmptyCell : public Error {
 public:
  EmptyCell(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  // 1-based index of the subcover element whose cell came out empty.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class PreconditionNotSeparated : public Error {
 public:
  PreconditionNotSeparated(std::size_t first, std::size_t second,
                           const std::string& what)
      : Error(what), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class CoverTooCoarse : public Error {
 public:
  using Error::Error;
};

class SeparationFailure : public Error {
 public:
  SeparationFailure(std::size_t first, std::size_t second,
                    const std::string& what)
      : Error(what), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace topent

#endif  // TOPENT_ERROR_H_
