#ifndef ADASTREAM_ERRORS_H_
#define ADASTREAM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adastream {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller passed a value outside an operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// An operation was invoked in a state that does not permit it.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Input data violates a schema or a domain invariant.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IncompleteGridError : public DataError {
 public:
  using DataError::DataError;
};

class RangeError : public DataError {
 public:
  using DataError::DataError;
};

class ConfigError : public DataError {
 public:
  using DataError::DataError;
};

class ModelCorruptError : public DataError {
 public:
  using DataError::DataError;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int epoch)
      : Error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}

  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace adastream

#endif  // ADASTREAM_ERRORS_H_
