#pragma once

#include <stdexcept>
#include <string>

namespace ldi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (CSV syntax, ragged rows, invalid UTF-8).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row = 0)
      : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Schema violations: duplicate or unknown attributes.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated (fraction out of range, k < 1, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Backend misconfiguration: missing API key, rejected credentials.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Remote backend gave up after exhausting its retry budget.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int last_status, int retries)
      : Error(what), last_status_(last_status), retries_(retries) {}
  int last_status() const noexcept { return last_status_; }
  int retries() const noexcept { return retries_; }

 private:
  int last_status_;
  int retries_;
};

/// The mock backend could not derive an answer from the prompt.
class OracleMissError : public Error {
 public:
  using Error::Error;
};

}  // namespace ldi
