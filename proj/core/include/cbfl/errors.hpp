#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cbfl {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A SystemParams constraint was violated. key() names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& message);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// Malformed text input (config files, sample files, serialized records).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input is outside the domain of a formula (nonpositive rate, unstable queue, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// SVRG produced a nonfinite iterate.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Fewer than 2f+1 peers can participate in a PBFT phase.
class QuorumUnreachable : public Error {
 public:
  using Error::Error;
};

}  // namespace cbfl
