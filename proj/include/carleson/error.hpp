#pragma once

#include <stdexcept>
#include <string>

namespace carleson {

// Exit codes are attached to error classes so the CLI can map them directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};

class ParseError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

class RangeError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

class IoError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

class NumericError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 5; }
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 6; }
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw RangeError(what);
}

}  // namespace carleson
