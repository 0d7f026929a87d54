#pragma once

#include <stdexcept>
#include <string>

namespace simgroup {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad notation, degree mismatch, invalid codes.
class InputError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

class InsufficientDepth : public ContractError {
 public:
  InsufficientDepth() : ContractError("insufficient depth") {}
  explicit InsufficientDepth(const std::string& what) : ContractError("insufficient depth: " + what) {}
};

// A size guard tripped before a combinatorial enumeration finished.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace simgroup
