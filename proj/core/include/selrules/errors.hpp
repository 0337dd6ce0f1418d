#pragma once

#include <stdexcept>
#include <string>

namespace selrules {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is unreadable, malformed or inconsistent.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (querying a count that was
/// never materialized, counting into a frozen tree, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured resource cap.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace selrules
