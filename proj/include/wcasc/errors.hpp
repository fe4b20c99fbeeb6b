#pragma once

#include <stdexcept>
#include <string>

namespace wcasc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed argument: unknown id, out-of-range index, bad parameter value.
class InputError : public Error {
 public:
  using Error::Error;
};

// A partial realization that no realization of the instance agrees with.
class InconsistentObservation : public Error {
 public:
  using Error::Error;
};

// Table utility queried with an observation pattern it has no value for.
class MissingTableEntry : public Error {
 public:
  using Error::Error;
};

// Policy tree violates its structural contract (missing branch, repeated item).
class MalformedPolicy : public Error {
 public:
  using Error::Error;
};

// No policy can meet the requested goal or budget.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured size caps.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// Oracle invoked on a utility that is not minimal dependent.
class MinimalDependencyRequired : public Error {
 public:
  using Error::Error;
};

enum class ParseCode {
  Syntax,
  UnknownId,
  DuplicateId,
  ZeroCost,
  IncompleteRealization,
  BadValue,
};

const char* parse_code_name(ParseCode code);

class ParseError : public Error {
 public:
  ParseError(ParseCode code, int line, const std::string& message);
  ParseCode code() const { return code_; }
  int line() const { return line_; }

 private:
  ParseCode code_;
  int line_;
};

}  // namespace wcasc
