#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace flatcover {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input. Carries a JSON-pointer-style location
/// ("/voltage/2/element") when the error originates in a document.
class InputError : public Error {
 public:
  explicit InputError(std::string message, std::string location = {})
      : Error(location.empty() ? message : location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

/// A construction ran past its configured size bound (group closure,
/// coset enumeration).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation was handed an argument outside its domain, e.g. an
/// incomplete automaton where a complete one is required.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace flatcover
