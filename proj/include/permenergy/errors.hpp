#pragma once

#include <stdexcept>

namespace permenergy {

/// A configured size cap was exceeded.  The CLI maps this to exit code 3.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input.  The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace permenergy
