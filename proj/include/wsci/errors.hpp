#pragma once

#include <stdexcept>
#include <string>

namespace wsci {

/// Base of all numerical and domain failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotASupportPoint : public Error {
 public:
  using Error::Error;
};

class DegenerateRange : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class RootBracketFailure : public Error {
 public:
  using Error::Error;
};

class DesignTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace wsci
