#pragma once

#include <stdexcept>
#include <string>

namespace pathtsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file or literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iteration or size cap was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A state that correct upstream input can never produce; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pathtsp
