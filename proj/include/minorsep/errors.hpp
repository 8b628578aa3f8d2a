#pragma once

#include <stdexcept>
#include <string>

namespace minorsep {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: vertex id out of range, unparsable file.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its admissible range (Delta < 1, p > n, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// 64-bit overflow in weights or distances. Never wrapped silently.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (vertex not in tree, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// contract_partition on a part that does not induce a connected subgraph.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Exact enumeration refused because the instance is too large.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// A construction failed in a way its preconditions should rule out.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace minorsep
