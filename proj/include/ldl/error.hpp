#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ldl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula, sequent or file text. `position()` is a byte offset (or a
/// line number for line-oriented files, see `InputError`).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An input file (basis, poset, derivation) that cannot be loaded.
class InputError : public Error {
 public:
  using Error::Error;
};

class UnknownAtom : public Error {
 public:
  explicit UnknownAtom(const std::string& name) : Error("unknown atom '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A disjunction whose members are not pairwise contradictory.
class DisjointnessViolation : public Error {
 public:
  DisjointnessViolation(const std::string& what, std::size_t first, std::size_t second)
      : Error(what), first_(first), second_(second) {}
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class SizeLimit : public Error {
 public:
  using Error::Error;
};

class NotAConjunction : public Error {
 public:
  using Error::Error;
};

class NotExpressibleHere : public Error {
 public:
  using Error::Error;
};

class UniverseTooSmall : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NotDirected : public Error {
 public:
  using Error::Error;
};

class NotAnLDomain : public Error {
 public:
  using Error::Error;
};

class CompositionMismatch : public Error {
 public:
  using Error::Error;
};

class NotMonotone : public Error {
 public:
  using Error::Error;
};

}  // namespace ldl
