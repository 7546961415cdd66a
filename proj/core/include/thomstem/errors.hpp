#pragma once

#include <stdexcept>
#include <string>

namespace thomstem {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands live in exterior algebras of different rank.
class RankMismatch : public Error {
  public:
    using Error::Error;
};

/// A stable stem outside the hard-coded table, or a composition the table does not cover.
class StemOutOfRange : public Error {
  public:
    using Error::Error;
};

/// Input outside what the engine models (nonzero signature, non-rank-1 fibers, ...).
class Unsupported : public Error {
  public:
    using Error::Error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Class assignment inconsistent with the report it is evaluated against.
class AssignmentError : public Error {
  public:
    using Error::Error;
};

/// Malformed scenario input. `field()` is a JSON-pointer-like path to the offending field.
class SpecError : public Error {
  public:
    SpecError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

}  // namespace thomstem
