#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apnforge {

enum class ErrorKind {
  UnsupportedDegree,
  ReducibleModulus,
  FieldMismatch,
  ZeroInverse,
  OddDegree,
  ZeroDirection,
  BadParams,
  NoApnRepresentative,
  LengthMismatch,
  SizeMismatch,
  CapTooLarge,
  NotSupercode,
  TooBig,
  NoWitness,
  ZeroScalar,
  TooLong,
  Timeout,
  DegreeTooLarge,
  GroupTooLarge,
  NotSubgroup,
  DeltaRequiresS1,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every module reports failures through this exception; `kind()` is what
/// callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace apnforge
