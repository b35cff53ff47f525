#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace landau {

enum class ErrorKind {
  Domain,
  Index,
  Overflow,
  Capacity,
  DimensionMismatch,
  Precondition,
  StepSize,
  NonFinite,
  Parse,
  Invariant,
  Io,
  DegenerateSample,
  QuadratureOrder,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every module; `kind()` is what the CLI reports.
class Error : public std::runtime_error
{
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what)
      , kind_(kind)
  {
  }

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace landau
