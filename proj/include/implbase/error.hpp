#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace implbase {

enum class ErrorKind {
  UnknownAttribute,
  EmptyLhs,
  SyntaxError,
  UniverseMismatch,
  NotClarified,
  DegenerateContext,
  MalformedCxt,
  IoError,
  NotStandardContext,
  WrongBasisKind,
  InvalidCombo,
  InvalidArgument,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Every domain failure in the library surfaces as an Error carrying its kind;
// the CLI prints error_name(kind) and exits with status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace implbase
