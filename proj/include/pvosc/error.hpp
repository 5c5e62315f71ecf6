#pragma once

#include <stdexcept>
#include <string>

namespace pvosc {

enum class ErrorKind {
  NotMonic,
  NotPisot,
  CertificationFailed,
  DivisionByZero,
  FieldMismatch,
  NonpositiveBound,
  NotApplicable,
  InvalidInput,
  BudgetExceeded,
  ReplayMismatch,
  Disagreement,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pvosc
