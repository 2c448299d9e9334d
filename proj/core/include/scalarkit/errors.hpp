#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scalarkit {

enum class ErrorCode {
  DomainMismatch,
  NonFieldDomain,
  UnsupportedDomain,
  UnsupportedDegree,
  DimensionMismatch,
  NotInvertible,
  InvalidDomain,
  NeedsExtension,
  NotOmegaStableShape,
  ElementNotInModule,
  InvalidStructure,
  NoSplit,
  SearchBoundExceeded,
  DegenerateInput,
  EnumerationTooLarge,
  ActionNotWellFormed,
  NotEquicharacteristic,
  ExtensionNotOverK0,
  NotLie,
  NotNilpotent,
  ClassTooLarge,
  AlgebraMismatch,
  ProbeExhausted,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// message names the violated condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace scalarkit
