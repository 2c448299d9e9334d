#include "scalarkit/errors.hpp"

namespace scalarkit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NonFieldDomain: return "NonFieldDomain";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::NeedsExtension: return "NeedsExtension";
    case ErrorCode::NotOmegaStableShape: return "NotOmegaStableShape";
    case ErrorCode::ElementNotInModule: return "ElementNotInModule";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
    case ErrorCode::NoSplit: return "NoSplit";
    case ErrorCode::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::ActionNotWellFormed: return "ActionNotWellFormed";
    case ErrorCode::NotEquicharacteristic: return "NotEquicharacteristic";
    case ErrorCode::ExtensionNotOverK0: return "ExtensionNotOverK0";
    case ErrorCode::NotLie: return "NotLie";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::ClassTooLarge: return "ClassTooLarge";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::ProbeExhausted: return "ProbeExhausted";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      detail_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace scalarkit
