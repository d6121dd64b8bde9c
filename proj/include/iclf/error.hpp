#pragma once

#include <stdexcept>
#include <string>

namespace iclf {

// Machine-parseable failure reasons.  The CLI prints the code name and
// exits nonzero; library callers can switch on the code.
enum class ErrorCode {
  TooFewSamples,
  NonmonotoneParam,
  Inadmissible,
  EigenvalueOnUnitCircle,
  Parabolic,
  Nonintegral,
  Resolution,
  StepTooLarge,
  ProjectionAtInfinity,
  DtUnderflow,
  RhoNonpositive,
  NonpositiveValues,
  NoMatch,
  Inconsistent,
  BadInput,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::TooFewSamples: return "TOO_FEW_SAMPLES";
    case ErrorCode::NonmonotoneParam: return "NONMONOTONE_PARAM";
    case ErrorCode::Inadmissible: return "INADMISSIBLE";
    case ErrorCode::EigenvalueOnUnitCircle: return "EIGENVALUE_ON_UNIT_CIRCLE";
    case ErrorCode::Parabolic: return "PARABOLIC";
    case ErrorCode::Nonintegral: return "NONINTEGRAL";
    case ErrorCode::Resolution: return "RESOLUTION";
    case ErrorCode::StepTooLarge: return "STEP_TOO_LARGE";
    case ErrorCode::ProjectionAtInfinity: return "PROJECTION_AT_INFINITY";
    case ErrorCode::DtUnderflow: return "DT_UNDERFLOW";
    case ErrorCode::RhoNonpositive: return "RHO_NONPOSITIVE";
    case ErrorCode::NonpositiveValues: return "NONPOSITIVE_VALUES";
    case ErrorCode::NoMatch: return "NO_MATCH";
    case ErrorCode::Inconsistent: return "INCONSISTENT";
    case ErrorCode::BadInput: return "BAD_INPUT";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace iclf
