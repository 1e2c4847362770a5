#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace macm {

enum class ErrorCode {
  DomainError,
  CellOutsideShape,
  NotAStrip,
  SingularParameter,
  DivergentSeries,
  ZeroDenominator,
  UnsupportedSpec,
  TruncationTooShort,
  CapExceeded,
  InvalidDatum,
  NonPositiveProbability,
  ParseError,
  ConfigError,
  UnknownSuite,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and tests) can dispatch on the condition instead of the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::CellOutsideShape: return "CellOutsideShape";
    case ErrorCode::NotAStrip: return "NotAStrip";
    case ErrorCode::SingularParameter: return "SingularParameter";
    case ErrorCode::DivergentSeries: return "DivergentSeries";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::TruncationTooShort: return "TruncationTooShort";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InvalidDatum: return "InvalidDatum";
    case ErrorCode::NonPositiveProbability: return "NonPositiveProbability";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

}  // namespace macm
