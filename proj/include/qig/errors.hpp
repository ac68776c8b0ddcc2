#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qig {

enum class ErrorCode {
  InvalidInput,
  BoundaryViolation,
  NotAState,
  NotHermitian,
  ChartSingularity,
  CenterSingularity,
  DomainError,
  PoleError,
  IndefiniteMetric,
  IllConditioned,
  ExtrapolationUnstable,
  NotPositive,
  NumericalUnderflow,
  NeighborhoodOutsideBall,
  LeftManifold,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::BoundaryViolation: return "BoundaryViolation";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ChartSingularity: return "ChartSingularity";
    case ErrorCode::CenterSingularity: return "CenterSingularity";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::IndefiniteMetric: return "IndefiniteMetric";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NumericalUnderflow: return "NumericalUnderflow";
    case ErrorCode::NeighborhoodOutsideBall: return "NeighborhoodOutsideBall";
    case ErrorCode::LeftManifold: return "LeftManifold";
  }
  return "Unknown";
}

/// Input errors are the caller's fault (bad point, bad argument); everything
/// else is a numeric failure. The CLI maps these onto exit codes 2 and 3.
constexpr bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::BoundaryViolation:
    case ErrorCode::NotAState:
    case ErrorCode::NotHermitian:
    case ErrorCode::ChartSingularity:
    case ErrorCode::CenterSingularity:
    case ErrorCode::DomainError:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qig
