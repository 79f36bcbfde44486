#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace helmdpg {

enum class ErrorKind {
  InvalidParameter,
  NotPositiveDefinite,
  NotHermitian,
  DimensionMismatch,
  REnrichmentTooSmall,
  InteriorBlockSingular,
  IllConditioned,
  MeshTooSmall,
  SolveFailure,
  BCInconsistent,
  CenterRowDegenerate,
  MissingValue,
  NoRootFound,
  UnsupportedPrecision,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::REnrichmentTooSmall: return "REnrichmentTooSmall";
    case ErrorKind::InteriorBlockSingular: return "InteriorBlockSingular";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::MeshTooSmall: return "MeshTooSmall";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::BCInconsistent: return "BCInconsistent";
    case ErrorKind::CenterRowDegenerate: return "CenterRowDegenerate";
    case ErrorKind::MissingValue: return "MissingValue";
    case ErrorKind::NoRootFound: return "NoRootFound";
    case ErrorKind::UnsupportedPrecision: return "UnsupportedPrecision";
  }
  return "Unknown";
}

/// Every numerical or precondition failure in the library is reported
/// through this exception; `kind()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace helmdpg
