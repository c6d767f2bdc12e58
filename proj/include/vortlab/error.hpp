#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vortlab {

enum class ErrorCode {
  DegenerateDomain,
  NonConvexDomain,
  ResolutionTooCoarse,
  UnknownPreset,
  BadParams,
  IoError,
  VersionMismatch,
  ChecksumMismatch,
  GridMismatch,
  NonConvergence,
  EmptyDistribution,
  EmptyInterval,
  NegativeField,
  NotADisk,
  EmptyRing,
  EmptySet,
  LevelOutOfRange,
  SignViolation,
  NoViolationFound,
  DegeneratePatch,
  NonFiniteValue,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vortlab
