#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rds {

enum class ErrorCode {
  kParse,
  kOverlappingMatching,
  kDegreeSumMismatch,
  kDegreeExceedsChords,
  kStarCenterOutOfRange,
  kIndexOutOfRange,
  kNotBipartiteForbidden,
  kLengthMismatch,
  kSumMismatch,
  kNotDirectedKind,
  kUnsupported,
  kInvalidRealization,
  kNotNormal,
  kPreconditionViolated,
  kNotAlternating,
  kNotAChord,
  kNotElementary,
  kTooLarge,
  kInstanceTooSmall,
  kNotAdjacent,
  kTooManyStates,
  kNotAMilestonePair,
  kAuditFailed,
  kExhausted,
  kNotGraphical,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// (the CLI in particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rds
