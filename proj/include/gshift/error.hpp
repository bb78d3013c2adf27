#pragma once

#include <stdexcept>
#include <string>

namespace gshift {

// Every failure the library can diagnose carries one of these codes.
// The CLI prints the code name verbatim, so the names are part of the
// external interface and stay stable.
enum class ErrorCode {
  NonAssociative,
  NoIdentity,
  NoInverse,
  DuplicateElement,
  SizeLimit,
  EmptyShift,
  NotAWord,
  NotStabilized,
  NotProductClosed,
  IdentityLoopMissing,
  NotSurjective,
  NotSeparating,
  NotSameCoset,
  SpliceNotAWord,
  NotASubgroup,
  PreconditionK1,
  PreconditionK2,
  AmalgamationExhausted,
  SplitVerificationFailed,
  AmbiguousAmalgamation,
  IterationLimit,
  EmptyTruncation,
  BadCertificate,
  RadiusTooSmall,
  SyntaxError,
  UnresolvedReference,
  SectionInvalid,
  IoError,
};

const char* error_code_name(ErrorCode c);

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(c)) + ": " + detail),
        code(c) {}
};

}  // namespace gshift
