#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evfuse {

enum class ErrorCode {
  DuplicateLabel,
  EmptyUniverse,
  TooManyStates,
  UnknownState,
  UniverseMismatch,
  EmptyEvidenceList,
  MalformedDocument,
  CertaintyOutOfRange,
  EmptyEvidence,
  FullSetEvidence,
  DuplicateName,
  FrameMismatch,
  CustomFrameNotOpen,
  CustomFrameMissingTotalSet,
  CustomFrameContainsEmpty,
  InvalidAllocator,
  IndexOutOfRange,
  TotalConflict,
  CapacityExceeded,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C boundary can map it onto a stable status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace evfuse
