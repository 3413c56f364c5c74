#include "evfuse/error.hpp"

namespace evfuse {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::EmptyUniverse: return "EmptyUniverse";
    case ErrorCode::TooManyStates: return "TooManyStates";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::EmptyEvidenceList: return "EmptyEvidenceList";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::CertaintyOutOfRange: return "CertaintyOutOfRange";
    case ErrorCode::EmptyEvidence: return "EmptyEvidence";
    case ErrorCode::FullSetEvidence: return "FullSetEvidence";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::CustomFrameNotOpen: return "CustomFrameNotOpen";
    case ErrorCode::CustomFrameMissingTotalSet: return "CustomFrameMissingTotalSet";
    case ErrorCode::CustomFrameContainsEmpty: return "CustomFrameContainsEmpty";
    case ErrorCode::InvalidAllocator: return "InvalidAllocator";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TotalConflict: return "TotalConflict";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace evfuse
