#include "cheb/error.hpp"

namespace cheb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::MixedTables: return "MixedTables";
    case ErrorCode::BruteForceTooLarge: return "BruteForceTooLarge";
    case ErrorCode::NonPositiveShape: return "NonPositiveShape";
    case ErrorCode::Ramified: return "Ramified";
    case ErrorCode::AdmissibilityFailed: return "AdmissibilityFailed";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::InsufficientSieveDepth: return "InsufficientSieveDepth";
    case ErrorCode::CombinatorialBlowup: return "CombinatorialBlowup";
    case ErrorCode::ZeroClassFunction: return "ZeroClassFunction";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cheb
