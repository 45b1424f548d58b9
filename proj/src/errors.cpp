#include "star/errors.hpp"

namespace star {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSocialPair: return "DuplicateSocialPair";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NonpositiveCapacity: return "NonpositiveCapacity";
    case ErrorCode::NegativeUtility: return "NegativeUtility";
    case ErrorCode::UnknownConfiguration: return "UnknownConfiguration";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorCode::InvalidFlow: return "InvalidFlow";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::NotACirculation: return "NotACirculation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::InsufficientNodes: return "InsufficientNodes";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCode::Internal, message);
}

}  // namespace star
