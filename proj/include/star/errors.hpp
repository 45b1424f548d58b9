#pragma once

#include <stdexcept>
#include <string>

namespace star {

enum class ErrorCode {
  DuplicateSocialPair,
  UnknownNode,
  NonpositiveCapacity,
  NegativeUtility,
  UnknownConfiguration,
  KeyMismatch,
  PrecisionExceeded,
  InvalidFlow,
  CapacityExceeded,
  NotACirculation,
  TooLarge,
  MalformedLine,
  InsufficientNodes,
  IoError,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

// Internal-consistency check; throws Error(Internal) when violated.
void require(bool condition, const std::string& message);

}  // namespace star
