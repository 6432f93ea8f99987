#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vtex {

// Numeric values are shared with the C API status codes and the CLI exit
// codes; never renumber an existing entry.
enum class ErrorCode : int {
  InvalidArgument = 1,
  MissingInput = 2,
  DimensionMismatch = 3,
  DecodeFailure = 4,
  TooFewFrames = 5,
  EncodeFailure = 6,
  IoFailure = 7,
  NonFiniteEntry = 8,
  DegenerateHistogram = 9,
  InvalidBounds = 10,
  MissingClustering = 11,
  MatrixTooSmall = 12,
  AllZeroDistances = 13,
  NonPositiveSigmaMultiple = 14,
  FrameTooSmall = 15,
  InvalidK = 16,
  EmptyInput = 17,
  IndexOutOfRange = 18,
  NoFeasibleLoop = 19,
  InsufficientClusters = 20,
  EmptyCluster = 21,
  InvalidN = 22,
  CacheMiss = 23,
  Internal = 24,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace vtex
