#include "vtex/error.hpp"

namespace vtex {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingInput: return "MissingInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DecodeFailure: return "DecodeFailure";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    case ErrorCode::EncodeFailure: return "EncodeFailure";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::DegenerateHistogram: return "DegenerateHistogram";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::MissingClustering: return "MissingClustering";
    case ErrorCode::MatrixTooSmall: return "MatrixTooSmall";
    case ErrorCode::AllZeroDistances: return "AllZeroDistances";
    case ErrorCode::NonPositiveSigmaMultiple: return "NonPositiveSigmaMultiple";
    case ErrorCode::FrameTooSmall: return "FrameTooSmall";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NoFeasibleLoop: return "NoFeasibleLoop";
    case ErrorCode::InsufficientClusters: return "InsufficientClusters";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::InvalidN: return "InvalidN";
    case ErrorCode::CacheMiss: return "CacheMiss";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace vtex
