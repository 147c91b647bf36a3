#include "pervq/error.hpp"

namespace pervq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadFrame: return "BadFrame";
    case ErrorKind::TieBreak: return "TieBreak";
    case ErrorKind::SingularMonodromy: return "SingularMonodromy";
    case ErrorKind::SubspaceNotInKernel: return "SubspaceNotInKernel";
    case ErrorKind::NotSinglePointAtZero: return "NotSinglePointAtZero";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::DegenerateCover: return "DegenerateCover";
    case ErrorKind::BasepointTooClose: return "BasepointTooClose";
    case ErrorKind::PathThroughCriticalValue: return "PathThroughCriticalValue";
    case ErrorKind::ContinuationAmbiguous: return "ContinuationAmbiguous";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SnapFailed: return "SnapFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace pervq
