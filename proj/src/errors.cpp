#include "plsurf/errors.hpp"

namespace plsurf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::BrokenFaceCycle: return "BrokenFaceCycle";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::PinchedVertex: return "PinchedVertex";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::BoundaryNotLevel: return "BoundaryNotLevel";
    case ErrorCode::CriticalOnBoundary: return "CriticalOnBoundary";
    case ErrorCode::DegenerateTie: return "DegenerateTie";
    case ErrorCode::NonMonotoneFace: return "NonMonotoneFace";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::NotCellular: return "NotCellular";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::EmptyComplement: return "EmptyComplement";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::CriticalLevel: return "CriticalLevel";
    case ErrorCode::DiskComponentInN: return "DiskComponentInN";
    case ErrorCode::SurfaceIsDisk: return "SurfaceIsDisk";
    case ErrorCode::SurfaceIsSphere: return "SurfaceIsSphere";
    case ErrorCode::ChiNotNegative: return "ChiNotNegative";
    case ErrorCode::NotFPreserving: return "NotFPreserving";
    case ErrorCode::NotDeltaTrivial: return "NotDeltaTrivial";
    case ErrorCode::HypothesisFails: return "HypothesisFails";
    case ErrorCode::AlreadyOrientable: return "AlreadyOrientable";
    case ErrorCode::BoundaryNotInAnnuli: return "BoundaryNotInAnnuli";
    case ErrorCode::NecessaryConditionFailed: return "NecessaryConditionFailed";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InconsistentIncidence: return "InconsistentIncidence";
    case ErrorCode::NotChainMap: return "NotChainMap";
    case ErrorCode::BandContainsOtherCritical: return "BandContainsOtherCritical";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  if (code <= ErrorCode::NotCellular) return ErrorCategory::Input;
  if (code <= ErrorCode::NecessaryConditionFailed) return ErrorCategory::Precondition;
  return ErrorCategory::Invariant;
}

}  // namespace plsurf
