#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plsurf {

enum class ErrorCode {
  // input errors (CLI exit 1)
  InvalidInput,
  SyntaxError,
  SchemaError,
  DuplicateId,
  BrokenFaceCycle,
  NonManifoldEdge,
  PinchedVertex,
  DanglingEdge,
  Disconnected,
  BoundaryNotLevel,
  CriticalOnBoundary,
  DegenerateTie,
  NonMonotoneFace,
  UnsupportedKind,
  NotCellular,
  // precondition failures (CLI exit 2)
  PreconditionFailed,
  EmptyComplement,
  BoundaryVertex,
  CriticalLevel,
  DiskComponentInN,
  SurfaceIsDisk,
  SurfaceIsSphere,
  ChiNotNegative,
  NotFPreserving,
  NotDeltaTrivial,
  HypothesisFails,
  AlreadyOrientable,
  BoundaryNotInAnnuli,
  NecessaryConditionFailed,
  // invariant violations (CLI exit 3)
  InvariantViolation,
  InconsistentIncidence,
  NotChainMap,
  BandContainsOtherCritical,
};

enum class ErrorCategory { Input = 1, Precondition = 2, Invariant = 3 };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace plsurf
