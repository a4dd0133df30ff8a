#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "plsurf/pl_function.hpp"
#include "plsurf/surface.hpp"

namespace plsurf {

/// A surface with a function on it, as read from or written to an instance
/// file.
struct Instance {
  SurfaceComplex surface;
  PLFunction function;
  std::map<std::string, std::string> metadata;
};

/// Surfaces are grown bottom-up from a list of stages. Stage k sits at height
/// 10k; every event of a stage acts on the list of open tubes (boundary rings
/// still to be continued upwards). Tube indices refer to the list as it is
/// when the event runs.
enum class ReebOp {
  MinCap,          // new tube starting at a local minimum
  BottomBoundary,  // new tube starting at a boundary circle
  MaxCap,          // close tube at a local maximum
  TopBoundary,     // close tube at a boundary circle
  Split,           // one tube becomes `arity` tubes through one saddle
  Merge,           // tubes tube..tube+arity-1 become one through one saddle
  Twist,           // one tube passes a saddle whose lobes rejoin with a flip
};

struct ReebEvent {
  ReebOp op;
  int tube = 0;
  int arity = 2;
};

using ReebStage = std::vector<ReebEvent>;

struct ReebOptions {
  int ring = 4;             // vertices on a freshly created ring
  std::uint32_t seed = 0;   // drives value offsets and zipper interleavings
  bool symmetric = false;   // fixed alternating offsets and regular zippers
};

/// Builds the instance; throws UnsupportedKind on an impossible program
/// (unknown tube, tubes left open, rings too short for a split).
Instance build_reeb(const std::vector<ReebStage>& program, const ReebOptions& options = {});

struct GenerateParams {
  int genus = 0;      // handles (split followed by merge)
  int crosscaps = 0;  // twists
  int boundary = 0;   // boundary circles
  int dimples = 0;    // split with one lobe capped by a maximum
  int saddle_arity = 2;
  ReebOptions options;
};

std::vector<ReebStage> reeb_program(const GenerateParams& params);
Instance generate(const GenerateParams& params);

/// Named fixtures: "sphere", "torus", "genus2", "genus3", "pants",
/// "two-disk-pieces", "klein", "projective", "monkey". Throws UnsupportedKind.
Instance generate_named(const std::string& name, std::uint32_t seed = 0);
std::vector<std::string> named_kinds();

}  // namespace plsurf
