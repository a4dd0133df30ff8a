#pragma once

#include <optional>
#include <vector>

#include "plsurf/pl_function.hpp"
#include "plsurf/surface.hpp"

namespace plsurf {

/// Closed interval [lo, hi] around a special value. On the circle lo and hi
/// are lifts around center (lo may be negative, hi may exceed 1).
struct Band {
  Rational center;
  Rational lo;
  Rational hi;
};

/// Each band reaches halfway to the neighbouring level and is then shrunk by
/// 1/2. A level without neighbour on one side mirrors the other side; a lone
/// line level gets [c - 1/2, c + 1/2]. Circle gaps are measured cyclically.
std::vector<Band> choose_bands(const std::vector<Rational>& levels, bool circle);

struct Atom {
  int component;  // index into Atlas::components
  int level;      // index into Atlas::levels / Atlas::bands
  Subsurface region;  // faces of the refined complex
};

struct CanonicalNbhd {
  int component;
  Subsurface region;           // refined faces: atom plus disk complement components
  std::vector<FaceSet> disks;  // complement components that were added
  bool is_disk = false;
  bool is_whole = false;       // covers the whole surface
};

/// Everything derived from (S, f): the complex refined at special levels and
/// band ends, the critical components, their atoms and canonical
/// neighbourhoods.
struct Atlas {
  SurfaceComplex surface;
  PLFunction function;
  SurfaceClass surface_class;
  AxiomReport axioms;
  std::vector<SpecialLevel> levels;
  std::vector<Band> bands;
  Refinement refined;
  std::vector<CriticalComponent> components;
  std::vector<int> component_level;
  std::vector<Atom> atoms;
  std::vector<CanonicalNbhd> canonical;

  int num_components() const { return static_cast<int>(components.size()); }
};

/// Validates the axioms and builds the full atlas. Internal consistency
/// failures (atom boundary not at band ends, overlapping atoms) throw
/// InvariantViolation or BandContainsOtherCritical. Extra levels are added
/// to the refinement.
Atlas build_atlas(const SurfaceComplex& s, const PLFunction& f, const std::vector<Rational>& extra_levels = {});

/// Refined faces lying in f^{-1}(band).
FaceSet faces_in_band(const Atlas& a, const Band& band);

/// Faces around the vertices of a critical component.
FaceSet component_faces(const Atlas& a, int component);

Atom atom(const Atlas& a, int component);
CanonicalNbhd canonical_neighborhood(const Atlas& a, const Atom& atom);

/// No complement component is a disk. Throws DiskComponentInN when a
/// component of n is a disk. A subsurface covering all of S counts as
/// incompressible.
bool is_incompressible(const SurfaceComplex& s, const Subsurface& n);

/// r together with every complement component that is a disk.
Subsurface canonical_completion(const SurfaceComplex& s, const Subsurface& r);
bool contained_in_disk(const SurfaceComplex& s, const Subsurface& r);

struct ChiSumReport {
  std::vector<int> non_disk;  // component indices
  int chi_surface = 0;
  int chi_sum = 0;
  bool complement_cylinders = true;
  bool equal = false;
};

/// Sum of chi over non-disk canonical neighbourhoods. Throws SurfaceIsDisk
/// and SurfaceIsSphere (every canonical neighbourhood of the sphere is the
/// whole sphere, so the sum counts it once per component).
ChiSumReport chi_sum_check(const Atlas& a);

/// Index of the unique non-disk canonical neighbourhood containing the disk
/// N^(K), or nullopt when the surface is a disk.
std::optional<int> parent_canonical(const Atlas& a, int component);

}  // namespace plsurf
