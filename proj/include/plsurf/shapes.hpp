#pragma once

#include "plsurf/surface.hpp"

// Small named cell complexes used by the generators, the self-test and the
// test suites.
namespace plsurf::shapes {

SurfaceComplex tetrahedron();
SurfaceComplex octahedron();
SurfaceComplex cube();
SurfaceComplex icosahedron();

/// n x m quadrilateral grid with opposite sides glued (n, m >= 3).
SurfaceComplex torus_grid(int n, int m);
/// Same grid with one pair of sides glued with a flip (n, m >= 3).
SurfaceComplex klein_grid(int n, int m);
/// Six-vertex triangulation of the projective plane.
SurfaceComplex rp2_6();
/// Annulus triangulated as a ring of n quads (n >= 3).
SurfaceComplex annulus(int n);
/// Pair of pants: a hexagonal disk with two square holes.
SurfaceComplex pants();
/// Single polygon with word a1 b1 a1^-1 b1^-1 ... (genus g >= 1).
SurfaceComplex orientable_word(int g);
/// Single polygon with word a1 a1 ... ak ak (k >= 1).
SurfaceComplex crosscap_word(int k);
/// Single 2k-gon with the antipodal word a1..ak a1..ak (projective plane).
SurfaceComplex antipodal_polygon(int k);

}  // namespace plsurf::shapes
