#include "plsurf/shapes.hpp"

namespace plsurf::shapes {

SurfaceComplex tetrahedron() {
  return from_polygons(4, {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

SurfaceComplex octahedron() {
  // 0:+x 1:-x 2:+y 3:-y 4:+z 5:-z
  return from_polygons(6, {{4, 0, 2}, {4, 2, 1}, {4, 1, 3}, {4, 3, 0},
                           {5, 2, 0}, {5, 1, 2}, {5, 3, 1}, {5, 0, 3}});
}

SurfaceComplex cube() {
  // vertex index = x + 2y + 4z
  return from_polygons(8, {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                           {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}});
}

SurfaceComplex icosahedron() {
  return from_polygons(12, {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
                            {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                            {3, 9, 4},  {3, 4, 2},  {3, 2, 6},  {3, 6, 8},  {3, 8, 9},
                            {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},  {9, 8, 1}});
}

namespace {

SurfaceComplex grid(int n, int m, bool flip) {
  auto p = [&](int i, int j) {
    if (j == m) {
      j = 0;
      if (flip) i = n - i;
    }
    i = ((i % n) + n) % n;
    return i + n * j;
  };
  std::vector<std::vector<int>> quads;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) quads.push_back({p(i, j), p(i + 1, j), p(i + 1, j + 1), p(i, j + 1)});
  return from_polygons(n * m, quads);
}

}  // namespace

SurfaceComplex torus_grid(int n, int m) { return grid(n, m, false); }
SurfaceComplex klein_grid(int n, int m) { return grid(n, m, true); }

SurfaceComplex rp2_6() {
  return from_polygons(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                           {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
}

SurfaceComplex annulus(int n) {
  std::vector<std::vector<int>> quads;
  for (int i = 0; i < n; ++i) quads.push_back({i, (i + 1) % n, n + (i + 1) % n, n + i});
  return from_polygons(2 * n, quads);
}

SurfaceComplex pants() {
  // 5 x 3 grid of squares with squares (1,1) and (3,1) removed.
  std::vector<std::vector<int>> quads;
  auto v = [](int x, int y) { return x + 6 * y; };
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 5; ++x) {
      if (y == 1 && (x == 1 || x == 3)) continue;
      quads.push_back({v(x, y), v(x + 1, y), v(x + 1, y + 1), v(x, y + 1)});
    }
  return from_polygons(24, quads);
}

SurfaceComplex orientable_word(int g) {
  std::vector<int> w;
  for (int i = 0; i < g; ++i) {
    int a = 2 * i + 1, b = 2 * i + 2;
    w.insert(w.end(), {a, b, -a, -b});
  }
  return from_word(w);
}

SurfaceComplex crosscap_word(int k) {
  std::vector<int> w;
  for (int i = 1; i <= k; ++i) w.insert(w.end(), {i, i});
  return from_word(w);
}

SurfaceComplex antipodal_polygon(int k) {
  std::vector<int> w;
  for (int r = 0; r < 2; ++r)
    for (int i = 1; i <= k; ++i) w.push_back(i);
  return from_word(w);
}

}  // namespace plsurf::shapes
