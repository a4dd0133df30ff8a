#include "plsurf/cell_automorphism.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "plsurf/errors.hpp"

namespace plsurf {

namespace {

// ---------------------------------------------------------------- linear algebra

using QMatrix = std::vector<std::vector<Rational>>;  // rows

// Reduced row echelon form over the first `limit` columns; returns pivot
// columns in row order.
std::vector<int> rref(QMatrix& m, int limit) {
  std::vector<int> pivots;
  int rows = static_cast<int>(m.size());
  int r = 0;
  for (int c = 0; c < limit && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r])
      if (x != 0) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational fac = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j)
        if (m[r][j] != 0) m[i][j] -= fac * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

QMatrix dense_q(const SparseMatrix& a) {
  QMatrix m(a.rows, std::vector<Rational>(a.num_cols()));
  for (int j = 0; j < a.num_cols(); ++j)
    for (auto [i, v] : a.cols[j]) m[i][j] += v;
  return m;
}

std::vector<std::vector<Rational>> nullspace(const SparseMatrix& a) {
  QMatrix m = dense_q(a);
  int n = a.num_cols();
  auto piv = rref(m, n);
  std::vector<char> is_pivot(n, 0);
  for (int c : piv) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> out;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Rational> v(n);
    v[j] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][j];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Rational> act_on(const SignedPermutation& h, const std::vector<Rational>& v) {
  std::vector<Rational> out(v.size());
  for (int j = 0; j < h.size(); ++j)
    if (v[j] != 0) out[h.image[j]] += v[j] * h.sign[j];
  return out;
}

// ---------------------------------------------------------------- flags

bool side_forward(const FlagSystem& fs, int x) { return (x % 2 == 0) == static_cast<bool>(fs.at_tail[x]); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Cell maps of a flag permutation already known to commute with s0, s1, s2.
CellularAutomorphism cells_of(const CellPartition& p, const FlagSystem& fs, std::vector<int> flag) {
  const auto& s = p.shape;
  CellularAutomorphism h;
  h.vertex.assign(s.num_vertices(), -1);
  h.edge.assign(s.num_edges(), -1);
  h.face.assign(s.num_faces(), -1);
  h.edge_sign.assign(s.num_edges(), 0);
  h.face_sign.assign(s.num_faces(), 0);
  for (int x = 0; x < fs.size(); ++x) {
    int y = flag[x];
    h.vertex[fs.vertex[x]] = fs.vertex[y];
    h.edge[fs.edge[x]] = fs.edge[y];
    h.face[fs.face[x]] = fs.face[y];
    if (fs.at_tail[x]) h.edge_sign[fs.edge[x]] = fs.at_tail[y] ? 1 : -1;
    if (x % 2 == 0) h.face_sign[fs.face[x]] = y % 2 == 0 ? 1 : -1;
  }
  for (int f = 0; f < s.num_faces(); ++f)
    if (p.annulus[f] != p.annulus[h.face[f]]) fail(ErrorCode::NotCellular, "annulus mapped to a disk cell");
  h.flag = std::move(flag);
  return h;
}

bool commutes(const FlagSystem& fs, const std::vector<int>& flag) {
  for (int x = 0; x < fs.size(); ++x)
    if (flag[fs.s0[x]] != fs.s0[flag[x]] || flag[fs.s1[x]] != fs.s1[flag[x]] ||
        flag[fs.s2[x]] != fs.s2[flag[x]])
      return false;
  return true;
}

// Extends x0 -> t to a flag permutation, or returns nullopt.
std::optional<std::vector<int>> extend(const FlagSystem& fs, int x0, int t) {
  int n = fs.size();
  std::vector<int> img(n, -1), pre(n, -1);
  img[x0] = t;
  pre[t] = x0;
  std::vector<int> stack{x0};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto* inv : {&fs.s0, &fs.s1, &fs.s2}) {
      int y = (*inv)[x];
      int want = (*inv)[img[x]];
      if (img[y] == -1) {
        if (pre[want] != -1) return std::nullopt;
        img[y] = want;
        pre[want] = y;
        stack.push_back(y);
      } else if (img[y] != want) {
        return std::nullopt;
      }
    }
  }
  if (std::find(img.begin(), img.end(), -1) != img.end())
    fail(ErrorCode::PreconditionFailed, "automorphism enumeration needs a connected shape");
  return img;
}

SignedPermutation identity_perm(int n) {
  SignedPermutation p;
  p.image.resize(n);
  std::iota(p.image.begin(), p.image.end(), 0);
  p.sign.assign(n, 1);
  return p;
}

void check_commutes(const SparseMatrix& d, const SignedPermutation& lower, const SignedPermutation& upper,
                    const char* what) {
  for (int j = 0; j < d.num_cols(); ++j) {
    std::map<int, int> lhs, rhs;
    for (auto [i, v] : d.cols[j]) lhs[lower.image[i]] += v * lower.sign[i];
    for (auto [i, v] : d.cols[upper.image[j]]) rhs[i] += v * upper.sign[j];
    std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    if (lhs != rhs) fail(ErrorCode::NotChainMap, std::string("induced maps do not commute with ") + what);
  }
}

int to_int(const Rational& r) {
  if (denominator(r) != 1) fail(ErrorCode::InvariantViolation, "non-integral Lefschetz number");
  return static_cast<int>(numerator(r));
}

}  // namespace

// ---------------------------------------------------------------- partitions

int CellPartition::num_annuli() const { return static_cast<int>(std::count(annulus.begin(), annulus.end(), 1)); }

int CellPartition::euler_char() const {
  return shape.num_vertices() - shape.num_edges() + shape.num_faces() - num_annuli();
}

int CellPartition::boundary_count() const {
  return num_annuli() + static_cast<int>(shape.boundary_cycles().size());
}

bool CellPartition::orientable() const { return coherent_orientation(shape).has_value(); }

CellPartition partition_of(const SurfaceComplex& s) { return {s, std::vector<char>(s.num_faces(), 0)}; }

FlagSystem flags_of(const SurfaceComplex& s) {
  int n = 2 * s.num_sides();
  FlagSystem fs;
  fs.s0.resize(n);
  fs.s1.resize(n);
  fs.s2.resize(n);
  fs.vertex.resize(n);
  fs.edge.resize(n);
  fs.face.resize(n);
  fs.at_tail.resize(n);
  for (int f = 0; f < s.num_faces(); ++f) {
    int k = s.face_size(f);
    for (int i = 0; i < k; ++i) {
      int idx = s.side_index(f, i);
      Side sd = s.face(f).sides[i];
      for (int end = 0; end < 2; ++end) {
        int x = 2 * idx + end;
        fs.s0[x] = 2 * idx + 1 - end;
        fs.s1[x] = end == 1 ? 2 * s.side_index(f, (i + 1) % k) : 2 * s.side_index(f, (i + k - 1) % k) + 1;
        fs.vertex[x] = end == 0 ? s.side_start(f, i) : s.side_end(f, i);
        fs.edge[x] = sd.edge;
        fs.face[x] = f;
        fs.at_tail[x] = (end == 0) == sd.forward;
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    auto sides = s.edge_sides(fs.edge[x]);
    SideRef self = s.side_ref(x / 2);
    if (sides.size() < 2) {
      fs.s2[x] = x;
      continue;
    }
    SideRef o = sides[0] == self ? sides[1] : sides[0];
    bool ofw = s.face(o.face).sides[o.pos].forward;
    fs.s2[x] = 2 * s.side_index(o.face, o.pos) + (static_cast<bool>(fs.at_tail[x]) == ofw ? 0 : 1);
  }
  return fs;
}

// ---------------------------------------------------------------- automorphisms

CellularAutomorphism identity_automorphism(const CellPartition& p) {
  auto fs = flags_of(p.shape);
  std::vector<int> id(fs.size());
  std::iota(id.begin(), id.end(), 0);
  return cells_of(p, fs, std::move(id));
}

CellularAutomorphism from_flag_map(const CellPartition& p, std::vector<int> flag) {
  auto fs = flags_of(p.shape);
  if (static_cast<int>(flag.size()) != fs.size()) fail(ErrorCode::NotCellular, "flag map has the wrong size");
  std::vector<char> hit(fs.size(), 0);
  for (int y : flag) {
    if (y < 0 || y >= fs.size() || hit[y]) fail(ErrorCode::NotCellular, "flag map is not a permutation");
    hit[y] = 1;
  }
  if (!commutes(fs, flag)) fail(ErrorCode::NotCellular, "flag map does not respect incidence");
  return cells_of(p, fs, std::move(flag));
}

CellularAutomorphism from_cell_maps(const CellPartition& p, const CellMaps& m) {
  const auto& s = p.shape;
  auto is_perm = [](const std::vector<int>& v, int n) {
    if (static_cast<int>(v.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int x : v) {
      if (x < 0 || x >= n || hit[x]) return false;
      hit[x] = 1;
    }
    return true;
  };
  if (!is_perm(m.vertex, s.num_vertices()) || !is_perm(m.edge, s.num_edges()) || !is_perm(m.face, s.num_faces()))
    fail(ErrorCode::NotCellular, "cell maps are not bijections");
  if (static_cast<int>(m.edge_sign.size()) != s.num_edges() ||
      static_cast<int>(m.face_sign.size()) != s.num_faces())
    fail(ErrorCode::NotCellular, "missing orientation signs");
  for (int v : m.edge_sign)
    if (v != 1 && v != -1) fail(ErrorCode::NotCellular, "signs must be +1 or -1");
  for (int v : m.face_sign)
    if (v != 1 && v != -1) fail(ErrorCode::NotCellular, "signs must be +1 or -1");

  std::vector<int> flag(2 * s.num_sides(), -1);
  for (int f = 0; f < s.num_faces(); ++f) {
    int g = m.face[f];
    int k = s.face_size(f);
    if (s.face_size(g) != k) fail(ErrorCode::NotCellular, "face mapped to a face of another size");
    std::vector<Side> img(k);
    for (int i = 0; i < k; ++i) {
      Side sd = s.face(f).sides[i];
      img[i] = {m.edge[sd.edge], sd.forward != (m.edge_sign[sd.edge] < 0)};
    }
    const auto& gs = s.face(g).sides;
    int found = -1;
    for (int t = 0; t < k && found < 0; ++t) {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        if (m.face_sign[f] > 0) {
          ok = gs[(i + t) % k] == img[i];
        } else {
          Side want{img[i].edge, !img[i].forward};
          ok = gs[((t - i) % k + k) % k] == want;
        }
      }
      if (ok) found = t;
    }
    if (found < 0) fail(ErrorCode::NotCellular, "face boundary is not mapped onto the image face");
    for (int i = 0; i < k; ++i)
      for (int end = 0; end < 2; ++end) {
        int x = 2 * s.side_index(f, i) + end;
        flag[x] = m.face_sign[f] > 0 ? 2 * s.side_index(g, (i + found) % k) + end
                                     : 2 * s.side_index(g, ((found - i) % k + k) % k) + 1 - end;
      }
  }
  auto h = from_flag_map(p, std::move(flag));
  if (h.vertex != m.vertex || h.edge != m.edge || h.face != m.face || h.edge_sign != m.edge_sign ||
      h.face_sign != m.face_sign)
    fail(ErrorCode::NotCellular, "cell maps disagree with the induced map of flags");
  return h;
}

std::vector<CellularAutomorphism> enumerate_automorphisms(const CellPartition& p) {
  auto fs = flags_of(p.shape);
  std::vector<CellularAutomorphism> out;
  for (int t = 0; t < fs.size(); ++t) {
    if (p.annulus[fs.face[0]] != p.annulus[fs.face[t]]) continue;
    auto img = extend(fs, 0, t);
    if (!img) continue;
    bool annuli_ok = true;
    for (int x = 0; x < fs.size() && annuli_ok; ++x)
      annuli_ok = p.annulus[fs.face[x]] == p.annulus[fs.face[(*img)[x]]];
    if (annuli_ok) out.push_back(cells_of(p, fs, std::move(*img)));
  }
  return out;
}

CellularAutomorphism compose(const CellularAutomorphism& a, const CellularAutomorphism& b) {
  CellularAutomorphism c;
  auto cat = [](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = x[y[i]];
    return r;
  };
  c.vertex = cat(a.vertex, b.vertex);
  c.edge = cat(a.edge, b.edge);
  c.face = cat(a.face, b.face);
  c.flag = cat(a.flag, b.flag);
  c.edge_sign.resize(b.edge.size());
  for (std::size_t e = 0; e < b.edge.size(); ++e) c.edge_sign[e] = b.edge_sign[e] * a.edge_sign[b.edge[e]];
  c.face_sign.resize(b.face.size());
  for (std::size_t f = 0; f < b.face.size(); ++f) c.face_sign[f] = b.face_sign[f] * a.face_sign[b.face[f]];
  return c;
}

bool is_delta_trivial(const CellularAutomorphism& h) {
  for (std::size_t v = 0; v < h.vertex.size(); ++v)
    if (h.vertex[v] != static_cast<int>(v)) return false;
  for (std::size_t e = 0; e < h.edge.size(); ++e)
    if (h.edge[e] != static_cast<int>(e) || h.edge_sign[e] != 1) return false;
  for (std::size_t f = 0; f < h.face.size(); ++f)
    if (h.face[f] != static_cast<int>(f) || h.face_sign[f] != 1) return false;
  return true;
}

std::optional<bool> preserves_orientation(const CellPartition& p, const CellularAutomorphism& h) {
  auto o = coherent_orientation(p.shape);
  if (!o) return std::nullopt;
  bool all = true, none = true;
  for (int f = 0; f < p.shape.num_faces(); ++f) {
    bool keep = h.face_sign[f] * (*o)[f] * (*o)[h.face[f]] == 1;
    all = all && keep;
    none = none && !keep;
  }
  if (!all && !none) fail(ErrorCode::InvariantViolation, "automorphism mixes orientation behaviour");
  return all;
}

// ---------------------------------------------------------------- chains

int SignedPermutation::trace() const {
  int t = 0;
  for (int j = 0; j < size(); ++j)
    if (image[j] == j) t += sign[j];
  return t;
}

std::vector<std::vector<int>> SignedPermutation::dense() const {
  std::vector<std::vector<int>> m(size(), std::vector<int>(size(), 0));
  for (int j = 0; j < size(); ++j) m[image[j]][j] = sign[j];
  return m;
}

std::vector<std::vector<int>> SparseMatrix::dense() const {
  std::vector<std::vector<int>> m(rows, std::vector<int>(num_cols(), 0));
  for (int j = 0; j < num_cols(); ++j)
    for (auto [i, v] : cols[j]) m[i][j] += v;
  return m;
}

ChainComplex chain_complex(const CellPartition& p) {
  const auto& s = p.shape;
  ChainComplex c;
  c.face_chain.assign(s.num_faces(), -1);
  for (int f = 0; f < s.num_faces(); ++f)
    if (!p.annulus[f]) {
      c.face_chain[f] = static_cast<int>(c.chain_face.size());
      c.chain_face.push_back(f);
    }
  c.dims = {s.num_vertices(), s.num_edges(), static_cast<int>(c.chain_face.size())};
  c.d1.rows = s.num_vertices();
  c.d1.cols.resize(s.num_edges());
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto& ed = s.edge(e);
    if (ed.tail != ed.head) c.d1.cols[e] = {{ed.tail, -1}, {ed.head, 1}};
  }
  c.d2.rows = s.num_edges();
  for (int f : c.chain_face) {
    std::map<int, int> coef;
    for (Side sd : s.face(f).sides) coef[sd.edge] += sd.forward ? 1 : -1;
    std::vector<std::pair<int, int>> col;
    for (auto [e, v] : coef)
      if (v != 0) col.emplace_back(e, v);
    c.d2.cols.push_back(std::move(col));
  }
  for (const auto& col : c.d2.cols) {
    std::map<int, int> acc;
    for (auto [e, v] : col)
      for (auto [u, w] : c.d1.cols[e]) acc[u] += v * w;
    for (auto [u, v] : acc)
      if (v != 0) fail(ErrorCode::InconsistentIncidence, "boundary of a face boundary is not zero");
  }
  return c;
}

ChainMap induced_chain_map(const CellPartition& p, const CellularAutomorphism& h) {
  auto c = chain_complex(p);
  ChainMap cm;
  cm.h[0].image = h.vertex;
  cm.h[0].sign.assign(h.vertex.size(), 1);
  cm.h[1].image = h.edge;
  cm.h[1].sign = h.edge_sign;
  for (int j = 0; j < c.dims[2]; ++j) {
    int f = c.chain_face[j];
    int img = c.face_chain[h.face[f]];
    if (img < 0) fail(ErrorCode::NotChainMap, "2-cell mapped to an annulus");
    cm.h[2].image.push_back(img);
    cm.h[2].sign.push_back(h.face_sign[f]);
  }
  check_commutes(c.d1, cm.h[0], cm.h[1], "d1");
  check_commutes(c.d2, cm.h[1], cm.h[2], "d2");
  return cm;
}

int lefschetz_chain(const ChainMap& cm) { return cm.h[0].trace() - cm.h[1].trace() + cm.h[2].trace(); }

HomologyAction homology_action(const CellPartition& p, const ChainMap& cm) {
  auto c = chain_complex(p);
  HomologyAction out;
  for (int i = 0; i < 3; ++i) {
    int n = c.dims[i];
    std::vector<std::vector<Rational>> z;
    if (i == 0) {
      for (int j = 0; j < n; ++j) {
        std::vector<Rational> v(n);
        v[j] = 1;
        z.push_back(std::move(v));
      }
    } else {
      z = nullspace(i == 1 ? c.d1 : c.d2);
    }
    std::vector<std::vector<Rational>> b;
    if (i < 2) {
      const auto& d = i == 0 ? c.d1 : c.d2;
      for (const auto& col : d.cols) {
        std::vector<Rational> v(n);
        for (auto [r, val] : col) v[r] += val;
        b.push_back(std::move(v));
      }
    }
    // Cycles independent modulo boundaries form a homology basis.
    int nb = static_cast<int>(b.size()), nz = static_cast<int>(z.size());
    QMatrix m(n, std::vector<Rational>(nb + nz));
    for (int r = 0; r < n; ++r) {
      for (int j = 0; j < nb; ++j) m[r][j] = b[j][r];
      for (int j = 0; j < nz; ++j) m[r][nb + j] = z[j][r];
    }
    auto piv = rref(m, nb + nz);
    std::vector<int> bsel, zsel;
    for (int col : piv) (col < nb ? bsel : zsel).push_back(col < nb ? col : col - nb);
    int hb = static_cast<int>(zsel.size());
    out.betti[i] = hb;
    if (hb == 0) continue;
    int nbs = static_cast<int>(bsel.size());
    QMatrix a(n, std::vector<Rational>(nbs + 2 * hb));
    for (int j = 0; j < hb; ++j) {
      auto img = act_on(cm.h[i], z[zsel[j]]);
      for (int r = 0; r < n; ++r) a[r][nbs + hb + j] = img[r];
    }
    for (int r = 0; r < n; ++r) {
      for (int j = 0; j < nbs; ++j) a[r][j] = b[bsel[j]][r];
      for (int j = 0; j < hb; ++j) a[r][nbs + j] = z[zsel[j]][r];
    }
    auto piv2 = rref(a, nbs + hb);
    if (static_cast<int>(piv2.size()) != nbs + hb)
      fail(ErrorCode::InvariantViolation, "homology basis is not independent");
    for (int r = nbs + hb; r < n; ++r)
      for (int j = 0; j < hb; ++j)
        if (a[r][nbs + hb + j] != 0) fail(ErrorCode::NotChainMap, "image of a cycle is not a cycle");
    for (int j = 0; j < hb; ++j)
      for (int k = 0; k < hb; ++k) {
        const Rational& coef = a[nbs + k][nbs + hb + j];
        if (j == k) out.trace[i] += coef;
        if (coef != (j == k ? 1 : 0)) out.identity = false;
      }
  }
  return out;
}

std::array<int, 3> betti_numbers(const CellPartition& p) {
  auto c = chain_complex(p);
  ChainMap id;
  for (int i = 0; i < 3; ++i) id.h[i] = identity_perm(c.dims[i]);
  return homology_action(p, id).betti;
}

int lefschetz_homology(const CellPartition& p, const ChainMap& cm) {
  auto act = homology_action(p, cm);
  return to_int(act.trace[0] - act.trace[1] + act.trace[2]);
}

InvariantCells invariant_cells(const CellPartition& p, const CellularAutomorphism& h) {
  InvariantCells out;
  auto add = [&](int dim, int cell, int sign) {
    (sign > 0 ? out.plus : out.minus)[dim] += 1;
    out.cells.push_back({dim, cell, sign});
  };
  for (std::size_t v = 0; v < h.vertex.size(); ++v)
    if (h.vertex[v] == static_cast<int>(v)) add(0, static_cast<int>(v), 1);
  for (std::size_t e = 0; e < h.edge.size(); ++e)
    if (h.edge[e] == static_cast<int>(e)) add(1, static_cast<int>(e), h.edge_sign[e]);
  for (std::size_t f = 0; f < h.face.size(); ++f)
    if (!p.annulus[f] && h.face[f] == static_cast<int>(f)) add(2, static_cast<int>(f), h.face_sign[f]);
  return out;
}

KLhVerdict check_kLh(const CellPartition& p, const CellularAutomorphism& h) {
  if (!p.closed()) fail(ErrorCode::PreconditionFailed, "partition is not closed");
  auto pres = preserves_orientation(p, h);
  if (!pres) fail(ErrorCode::PreconditionFailed, "surface is not orientable");
  if (!*pres) fail(ErrorCode::PreconditionFailed, "automorphism reverses orientation");
  if (is_delta_trivial(h)) fail(ErrorCode::PreconditionFailed, "automorphism is Delta-trivial");
  auto cm = induced_chain_map(p, h);
  auto inv = invariant_cells(p, h);
  KLhVerdict v;
  v.invariant_total = inv.total();
  v.lefschetz = lefschetz_chain(cm);
  v.per_dimension = true;
  for (int i = 0; i < 3; ++i) {
    v.counts[i] = inv.count(i);
    v.traces[i] = cm.h[i].trace();
    if (v.counts[i] != (i % 2 ? -1 : 1) * v.traces[i]) v.per_dimension = false;
  }
  v.sign_pattern = inv.minus[0] == 0 && inv.minus[2] == 0 && inv.plus[1] == 0;
  v.nonnegative = v.lefschetz >= 0;
  v.holds = v.invariant_total == v.lefschetz && v.per_dimension && v.sign_pattern && v.nonnegative;
  return v;
}

PropagationCertificate propagate_triviality(const CellPartition& p, const CellularAutomorphism& h, int edge) {
  if (edge < 0 || edge >= p.shape.num_edges()) fail(ErrorCode::HypothesisFails, "no such edge");
  if (h.edge[edge] != edge || h.edge_sign[edge] != 1)
    fail(ErrorCode::HypothesisFails, "edge is not invariant with preserved orientation");
  for (SideRef sr : p.shape.edge_sides(edge))
    if (h.face[sr.face] != sr.face) fail(ErrorCode::HypothesisFails, "a face adjacent to the edge is moved");
  auto fs = flags_of(p.shape);
  PropagationCertificate cert;
  for (int x = 0; x < fs.size() && cert.start_flag < 0; ++x)
    if (fs.edge[x] == edge && h.flag[x] == x) cert.start_flag = x;
  if (cert.start_flag < 0) fail(ErrorCode::HypothesisFails, "no flag on the edge is fixed");
  std::vector<char> seen(fs.size(), 0);
  std::vector<char> vs(p.shape.num_vertices(), 0), es(p.shape.num_edges(), 0), fcs(p.shape.num_faces(), 0);
  std::deque<int> queue{cert.start_flag};
  seen[cert.start_flag] = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (h.flag[x] != x) fail(ErrorCode::HypothesisFails, "propagation reached a moved flag");
    ++cert.flags_visited;
    if (!vs[fs.vertex[x]]) vs[fs.vertex[x]] = 1, cert.cells.emplace_back(0, fs.vertex[x]);
    if (!es[fs.edge[x]]) es[fs.edge[x]] = 1, cert.cells.emplace_back(1, fs.edge[x]);
    if (!fcs[fs.face[x]]) fcs[fs.face[x]] = 1, cert.cells.emplace_back(2, fs.face[x]);
    for (int y : {fs.s0[x], fs.s1[x], fs.s2[x]})
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
  }
  return cert;
}

// ---------------------------------------------------------------- covers and shrinking

DoubleCover orientation_double_cover(const CellPartition& p) {
  const auto& s = p.shape;
  if (s.has_boundary()) fail(ErrorCode::PreconditionFailed, "double cover needs a shape without boundary");
  if (p.orientable()) fail(ErrorCode::AlreadyOrientable, "surface is orientable");
  auto fs = flags_of(s);
  int n = fs.size();
  auto lf = [](int x, int sheet) { return 2 * x + sheet; };
  std::vector<int> flip(n);
  for (int x = 0; x < n; ++x) flip[x] = side_forward(fs, x) == side_forward(fs, fs.s2[x]) ? 1 : 0;

  UnionFind vuf(2 * n), euf(2 * n);
  for (int x = 0; x < n; ++x)
    for (int sh = 0; sh < 2; ++sh) {
      vuf.unite(lf(x, sh), lf(fs.s1[x], sh));
      vuf.unite(lf(x, sh), lf(fs.s2[x], sh ^ flip[x]));
      euf.unite(lf(x, sh), lf(fs.s0[x], sh));
      euf.unite(lf(x, sh), lf(fs.s2[x], sh ^ flip[x]));
    }
  std::vector<int> vclass(2 * n, -1), eclass(2 * n, -1);
  std::vector<int> vroot_index(2 * n, -1), eroot_index(2 * n, -1);
  DoubleCover dc;
  for (int y = 0; y < 2 * n; ++y) {
    int rv = vuf.find(y), re = euf.find(y);
    if (vroot_index[rv] < 0) {
      vroot_index[rv] = static_cast<int>(dc.vertex_base.size());
      dc.vertex_base.push_back(fs.vertex[y / 2]);
    }
    if (eroot_index[re] < 0) {
      eroot_index[re] = static_cast<int>(dc.edge_base.size());
      dc.edge_base.push_back(fs.edge[y / 2]);
    }
    vclass[y] = vroot_index[rv];
    eclass[y] = eroot_index[re];
  }
  RawComplex raw;
  for (std::size_t v = 0; v < dc.vertex_base.size(); ++v) raw.vertices.push_back(static_cast<Id>(v));
  raw.edges.resize(dc.edge_base.size());
  std::vector<char> have(dc.edge_base.size(), 0);
  for (int y = 0; y < 2 * n; ++y) {
    int c = eclass[y];
    if (have[c] || !fs.at_tail[y / 2]) continue;
    have[c] = 1;
    int x = y / 2, sh = y % 2;
    raw.edges[c] = {c + 1, vclass[y], vclass[lf(fs.s0[x], sh)]};
  }
  for (int f = 0; f < s.num_faces(); ++f) {
    int k = s.face_size(f);
    for (int sh = 0; sh < 2; ++sh) {
      RawComplex::Face face{2 * f + sh, {}};
      for (int q = 0; q < k; ++q) {
        int i = sh == 0 ? q : k - 1 - q;
        int x = 2 * s.side_index(f, i);
        Id id = eclass[lf(x, sh)] + 1;
        bool fw = s.face(f).sides[i].forward;
        face.sides.push_back((fw == (sh == 0)) ? id : -id);
      }
      raw.faces.push_back(std::move(face));
      dc.face_base.push_back(f);
    }
  }
  dc.cover.shape = SurfaceComplex::build(raw);
  dc.cover.annulus.resize(2 * s.num_faces());
  for (int f = 0; f < s.num_faces(); ++f) dc.cover.annulus[2 * f] = dc.cover.annulus[2 * f + 1] = p.annulus[f];
  const auto& cs = dc.cover.shape;
  dc.flag_of.resize(2 * n);
  for (int x = 0; x < n; ++x) {
    SideRef r = s.side_ref(x / 2);
    int k = s.face_size(r.face);
    for (int sh = 0; sh < 2; ++sh) {
      int face = *cs.find_face(2 * r.face + sh);
      int pos = sh == 0 ? r.pos : k - 1 - r.pos;
      int end = sh == 0 ? x % 2 : 1 - x % 2;
      dc.flag_of[lf(x, sh)] = 2 * cs.side_index(face, pos) + end;
    }
  }
  if (dc.cover.euler_char() != 2 * p.euler_char())
    fail(ErrorCode::InvariantViolation, "double cover has the wrong Euler characteristic");
  return dc;
}

CellularAutomorphism lift(const CellPartition& base, const DoubleCover& dc, const CellularAutomorphism& h) {
  auto fs = flags_of(base.shape);
  std::vector<int> perm(dc.flag_of.size());
  for (int x = 0; x < fs.size(); ++x) {
    int y = h.flag[x];
    int turn = h.face_sign[fs.face[x]] < 0 ? 1 : 0;
    for (int sh = 0; sh < 2; ++sh) perm[dc.flag_of[2 * x + sh]] = dc.flag_of[2 * y + (sh ^ turn)];
  }
  return from_flag_map(dc.cover, std::move(perm));
}

ShrunkPartition shrink_boundary(const CellPartition& p) {
  if (p.shape.has_boundary())
    fail(ErrorCode::BoundaryNotInAnnuli, "a boundary circle of the partition is not inside an annulus cell");
  ShrunkPartition out;
  out.closed.shape = p.shape;
  out.closed.annulus.assign(p.shape.num_faces(), 0);
  out.boundary_count = p.num_annuli();
  for (int f = 0; f < p.shape.num_faces(); ++f)
    if (p.annulus[f]) out.marked_faces.push_back(f);
  if (out.closed.euler_char() != p.euler_char() + out.boundary_count)
    fail(ErrorCode::InvariantViolation, "shrinking changed chi by the wrong amount");
  return out;
}

// ---------------------------------------------------------------- triviality

std::string to_string(TrivialityVerdict::Outcome o) {
  return o == TrivialityVerdict::Outcome::DeltaTrivial ? "delta-trivial" : "exactly-chi-invariant-cells";
}

TrivialityVerdict triviality_theorem(const CellPartition& p, const CellularAutomorphism& h, bool assumed_isotopic) {
  if (!assumed_isotopic)
    fail(ErrorCode::PreconditionFailed, "the triviality theorem needs the isotopy assumption");
  TrivialityVerdict v;
  v.assumed.push_back("h is isotopic to the identity");
  v.chi = p.euler_char();
  v.boundary_count = p.boundary_count();

  auto act = homology_action(p, induced_chain_map(p, h));
  if (!act.identity) fail(ErrorCode::NecessaryConditionFailed, "h acts non-trivially on rational homology");
  v.verified.push_back("h acts trivially on rational homology");
  v.verified.push_back("L(h) = chi(N)");
  for (int f = 0; f < p.shape.num_faces(); ++f)
    if (p.annulus[f] && (h.face[f] != f || h.face_sign[f] != 1))
      fail(ErrorCode::NecessaryConditionFailed, "a boundary circle is moved or reversed");
  if (p.num_annuli() > 0) v.verified.push_back("boundary circles are fixed with orientation");
  v.invariant_cells = invariant_cells(p, h).total();

  if (v.chi < 0) {
    auto sh = shrink_boundary(p);
    CellPartition q = sh.closed;
    CellularAutomorphism g = h;
    v.annulus_lower_bound = sh.boundary_count;
    if (!q.orientable()) {
      auto dc = orientation_double_cover(q);
      g = lift(q, dc, h);
      q = dc.cover;
      v.double_cover = true;
      v.annulus_lower_bound *= 2;
    }
    if (!*preserves_orientation(q, g))
      fail(ErrorCode::NecessaryConditionFailed, "the closed-up map reverses orientation");
    v.closed_chi = q.euler_char();
    v.closed_lefschetz = lefschetz_homology(q, induced_chain_map(q, g));
    if (v.closed_lefschetz != v.closed_chi)
      fail(ErrorCode::NecessaryConditionFailed, "Lefschetz number of the closed-up map differs from chi");
    v.verified.push_back("L = chi on the closed orientable surface");
    if (!is_delta_trivial(g))
      fail(ErrorCode::InvariantViolation,
           "non-trivial map with " + std::to_string(invariant_cells(q, g).total()) + " invariant cells, at least " +
               std::to_string(v.annulus_lower_bound) + " forced, but L = " + std::to_string(v.closed_lefschetz));
    if (!is_delta_trivial(h)) fail(ErrorCode::InvariantViolation, "trivial lift of a non-trivial map");
    v.outcome = TrivialityVerdict::Outcome::DeltaTrivial;
    return v;
  }

  if (!p.closed() || !p.orientable())
    fail(ErrorCode::PreconditionFailed, "chi >= 0 is only handled for closed orientable surfaces");
  v.closed_chi = v.chi;
  v.closed_lefschetz = lefschetz_chain(induced_chain_map(p, h));
  if (is_delta_trivial(h)) {
    v.outcome = TrivialityVerdict::Outcome::DeltaTrivial;
    return v;
  }
  auto k = check_kLh(p, h);
  if (!k.holds || k.invariant_total != v.chi)
    fail(ErrorCode::InvariantViolation, "invariant cells of a non-trivial map differ from chi");
  v.outcome = TrivialityVerdict::Outcome::ExactlyChiInvariant;
  return v;
}

// ---------------------------------------------------------------- partition of a canonical neighbourhood

NbhdPartition nbhd_partition(const Atlas& a, int component) {
  const auto& rc = a.refined.complex;
  const auto& cc = a.components[component];
  const auto& region = a.canonical[component].region;
  NbhdPartition out;
  out.component = component;

  std::map<int, int> zero;
  for (const auto& leaf : cc.leaves)
    if (leaf.kind == Leaf::Kind::Point) {
      zero[leaf.vertices[0]] = static_cast<int>(out.vertex_origin.size());
      out.vertex_origin.push_back(a.refined.vertex_origin[leaf.vertices[0]].index);
    }

  struct Piece {
    int arc = -1;
    int pos = 0;
    bool forward = true;  // edge direction agrees with the arc walk
  };
  std::vector<Piece> piece(rc.num_edges());
  std::vector<char> in_k(rc.num_edges(), 0);
  RawComplex raw;
  for (std::size_t v = 0; v < out.vertex_origin.size(); ++v) raw.vertices.push_back(static_cast<Id>(v));
  for (const auto& leaf : cc.leaves) {
    if (leaf.kind == Leaf::Kind::Circle) fail(ErrorCode::InvariantViolation, "critical component has a circle leaf");
    if (leaf.kind != Leaf::Kind::Arc) continue;
    int arc = static_cast<int>(out.arc_edges.size());
    for (std::size_t i = 0; i < leaf.edges.size(); ++i) {
      int e = leaf.edges[i];
      piece[e] = {arc, static_cast<int>(i), rc.edge(e).tail == leaf.vertices[i]};
      in_k[e] = 1;
    }
    out.arc_edges.push_back(leaf.edges);
    raw.edges.push_back({arc + 1, zero.at(leaf.vertices.front()), zero.at(leaf.vertices.back())});
  }
  if (out.arc_edges.empty()) fail(ErrorCode::PreconditionFailed, "critical component is a single point");

  std::vector<char> in_region(rc.num_faces(), 0);
  for (int f : region.faces) in_region[f] = 1;
  std::vector<int> kedges;
  for (int e = 0; e < rc.num_edges(); ++e)
    if (in_k[e]) kedges.push_back(e);

  std::vector<std::array<int, 2>> side_flags;  // in partition side order
  std::vector<char> visited(rc.num_sides(), 0);
  for (const auto& comp : connected_components(rc, region.faces, kedges)) {
    std::vector<char> in_comp(rc.num_faces(), 0);
    for (int f : comp) in_comp[f] = 1;
    bool annulus = false;
    std::vector<SideRef> ksides;
    for (int f : comp)
      for (int i = 0; i < rc.face_size(f); ++i) {
        int e = rc.face(f).sides[i].edge;
        if (in_k[e]) ksides.push_back({f, i});
        int inside = 0;
        for (SideRef sr : rc.edge_sides(e)) inside += in_region[sr.face];
        if (inside < 2) annulus = true;
      }

    struct State {
      int g, j, dir;
      bool operator==(const State&) const = default;
    };
    auto end_vertex = [&](const State& s) { return s.dir > 0 ? rc.side_end(s.g, s.j) : rc.side_start(s.g, s.j); };
    struct Step {
      int edge;
      bool forward;  // walked from tail to head
      State side;
    };
    std::vector<std::vector<Step>> cycles;
    for (SideRef start_side : ksides) {
      if (visited[rc.side_index(start_side.face, start_side.pos)]) continue;
      State start{start_side.face, start_side.pos, 1};
      State cur = start;
      std::vector<Step> cyc;
      while (true) {
        visited[rc.side_index(cur.g, cur.j)] = 1;
        Side sd = rc.face(cur.g).sides[cur.j];
        cyc.push_back({sd.edge, sd.forward == (cur.dir > 0), cur});
        int b = end_vertex(cur);
        State st = cur;
        State next{};
        for (int guard = 0;; ++guard) {
          if (guard > rc.num_sides()) fail(ErrorCode::InvariantViolation, "boundary walk does not close");
          int k = rc.face_size(st.g);
          int nj = ((st.j + st.dir) % k + k) % k;
          int e = rc.face(st.g).sides[nj].edge;
          if (in_k[e]) {
            next = {st.g, nj, st.dir};
            break;
          }
          auto sides = rc.edge_sides(e);
          if (sides.size() < 2) fail(ErrorCode::InvariantViolation, "boundary walk reached the surface boundary");
          SideRef o = sides[0] == SideRef{st.g, nj} ? sides[1] : sides[0];
          if (!in_comp[o.face]) fail(ErrorCode::InvariantViolation, "boundary walk left its cell");
          int d2 = rc.side_end(o.face, o.pos) == b ? 1 : -1;
          if (d2 < 0 && rc.side_start(o.face, o.pos) != b)
            fail(ErrorCode::InvariantViolation, "boundary walk lost its vertex");
          st = {o.face, o.pos, d2};
        }
        if (next == start) break;
        if (visited[rc.side_index(next.g, next.j)])
          fail(ErrorCode::InvariantViolation, "boundary walk of a cell is not a single circle");
        cur = next;
      }
      cycles.push_back(std::move(cyc));
    }
    if (cycles.size() != 1) fail(ErrorCode::InvariantViolation, "cell of N^(K) - K does not meet K in one circle");

    auto& cyc = cycles[0];
    auto start_vertex = [&](const Step& el) { return el.forward ? rc.edge(el.edge).tail : rc.edge(el.edge).head; };
    // refined flag at the start (end 0) or finish (end 1) of a walked side
    auto walked_flag = [&](const State& st, int end) {
      return 2 * rc.side_index(st.g, st.j) + ((st.dir > 0) == (end == 0) ? 0 : 1);
    };
    auto s0 = std::find_if(cyc.begin(), cyc.end(), [&](const auto& el) { return zero.count(start_vertex(el)) > 0; });
    if (s0 == cyc.end()) fail(ErrorCode::InvariantViolation, "cell boundary avoids the vertices of K");
    std::rotate(cyc.begin(), s0, cyc.end());
    RawComplex::Face face{static_cast<Id>(out.cell_faces.size()), {}};
    for (std::size_t i = 0; i < cyc.size();) {
      const Piece& pc = piece[cyc[i].edge];
      bool fw = cyc[i].forward == pc.forward;
      int len = static_cast<int>(out.arc_edges[pc.arc].size());
      for (int t = 0; t < len; ++t) {
        if (i + t >= cyc.size()) fail(ErrorCode::InvariantViolation, "cell boundary stops inside an arc");
        const Piece& q = piece[cyc[i + t].edge];
        int want = fw ? t : len - 1 - t;
        if (q.arc != pc.arc || q.pos != want || (cyc[i + t].forward == q.forward) != fw)
          fail(ErrorCode::InvariantViolation, "cell boundary does not follow an arc");
      }
      face.sides.push_back(fw ? pc.arc + 1 : -(pc.arc + 1));
      side_flags.push_back({walked_flag(cyc[i].side, 0), walked_flag(cyc[i + len - 1].side, 1)});
      i += len;
    }
    raw.faces.push_back(std::move(face));
    out.cell_faces.push_back(comp);
    out.partition.annulus.push_back(annulus ? 1 : 0);
  }
  try {
    out.partition.shape = SurfaceComplex::build(raw);
  } catch (const Error& e) {
    fail(ErrorCode::InvariantViolation, std::string("partition of N^(K) is not a surface: ") + e.what());
  }
  out.side_flags = std::move(side_flags);
  if (out.partition.euler_char() != region.euler_char)
    fail(ErrorCode::InvariantViolation, "partition of N^(K) has the wrong Euler characteristic");
  return out;
}

}  // namespace plsurf
