#include "plsurf/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "plsurf/errors.hpp"

namespace plsurf {

namespace {

struct RingSide {
  Id edge;
  bool forward;  // edge runs in the ring's direction
};

// Closed ring of vertices; sides[i] joins verts[i] to verts[i+1].
struct Ring {
  std::vector<int> verts;
  std::vector<RingSide> sides;
};

class Builder {
 public:
  explicit Builder(const ReebOptions& opt) : opt_(opt), rng_(opt.seed) {}

  int vertex(Rational value) {
    values_.push_back(std::move(value));
    return static_cast<int>(values_.size()) - 1;
  }

  Id edge(int tail, int head) {
    Id id = static_cast<Id>(raw_.edges.size()) + 1;
    raw_.edges.push_back({id, tail + 1, head + 1});
    return id;
  }

  void face(std::vector<Id> sides) {
    raw_.faces.push_back({static_cast<Id>(raw_.faces.size()) + 1, std::move(sides)});
  }

  // Distinct offsets in [0, 1/2) for a ring of length n.
  std::vector<Rational> offsets(int n) {
    std::vector<Rational> out(n);
    if (opt_.symmetric) {
      for (int i = 0; i < n; ++i) out[i] = Rational(i % 2 == 0 ? 1 : 2, 3);
      return out;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng_);
    for (int i = 0; i < n; ++i) out[i] = Rational(perm[i], 2 * n);
    return out;
  }

  Ring fresh_ring(int n, const Rational& base, bool exact) {
    Ring r;
    auto eps = exact ? std::vector<Rational>(n, Rational(0)) : offsets(n);
    for (int i = 0; i < n; ++i) r.verts.push_back(vertex(base + eps[i]));
    for (int i = 0; i < n; ++i) r.sides.push_back({edge(r.verts[i], r.verts[(i + 1) % n]), true});
    return r;
  }

  static Id signed_id(RingSide s, bool along) { return (s.forward == along) ? s.edge : -s.edge; }

  // Triangulated annulus between a lower and an upper ring.
  void zipper(const Ring& lo, const Ring& up) {
    int p = static_cast<int>(lo.verts.size()), q = static_cast<int>(up.verts.size());
    std::vector<char> moves;  // 1 = advance on the lower ring
    if (opt_.symmetric) {
      int i = 0, j = 0;
      while (i < p || j < q) {
        bool low = j == q || (i < p && static_cast<long>(i + 1) * q <= static_cast<long>(j + 1) * p);
        moves.push_back(low);
        (low ? i : j)++;
      }
    } else {
      moves.assign(p, 1);
      moves.insert(moves.end(), q, 0);
      std::shuffle(moves.begin(), moves.end(), rng_);
    }
    Id first = edge(lo.verts[0], up.verts[0]);
    Id rung = first;
    int i = 0, j = 0;
    for (std::size_t t = 0; t < moves.size(); ++t) {
      bool last = t + 1 == moves.size();
      if (moves[t]) {
        int ni = (i + 1) % p;
        Id next = last ? first : edge(lo.verts[ni], up.verts[j % q]);
        face({signed_id(lo.sides[i % p], true), next, -rung});
        i = i + 1;
        rung = next;
      } else {
        int nj = (j + 1) % q;
        Id next = last ? first : edge(lo.verts[i % p], up.verts[nj]);
        face({next, signed_id(up.sides[j % q], false), -rung});
        j = j + 1;
        rung = next;
      }
    }
  }

  void min_cap_under(const Ring& up, int center) {
    int q = static_cast<int>(up.verts.size());
    std::vector<Id> spoke(q);
    for (int j = 0; j < q; ++j) spoke[j] = edge(center, up.verts[j]);
    for (int j = 0; j < q; ++j) face({spoke[(j + 1) % q], signed_id(up.sides[j], false), -spoke[j]});
  }

  void max_cap_over(const Ring& lo, int center) {
    int p = static_cast<int>(lo.verts.size());
    std::vector<Id> spoke(p);
    for (int i = 0; i < p; ++i) spoke[i] = edge(lo.verts[i], center);
    for (int i = 0; i < p; ++i) face({signed_id(lo.sides[i], true), spoke[(i + 1) % p], -spoke[i]});
  }

  // Cut points splitting a ring of length n into r arcs.
  static std::vector<int> cut_points(int n, int r) {
    std::vector<int> pts;
    for (int j = 0; j < r; ++j) pts.push_back(j * n / r);
    return pts;
  }

  // Lobe j of a ring joined to a saddle at the cut points: the arc from
  // cut j to cut j+1 followed by the saddle.
  static Ring lobe(const Ring& base, const std::vector<int>& cuts, const std::vector<Id>& to_cut,
                   int saddle, int j) {
    int n = static_cast<int>(base.verts.size()), r = static_cast<int>(cuts.size());
    int from = cuts[j], to = j + 1 < r ? cuts[j + 1] : n;
    Ring w;
    for (int k = from; k < to; ++k) {
      w.verts.push_back(base.verts[k % n]);
      w.sides.push_back(base.sides[k % n]);
    }
    w.verts.push_back(base.verts[to % n]);
    // x_{j+1} runs saddle -> cut point; here we walk cut point -> saddle
    w.sides.push_back({to_cut[(j + 1) % r], false});
    w.verts.push_back(saddle);
    w.sides.push_back({to_cut[j], true});
    return w;
  }

  Instance finish() {
    for (std::size_t v = 0; v < values_.size(); ++v) raw_.vertices.push_back(static_cast<Id>(v) + 1);
    Instance inst;
    inst.surface = SurfaceComplex::build(raw_);
    inst.function = PLFunction::line(inst.surface, values_);
    return inst;
  }

  const ReebOptions& opt_;
  std::mt19937 rng_;
  RawComplex raw_;
  std::vector<Rational> values_;
};

[[noreturn]] void bad_program(const std::string& why) { fail(ErrorCode::UnsupportedKind, why); }

}  // namespace

Instance build_reeb(const std::vector<ReebStage>& program, const ReebOptions& options) {
  if (options.ring < 3) bad_program("rings need at least 3 vertices");
  Builder b(options);
  std::vector<Ring> tubes;
  auto check_tube = [&](int t, int count) {
    if (t < 0 || t + count > static_cast<int>(tubes.size()))
      bad_program("event refers to tube " + std::to_string(t) + " but only " +
                  std::to_string(tubes.size()) + " are open");
  };
  for (std::size_t k = 0; k < program.size(); ++k) {
    Rational h(10 * static_cast<long>(k));
    Rational above = h + 2;
    for (const auto& ev : program[k]) {
      switch (ev.op) {
        case ReebOp::MinCap: {
          int c = b.vertex(h);
          Ring up = b.fresh_ring(options.ring, above, false);
          b.min_cap_under(up, c);
          tubes.insert(tubes.begin() + std::clamp(ev.tube, 0, static_cast<int>(tubes.size())), up);
          break;
        }
        case ReebOp::BottomBoundary: {
          Ring bottom = b.fresh_ring(options.ring, h, true);
          Ring up = b.fresh_ring(options.ring, above, false);
          b.zipper(bottom, up);
          tubes.insert(tubes.begin() + std::clamp(ev.tube, 0, static_cast<int>(tubes.size())), up);
          break;
        }
        case ReebOp::MaxCap: {
          check_tube(ev.tube, 1);
          b.max_cap_over(tubes[ev.tube], b.vertex(h));
          tubes.erase(tubes.begin() + ev.tube);
          break;
        }
        case ReebOp::TopBoundary: {
          check_tube(ev.tube, 1);
          Ring top = b.fresh_ring(options.ring, h, true);
          b.zipper(tubes[ev.tube], top);
          tubes.erase(tubes.begin() + ev.tube);
          break;
        }
        case ReebOp::Split:
        case ReebOp::Twist: {
          check_tube(ev.tube, 1);
          int r = ev.op == ReebOp::Twist ? 2 : ev.arity;
          if (r < 2) bad_program("split arity must be at least 2");
          const Ring base = tubes[ev.tube];
          int n = static_cast<int>(base.verts.size());
          if (n < r) bad_program("ring too short for a split of arity " + std::to_string(r));
          int s = b.vertex(h);
          auto cuts = Builder::cut_points(n, r);
          std::vector<Id> to_cut;
          for (int c : cuts) to_cut.push_back(b.edge(s, base.verts[c]));
          if (ev.op == ReebOp::Twist) {
            // first lobe forwards, then the second lobe backwards; the two
            // saddle edges are met twice in the same direction
            Ring tw;
            int c1 = cuts[1];
            for (int k2 = 0; k2 < c1; ++k2) {
              tw.verts.push_back(base.verts[k2]);
              tw.sides.push_back(base.sides[k2]);
            }
            tw.verts.push_back(base.verts[c1]);
            tw.sides.push_back({to_cut[1], false});
            tw.verts.push_back(s);
            tw.sides.push_back({to_cut[0], true});
            for (int k2 = n; k2 > c1; --k2) {
              tw.verts.push_back(base.verts[k2 % n]);
              RingSide sd = base.sides[k2 - 1];
              sd.forward = !sd.forward;
              tw.sides.push_back(sd);
            }
            tw.verts.push_back(base.verts[c1]);
            tw.sides.push_back({to_cut[1], false});
            tw.verts.push_back(s);
            tw.sides.push_back({to_cut[0], true});
            Ring up = b.fresh_ring(std::max(options.ring, 4), above, false);
            b.zipper(tw, up);
            tubes[ev.tube] = up;
          } else {
            std::vector<Ring> ups;
            for (int j = 0; j < r; ++j) {
              Ring up = b.fresh_ring(options.ring, above, false);
              b.zipper(Builder::lobe(base, cuts, to_cut, s, j), up);
              ups.push_back(up);
            }
            tubes.erase(tubes.begin() + ev.tube);
            tubes.insert(tubes.begin() + ev.tube, ups.begin(), ups.end());
          }
          break;
        }
        case ReebOp::Merge: {
          int r = ev.arity;
          if (r < 2) bad_program("merge arity must be at least 2");
          check_tube(ev.tube, r);
          int s = b.vertex(h);
          int n = std::max(options.ring, r);
          Ring c = b.fresh_ring(n, above, false);
          auto cuts = Builder::cut_points(n, r);
          std::vector<Id> to_cut;
          for (int cp : cuts) to_cut.push_back(b.edge(s, c.verts[cp]));
          for (int j = 0; j < r; ++j) b.zipper(tubes[ev.tube + j], Builder::lobe(c, cuts, to_cut, s, j));
          tubes.erase(tubes.begin() + ev.tube, tubes.begin() + ev.tube + r);
          tubes.insert(tubes.begin() + ev.tube, c);
          break;
        }
      }
    }
  }
  if (!tubes.empty()) bad_program(std::to_string(tubes.size()) + " tubes left open at the top");
  return b.finish();
}

std::vector<ReebStage> reeb_program(const GenerateParams& p) {
  if (p.genus < 0 || p.crosscaps < 0 || p.boundary < 0 || p.dimples < 0 || p.saddle_arity < 2)
    bad_program("negative or out-of-range generator parameters");
  std::vector<ReebStage> prog;
  prog.push_back({{p.boundary >= 1 ? ReebOp::BottomBoundary : ReebOp::MinCap}});
  int handles = p.genus;
  int a = p.saddle_arity;
  while (a > 2 && handles >= a - 1) {
    prog.push_back({{ReebOp::Split, 0, a}});
    prog.push_back({{ReebOp::Merge, 0, a}});
    handles -= a - 1;
  }
  for (int i = 0; i < handles; ++i) {
    prog.push_back({{ReebOp::Split, 0, 2}});
    prog.push_back({{ReebOp::Merge, 0, 2}});
  }
  for (int i = 0; i < p.crosscaps; ++i) prog.push_back({{ReebOp::Twist, 0}});
  for (int i = 0; i < p.dimples; ++i) {
    prog.push_back({{ReebOp::Split, 0, 2}});
    prog.push_back({{ReebOp::MaxCap, 1}});
  }
  for (int i = 2; i < p.boundary; ++i) {
    prog.push_back({{ReebOp::Split, 0, 2}});
    prog.push_back({{ReebOp::TopBoundary, 1}});
  }
  prog.push_back({{p.boundary >= 2 ? ReebOp::TopBoundary : ReebOp::MaxCap, 0}});
  return prog;
}

Instance generate(const GenerateParams& params) {
  Instance inst = build_reeb(reeb_program(params), params.options);
  inst.metadata["generator"] = "reeb";
  inst.metadata["genus"] = std::to_string(params.genus);
  inst.metadata["crosscaps"] = std::to_string(params.crosscaps);
  inst.metadata["boundary"] = std::to_string(params.boundary);
  inst.metadata["dimples"] = std::to_string(params.dimples);
  inst.metadata["seed"] = std::to_string(params.options.seed);
  return inst;
}

std::vector<std::string> named_kinds() {
  return {"sphere", "torus", "genus2", "genus3", "pants", "two-disk-pieces", "klein", "projective", "monkey"};
}

Instance generate_named(const std::string& name, std::uint32_t seed) {
  using R = ReebOp;
  ReebOptions opt;
  opt.seed = seed;
  std::vector<ReebStage> prog;
  if (name == "sphere") {
    prog = {{{R::MinCap}}, {{R::MaxCap}}};
  } else if (name == "torus") {
    prog = {{{R::MinCap}}, {{R::Split}}, {{R::Merge}}, {{R::MaxCap}}};
  } else if (name == "genus2") {
    // handle, dimple, handle: the two handle saddles are the only
    // components with negative canonical neighbourhoods
    prog = {{{R::MinCap}},     {{R::Split}},     {{R::Merge}}, {{R::Split}},
            {{R::MaxCap, 1}},  {{R::Split}},     {{R::Merge}}, {{R::MaxCap}}};
  } else if (name == "genus3") {
    prog = {{{R::MinCap}}, {{R::Split}}, {{R::Merge}}, {{R::Split}}, {{R::Merge}},
            {{R::Split}},  {{R::Merge}}, {{R::MaxCap}}};
  } else if (name == "pants") {
    prog = {{{R::BottomBoundary}}, {{R::Split}}, {{R::TopBoundary, 0}, {R::TopBoundary, 0}}};
  } else if (name == "two-disk-pieces") {
    prog = {{{R::BottomBoundary}},
            {{R::Split, 0, 4}},
            {{R::MaxCap, 0}, {R::TopBoundary, 0}, {R::MaxCap, 0}, {R::TopBoundary, 0}}};
  } else if (name == "klein") {
    prog = {{{R::MinCap}}, {{R::Twist}}, {{R::Twist}}, {{R::MaxCap}}};
  } else if (name == "projective") {
    prog = {{{R::MinCap}}, {{R::Twist}}, {{R::MaxCap}}};
  } else if (name == "monkey") {
    prog = {{{R::MinCap}}, {{R::Split, 0, 3}}, {{R::Merge, 0, 3}}, {{R::MaxCap}}};
  } else {
    fail(ErrorCode::UnsupportedKind, "unknown instance kind \"" + name + "\"");
  }
  Instance inst = build_reeb(prog, opt);
  inst.metadata["generator"] = name;
  inst.metadata["seed"] = std::to_string(seed);
  return inst;
}

}  // namespace plsurf
