// Constrained Delaunay triangulation of a DomainSpec: boundary subdivision on
// the exact curve, Bowyer-Watson insertion, constraint recovery by flips,
// circumradius-driven interior refinement and Laplacian smoothing.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "specgeom/core.hpp"
#include "specgeom/geometry.hpp"
#include "specgeom/mesh.hpp"

namespace specgeom {

struct TriangulateOptions {
  int node_budget = 200000;
  int smoothing_passes = 3;
};

namespace detail {

struct DTri {
  int v[3];
  int adj[3];  // neighbor across edge k = (v[(k+1)%3], v[(k+2)%3]); -1 if none
  bool alive = true;
};

inline uint64_t edgeKey(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
}

class Delaunay {
 public:
  std::vector<Vec2> pts;
  std::vector<DTri> tris;
  std::vector<char> inside;  // per triangle, maintained by the caller
  std::unordered_set<uint64_t> constrained;
  int last_created = -1;

  static double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

  bool inCircumcircle(const DTri& t, Vec2 p) const {
    Vec2 a = pts[t.v[0]] - p, b = pts[t.v[1]] - p, c = pts[t.v[2]] - p;
    double det = a.norm2() * cross(b, c) - b.norm2() * cross(a, c) +
                 c.norm2() * cross(a, b);
    return det > 0;
  }

  void initSuper(const BBox& box) {
    double d = std::max(box.diameter(), 1e-9);
    Vec2 c = (box.lo + box.hi) * 0.5;
    double r = 16 * d;
    pts.push_back(c + Vec2{-r, -r});
    pts.push_back(c + Vec2{r, -r});
    pts.push_back(c + Vec2{0, r});
    tris.push_back({{0, 1, 2}, {-1, -1, -1}, true});
    inside.push_back(0);
    last_created = 0;
  }

  int locate(Vec2 p, int hint) const {
    int cur = hint;
    if (cur < 0 || cur >= static_cast<int>(tris.size()) || !tris[cur].alive) {
      cur = -1;
      for (int i = static_cast<int>(tris.size()) - 1; i >= 0; --i)
        if (tris[i].alive) { cur = i; break; }
    }
    // Steepest-descent walk with memory; falls back to a full scan when the
    // walk cycles on a degenerate configuration.
    int prev = -1;
    long guard = 2l * tris.size() + 64;
    while (guard-- > 0) {
      const DTri& t = tris[cur];
      int next = -1;
      double worst = 0.0;
      for (int k = 0; k < 3; ++k) {
        Vec2 a = pts[t.v[(k + 1) % 3]], b = pts[t.v[(k + 2) % 3]];
        double o = orient(a, b, p);
        if (o < worst && t.adj[k] >= 0 && t.adj[k] != prev) {
          worst = o;
          next = t.adj[k];
        }
      }
      if (next == -1) {
        // Either inside, or the only way out is backtracking; re-test fully.
        bool inside_tri = true;
        for (int k = 0; k < 3; ++k) {
          Vec2 a = pts[t.v[(k + 1) % 3]], b = pts[t.v[(k + 2) % 3]];
          if (orient(a, b, p) < 0) inside_tri = false;
        }
        if (inside_tri) return cur;
        break;
      }
      prev = cur;
      cur = next;
    }
    // Deterministic fallback: scan for a containing triangle with a small
    // orientation slack.
    for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
      if (!tris[i].alive) continue;
      const DTri& t = tris[i];
      double scale = 0;
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k) {
        Vec2 a = pts[t.v[(k + 1) % 3]], b = pts[t.v[(k + 2) % 3]];
        scale = std::max(scale, (b - a).norm2());
        if (orient(a, b, p) < -1e-12 * scale) ok = false;
      }
      if (ok) return i;
    }
    throw NumericalError("triangulation point location failed");
  }

  /// Bowyer-Watson insertion; the cavity never crosses constrained edges.
  /// New triangles inherit the inside flag of the cavity. Returns the new
  /// point index, or -1 if the cavity is not star-shaped and allow_fail set.
  int insert(Vec2 p, int hint, bool allow_fail = false) {
    int start = locate(p, hint);
    std::vector<int> cavity{start};
    std::vector<char> mark(tris.size(), 0);
    mark[start] = 1;
    for (size_t qi = 0; qi < cavity.size(); ++qi) {
      const DTri& t = tris[cavity[qi]];
      for (int k = 0; k < 3; ++k) {
        int nb = t.adj[k];
        if (nb < 0 || mark[nb]) continue;
        if (constrained.count(edgeKey(t.v[(k + 1) % 3], t.v[(k + 2) % 3])))
          continue;
        if (!inCircumcircle(tris[nb], p)) continue;
        mark[nb] = 1;
        cavity.push_back(nb);
      }
    }

    struct Rim { int a, b, outer; };
    std::vector<Rim> rim;
    for (int ti : cavity) {
      const DTri& t = tris[ti];
      for (int k = 0; k < 3; ++k) {
        int nb = t.adj[k];
        int a = t.v[(k + 1) % 3], b = t.v[(k + 2) % 3];
        if (nb >= 0 && mark[nb] && !constrained.count(edgeKey(a, b))) continue;
        rim.push_back({a, b, (nb >= 0 && mark[nb]) ? -2 : nb});
      }
    }
    // Star-shape and manifold validation before mutating anything.
    bool valid = true;
    std::unordered_map<int, int> starts;
    for (const Rim& r : rim) {
      if (r.outer == -2 || orient(pts[r.a], pts[r.b], p) <= 0) valid = false;
      if (!starts.emplace(r.a, 1).second) valid = false;
    }
    if (!valid) {
      if (allow_fail) return -1;
      throw NumericalError("triangulation cavity is not star-shaped");
    }

    bool cavity_inside = inside[start] != 0;
    int pi = static_cast<int>(pts.size());
    pts.push_back(p);
    for (int ti : cavity) tris[ti].alive = false;

    std::unordered_map<int, int> triByFirst, triByLast;
    std::vector<int> created;
    created.reserve(rim.size());
    for (const Rim& r : rim) {
      int idx = static_cast<int>(tris.size());
      tris.push_back({{pi, r.a, r.b}, {r.outer, -1, -1}, true});
      inside.push_back(cavity_inside ? 1 : 0);
      created.push_back(idx);
      triByFirst[r.a] = idx;
      triByLast[r.b] = idx;
      if (r.outer >= 0) replaceAdj(r.outer, r.a, r.b, idx);
    }
    for (int idx : created) {
      DTri& t = tris[idx];
      t.adj[1] = triByFirst.at(t.v[2]);  // edge (b, p)
      t.adj[2] = triByLast.at(t.v[1]);   // edge (p, a)
    }
    last_created = created.back();
    return pi;
  }

  void replaceAdj(int tri, int a, int b, int newNb) {
    DTri& t = tris[tri];
    for (int k = 0; k < 3; ++k) {
      int u = t.v[(k + 1) % 3], v = t.v[(k + 2) % 3];
      if ((u == a && v == b) || (u == b && v == a)) {
        t.adj[k] = newNb;
        return;
      }
    }
    throw NumericalError("triangulation adjacency inconsistency");
  }

  bool edgeExists(int a, int b) const {
    for (const DTri& t : tris) {
      if (!t.alive) continue;
      for (int k = 0; k < 3; ++k)
        if ((t.v[k] == a && t.v[(k + 1) % 3] == b) ||
            (t.v[k] == b && t.v[(k + 1) % 3] == a))
          return true;
    }
    return false;
  }

  void flip(int t1i, int e) {
    DTri t1 = tris[t1i];
    int t2i = t1.adj[e];
    DTri t2 = tris[t2i];
    int a = t1.v[e];
    int b = t1.v[(e + 1) % 3], c = t1.v[(e + 2) % 3];
    int k2 = -1;
    for (int k = 0; k < 3; ++k)
      if (t2.adj[k] == t1i) k2 = k;
    if (k2 < 0) throw NumericalError("flip: adjacency broken");
    int d = t2.v[k2];

    int n1 = static_cast<int>(tris.size());
    int n2 = n1 + 1;
    int ab = t1.adj[(e + 2) % 3];
    int ca = t1.adj[(e + 1) % 3];
    int bd = -1, dc = -1;
    for (int k = 0; k < 3; ++k) {
      int u = t2.v[(k + 1) % 3], v = t2.v[(k + 2) % 3];
      if ((u == b && v == d) || (u == d && v == b)) bd = t2.adj[k];
      if ((u == d && v == c) || (u == c && v == d)) dc = t2.adj[k];
    }
    char ins = inside[t1i] || inside[t2i] ? 1 : 0;
    tris[t1i].alive = false;
    tris[t2i].alive = false;
    tris.push_back({{a, b, d}, {bd, n2, ab}, true});
    tris.push_back({{a, d, c}, {dc, ca, n1}, true});
    inside.push_back(ins);
    inside.push_back(ins);
    if (ab >= 0) replaceAdj(ab, a, b, n1);
    if (bd >= 0) replaceAdj(bd, b, d, n1);
    if (dc >= 0) replaceAdj(dc, d, c, n2);
    if (ca >= 0) replaceAdj(ca, c, a, n2);
    last_created = n2;
  }

  /// Make the edge (a, b) appear by flipping crossing edges (Sloan).
  void recoverEdge(int a, int b) {
    int guard = 4096;
    while (!edgeExists(a, b) && guard-- > 0) {
      bool flipped = false;
      for (int ti = 0; ti < static_cast<int>(tris.size()) && !flipped; ++ti) {
        if (!tris[ti].alive) continue;
        const DTri& t = tris[ti];
        for (int k = 0; k < 3 && !flipped; ++k) {
          int u = t.v[(k + 1) % 3], v = t.v[(k + 2) % 3];
          if (u == a || u == b || v == a || v == b) continue;
          if (!properSegmentIntersect(pts[a], pts[b], pts[u], pts[v])) continue;
          if (t.adj[k] < 0 || constrained.count(edgeKey(u, v))) continue;
          int t2 = t.adj[k];
          int k2 = -1;
          for (int j = 0; j < 3; ++j)
            if (tris[t2].adj[j] == ti) k2 = j;
          int apex1 = t.v[k], apex2 = tris[t2].v[k2];
          if (orient(pts[apex1], pts[apex2], pts[u]) *
                  orient(pts[apex1], pts[apex2], pts[v]) <
              0) {
            flip(ti, k);
            flipped = true;
          }
        }
      }
      if (!flipped) break;
    }
    if (!edgeExists(a, b))
      throw NumericalError("failed to recover a boundary edge");
  }

  /// Recomputes the inside flags by flooding from the super-triangle corners
  /// across unconstrained edges. Requires the boundary loop to be constrained.
  void classify() {
    std::vector<char> outside(tris.size(), 0);
    std::vector<int> queue;
    for (int ti = 0; ti < static_cast<int>(tris.size()); ++ti) {
      if (!tris[ti].alive) continue;
      if (tris[ti].v[0] < 3 || tris[ti].v[1] < 3 || tris[ti].v[2] < 3) {
        outside[ti] = 1;
        queue.push_back(ti);
      }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const DTri& t = tris[queue[qi]];
      for (int k = 0; k < 3; ++k) {
        int nb = t.adj[k];
        if (nb < 0 || !tris[nb].alive || outside[nb]) continue;
        if (constrained.count(edgeKey(t.v[(k + 1) % 3], t.v[(k + 2) % 3])))
          continue;
        outside[nb] = 1;
        queue.push_back(nb);
      }
    }
    inside.assign(tris.size(), 0);
    for (int ti = 0; ti < static_cast<int>(tris.size()); ++ti)
      if (tris[ti].alive && !outside[ti]) inside[ti] = 1;
  }
};

struct BoundaryDiscretization {
  std::vector<Vec2> points;  // boundary nodes in chain order
  struct ChainEdge { int n0, n1, segment; double s0, s1; };
  std::vector<ChainEdge> edges;
  std::vector<char> corner;
};

inline BoundaryDiscretization discretizeBoundary(const DomainSpec& spec,
                                                 double h) {
  BoundaryDiscretization bd;
  const int nseg = static_cast<int>(spec.segments.size());
  std::vector<int> seg_first(nseg), seg_count(nseg);
  for (int i = 0; i < nseg; ++i) {
    const BoundarySegment& s = spec.segments[i];
    int n = std::max(1, static_cast<int>(std::ceil(s.length / h - 1e-9)));
    seg_first[i] = static_cast<int>(bd.points.size());
    seg_count[i] = n;
    for (int j = 0; j < n; ++j)
      bd.points.push_back(s.point(s.length * j / n));
  }
  for (int i = 0; i < nseg; ++i) {
    const BoundarySegment& s = spec.segments[i];
    int n = seg_count[i];
    for (int j = 0; j < n; ++j) {
      int a = seg_first[i] + j;
      int b = (j == n - 1) ? seg_first[(i + 1) % nseg] : a + 1;
      bd.edges.push_back({a, b, i, s.length * j / n, s.length * (j + 1) / n});
    }
  }
  bd.corner.assign(bd.points.size(), 0);
  for (const Corner& c : spec.corners) bd.corner[seg_first[c.seg_out]] = 1;
  return bd;
}

inline bool pointInsidePolygon(const std::vector<Vec2>& poly, Vec2 p) {
  bool inside = false;
  const int n = static_cast<int>(poly.size());
  for (int i = 0, j = n - 1; i < n; j = i++) {
    if ((poly[i].y > p.y) != (poly[j].y > p.y)) {
      double xint = poly[j].x + (poly[i].x - poly[j].x) * (p.y - poly[j].y) /
                                    (poly[i].y - poly[j].y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

inline double distToPolyline(const std::vector<Vec2>& poly, Vec2 p) {
  double best = 1e300;
  const int n = static_cast<int>(poly.size());
  for (int i = 0, j = n - 1; i < n; j = i++) {
    Vec2 a = poly[j], d = poly[i] - a;
    double t = std::clamp(dot(p - a, d) / std::max(d.norm2(), 1e-300), 0.0, 1.0);
    best = std::min(best, dist(p, a + d * t));
  }
  return best;
}

struct CircumData {
  Vec2 center;
  double radius;
};

inline CircumData circumcircle(Vec2 a, Vec2 b, Vec2 c) {
  Vec2 u = b - a, v = c - a;
  double d = 2 * cross(u, v);
  Vec2 cc{(u.norm2() * v.y - v.norm2() * u.y) / d,
          (v.norm2() * u.x - u.norm2() * v.x) / d};
  return {a + cc, cc.norm()};
}

inline double triMinAngle(Vec2 a, Vec2 b, Vec2 c) {
  Vec2 p[3] = {a, b, c};
  double best = kTwoPi;
  for (int k = 0; k < 3; ++k) {
    Vec2 u = p[(k + 1) % 3] - p[k], v = p[(k + 2) % 3] - p[k];
    best = std::min(best, std::atan2(std::abs(cross(u, v)), dot(u, v)));
  }
  return best;
}

}  // namespace detail

/// Triangulates the domain at target edge length h. Boundary edges have
/// arclength in [h/2, h] and stay linked to their source segments; interior
/// triangles are refined until no circumradius exceeds h.
inline Mesh triangulate(const DomainSpec& spec, double h,
                        const TriangulateOptions& opts = {}) {
  if (!(h > 0) || h >= spec.bbox.diameter())
    throw PreconditionError("target edge length must satisfy 0 < h < diameter");

  detail::BoundaryDiscretization bd = detail::discretizeBoundary(spec, h);
  const int nb = static_cast<int>(bd.points.size());
  if (nb + 8 > opts.node_budget)
    throw PreconditionError("node budget exceeded by boundary discretization");

  // Hexagonal seed lattice, clipped to the interior with clearance.
  std::vector<Vec2> interior;
  {
    const double pitch = 0.92 * h;
    const double clearance = 0.70 * pitch;
    double row_dy = pitch * std::sqrt(3.0) / 2.0;
    int row = 0;
    for (double y = spec.bbox.lo.y + 0.5 * row_dy; y < spec.bbox.hi.y;
         y += row_dy, ++row) {
      double x0 = spec.bbox.lo.x + ((row % 2) ? 0.75 : 0.25) * pitch;
      for (double x = x0; x < spec.bbox.hi.x; x += pitch) {
        Vec2 p{x, y};
        if (!detail::pointInsidePolygon(bd.points, p)) continue;
        if (detail::distToPolyline(bd.points, p) < clearance) continue;
        interior.push_back(p);
      }
    }
    if (nb + static_cast<int>(interior.size()) + 8 > opts.node_budget)
      throw PreconditionError("node budget exceeded (h too small)");
    SplitMix64 rng(spec.hash ^ 0xC0FFEEull);
    for (int i = static_cast<int>(interior.size()) - 1; i > 0; --i)
      std::swap(interior[i], interior[rng.below(i + 1)]);
  }

  auto build = [&](const std::vector<Vec2>& inner) {
    detail::Delaunay dt;
    dt.initSuper(spec.bbox);
    std::vector<int> bid(nb);
    for (int i = 0; i < nb; ++i)
      bid[i] = dt.insert(bd.points[i], dt.last_created);
    for (const auto& e : bd.edges) {
      dt.recoverEdge(bid[e.n0], bid[e.n1]);
      dt.constrained.insert(detail::edgeKey(bid[e.n0], bid[e.n1]));
    }
    dt.classify();
    for (const Vec2& p : inner) dt.insert(p, dt.last_created);
    return std::make_pair(std::move(dt), std::move(bid));
  };

  auto [dt, bid] = build(interior);

  const double rmax = 0.98 * h;
  const double min_angle = 20.5 * kPi / 180.0;
  auto qualityPass = [&](detail::Delaunay& d) {
    std::unordered_set<uint64_t> skipped;
    auto triKey = [](const detail::DTri& t) {
      char buf[3 * sizeof(int)];
      std::memcpy(buf, t.v, sizeof buf);
      return fnv1a64(std::string_view(buf, sizeof buf));
    };
    int guard = opts.node_budget;
    while (guard-- > 0) {
      int worst = -1;
      double worst_score = 1.0;
      for (int ti = 0; ti < static_cast<int>(d.tris.size()); ++ti) {
        if (!d.tris[ti].alive || !d.inside[ti]) continue;
        const auto& t = d.tris[ti];
        if (skipped.count(triKey(t))) continue;
        auto cc = detail::circumcircle(d.pts[t.v[0]], d.pts[t.v[1]],
                                       d.pts[t.v[2]]);
        double ang = detail::triMinAngle(d.pts[t.v[0]], d.pts[t.v[1]],
                                         d.pts[t.v[2]]);
        double score =
            std::max(cc.radius / rmax, min_angle / std::max(ang, 1e-9));
        if (score > worst_score) {
          worst_score = score;
          worst = ti;
        }
      }
      if (worst < 0) break;
      const auto& t = d.tris[worst];
      auto cc = detail::circumcircle(d.pts[t.v[0]], d.pts[t.v[1]],
                                     d.pts[t.v[2]]);
      bool ok = static_cast<int>(d.pts.size()) < opts.node_budget &&
                detail::pointInsidePolygon(bd.points, cc.center) &&
                detail::distToPolyline(bd.points, cc.center) >= 0.45 * h;
      if (ok) ok = d.insert(cc.center, worst, /*allow_fail=*/true) >= 0;
      if (!ok) skipped.insert(triKey(t));
    }
  };

  auto smoothAndRebuild = [&]() {
    std::unordered_map<int, std::pair<Vec2, int>> acc;
    for (int ti = 0; ti < static_cast<int>(dt.tris.size()); ++ti) {
      if (!dt.tris[ti].alive || !dt.inside[ti]) continue;
      const auto& t = dt.tris[ti];
      for (int k = 0; k < 3; ++k) {
        int a = t.v[k];
        if (a < 3 + nb) continue;  // super or boundary node: fixed
        auto& e = acc[a];
        e.first += dt.pts[t.v[(k + 1) % 3]] + dt.pts[t.v[(k + 2) % 3]];
        e.second += 2;
      }
    }
    std::vector<Vec2> inner;
    inner.reserve(dt.pts.size() - 3 - nb);
    for (int i = 3 + nb; i < static_cast<int>(dt.pts.size()); ++i) {
      Vec2 target = dt.pts[i];
      auto it = acc.find(i);
      if (it != acc.end() && it->second.second > 0) {
        Vec2 avg = it->second.first / it->second.second;
        if (detail::pointInsidePolygon(bd.points, avg) &&
            detail::distToPolyline(bd.points, avg) >= 0.35 * h)
          target = avg;
      }
      inner.push_back(target);
    }
    auto rebuilt = build(inner);
    dt = std::move(rebuilt.first);
    bid = std::move(rebuilt.second);
  };

  qualityPass(dt);
  for (int pass = 0; pass < opts.smoothing_passes; ++pass) {
    smoothAndRebuild();
    qualityPass(dt);
  }

  // Compact into the Mesh structure; boundary nodes first, in chain order.
  Mesh mesh;
  mesh.h = h;
  mesh.domain_hash = spec.hash;
  std::vector<int> remap(dt.pts.size(), -1);
  for (int i = 0; i < nb; ++i) {
    remap[bid[i]] = i;
    mesh.nodes.push_back(dt.pts[bid[i]]);
  }
  for (int ti = 0; ti < static_cast<int>(dt.tris.size()); ++ti) {
    if (!dt.tris[ti].alive || !dt.inside[ti]) continue;
    std::array<int, 3> tr{};
    for (int k = 0; k < 3; ++k) {
      int v = dt.tris[ti].v[k];
      if (remap[v] < 0) {
        remap[v] = mesh.numNodes();
        mesh.nodes.push_back(dt.pts[v]);
      }
      tr[k] = remap[v];
    }
    if (mesh.triangleAreaOf(tr) <= 0)
      throw NumericalError("non-positive triangle area in triangulation");
    mesh.triangles.push_back(tr);
  }
  for (const auto& e : bd.edges)
    mesh.boundary_edges.push_back({e.n0, e.n1, e.segment, e.s0, e.s1,
                                   bd.corner[e.n0] != 0, bd.corner[e.n1] != 0});
  mesh.is_boundary_node.assign(mesh.nodes.size(), 0);
  mesh.is_corner_node.assign(mesh.nodes.size(), 0);
  for (int i = 0; i < nb; ++i) {
    mesh.is_boundary_node[i] = 1;
    mesh.is_corner_node[i] = bd.corner[i];
  }
  return mesh;
}

/// Uniform red refinement: every triangle splits in four; boundary midpoints
/// land on the exact source segment (radially for arcs); h is halved.
inline Mesh refine(const Mesh& mesh, const DomainSpec& spec,
                   int node_budget = 200000) {
  if (mesh.numNodes() + 2 * mesh.numTriangles() > node_budget)
    throw PreconditionError("node budget exceeded by refinement");

  Mesh out;
  out.h = mesh.h / 2;
  out.domain_hash = mesh.domain_hash;
  out.nodes = mesh.nodes;

  std::unordered_map<uint64_t, int> midpoint;
  // Boundary midpoints first so they win over chord midpoints.
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const BoundarySegment& seg = spec.segments[e.segment];
    double sm = 0.5 * (e.s0 + e.s1);
    int id = out.numNodes();
    out.nodes.push_back(seg.point(sm));
    midpoint.emplace(detail::edgeKey(e.n0, e.n1), id);
    out.boundary_edges.push_back({e.n0, id, e.segment, e.s0, sm, e.corner0, false});
    out.boundary_edges.push_back({id, e.n1, e.segment, sm, e.s1, false, e.corner1});
  }

  auto midOf = [&](int a, int b) {
    uint64_t key = detail::edgeKey(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    int id = out.numNodes();
    out.nodes.push_back((mesh.nodes[a] + mesh.nodes[b]) * 0.5);
    midpoint.emplace(key, id);
    return id;
  };

  for (const auto& t : mesh.triangles) {
    int ab = midOf(t[0], t[1]), bc = midOf(t[1], t[2]), ca = midOf(t[2], t[0]);
    std::array<std::array<int, 3>, 4> children = {
        std::array<int, 3>{t[0], ab, ca}, std::array<int, 3>{ab, t[1], bc},
        std::array<int, 3>{ca, bc, t[2]}, std::array<int, 3>{ab, bc, ca}};
    for (const auto& c : children) {
      if (out.triangleAreaOf(c) <= 0)
        throw NumericalError("refinement produced a degenerate triangle");
      out.triangles.push_back(c);
    }
  }

  // Reorder boundary edges into chain order (children already follow it).
  out.is_boundary_node.assign(out.nodes.size(), 0);
  out.is_corner_node.assign(out.nodes.size(), 0);
  for (const BoundaryEdge& e : out.boundary_edges) {
    out.is_boundary_node[e.n0] = out.is_boundary_node[e.n1] = 1;
    if (e.corner0) out.is_corner_node[e.n0] = 1;
    if (e.corner1) out.is_corner_node[e.n1] = 1;
  }
  return out;
}

}  // namespace specgeom
