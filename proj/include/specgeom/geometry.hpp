// Piecewise-smooth planar boundaries: lines and circular arcs with exact
// tangents, outer normals and signed curvature, plus the lip-domain cone test.
#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "specgeom/core.hpp"

namespace specgeom {

enum class SegmentKind { Line, CircularArc };

/// One smooth boundary piece, parametrized by arclength s in [0, length].
/// The traversal direction keeps the domain on the left, so the unit tangent
/// is tau(s) = r'(s) and the outer normal is nu(s) = -r'(s)^perp.
struct BoundarySegment {
  SegmentKind kind = SegmentKind::Line;
  Vec2 a, b;  // endpoints in traversal order

  // Arc data (unused for lines). theta0 is the start angle; the arc sweeps
  // |sweep| radians counterclockwise if sweep > 0, clockwise otherwise.
  Vec2 center;
  double radius = 0.0;
  double theta0 = 0.0;
  double sweep = 0.0;

  double length = 0.0;

  bool isArc() const { return kind == SegmentKind::CircularArc; }

  double angleAt(double s) const {
    return theta0 + (sweep >= 0 ? s / radius : -s / radius);
  }

  Vec2 point(double s) const {
    if (!isArc()) {
      double t = s / length;
      return a + (b - a) * t;
    }
    double th = angleAt(s);
    return center + Vec2{std::cos(th), std::sin(th)} * radius;
  }

  Vec2 tangent(double s) const {
    if (!isArc()) return (b - a) / length;
    double th = angleAt(s);
    Vec2 ccw{-std::sin(th), std::cos(th)};
    return sweep >= 0 ? ccw : Vec2{0, 0} - ccw;
  }

  Vec2 outerNormal(double s) const {
    Vec2 t = tangent(s);
    return Vec2{0, 0} - t.perp();  // -r'(s)^perp
  }

  /// Signed curvature <nu, r''>; constant along lines and circular arcs.
  /// Negative where the domain is locally convex.
  double curvature() const {
    if (!isArc()) return 0.0;
    return sweep >= 0 ? -1.0 / radius : 1.0 / radius;
  }
};

/// <nu, r''(s)> at an interior parameter of a segment.
inline double signed_curvature(const BoundarySegment& seg, double s) {
  if (s < 0.0 || s > seg.length)
    throw PreconditionError("curvature parameter outside segment range");
  return seg.curvature();
}

struct Corner {
  Vec2 vertex;
  double interior_angle = 0.0;  // radians, in (0, pi) for valid specs
  int seg_in = -1;              // segment ending at the vertex
  int seg_out = -1;             // segment starting at the vertex
};

struct DomainSpec {
  std::vector<BoundarySegment> segments;
  std::vector<Corner> corners;
  BBox bbox;
  double area = 0.0;  // signed enclosed area (positive once validated)
  uint64_t hash = 0;  // over the canonical serialization

  /// True when the junction after segment i (with segment i+1 mod n) is a
  /// corner of the domain.
  bool cornerAfter(int i) const {
    for (const Corner& c : corners)
      if (c.seg_in == i) return true;
    return false;
  }
};

struct BoundaryFrame {
  Vec2 point, tangent, normal;
};

inline BoundaryFrame boundary_frame(const DomainSpec& spec, int seg, double s) {
  if (seg < 0 || seg >= static_cast<int>(spec.segments.size()))
    throw PreconditionError("segment index out of range");
  const BoundarySegment& sg = spec.segments[seg];
  if (s < 0.0 || s > sg.length)
    throw PreconditionError("arclength parameter outside segment range");
  return {sg.point(s), sg.tangent(s), sg.outerNormal(s)};
}

// ---------------------------------------------------------------------------
// Serialization (domain DSL).
//
//   line x0 y0 x1 y1
//   arc  cx cy r theta0 theta1 ccw|cw
//   # comment

inline std::string serialize(const DomainSpec& spec) {
  std::string out;
  for (const BoundarySegment& s : spec.segments) {
    if (!s.isArc()) {
      out += "line " + fmt17(s.a.x) + " " + fmt17(s.a.y) + " " + fmt17(s.b.x) +
             " " + fmt17(s.b.y) + "\n";
    } else {
      double theta1 = s.theta0 + s.sweep;
      out += "arc " + fmt17(s.center.x) + " " + fmt17(s.center.y) + " " +
             fmt17(s.radius) + " " + fmt17(s.theta0) + " " + fmt17(theta1) +
             (s.sweep >= 0 ? " ccw\n" : " cw\n");
    }
  }
  return out;
}

namespace detail {

inline BoundarySegment makeLine(Vec2 a, Vec2 b) {
  BoundarySegment s;
  s.kind = SegmentKind::Line;
  s.a = a;
  s.b = b;
  s.length = dist(a, b);
  return s;
}

inline BoundarySegment makeArc(Vec2 c, double r, double th0, double th1,
                               bool ccw) {
  BoundarySegment s;
  s.kind = SegmentKind::CircularArc;
  s.center = c;
  s.radius = r;
  s.theta0 = th0;
  double d = ccw ? th1 - th0 : th0 - th1;
  // Normalize the sweep magnitude into (0, 2*pi]; a full turn stays full.
  while (d <= 0) d += kTwoPi;
  while (d > kTwoPi + 1e-12) d -= kTwoPi;
  d = std::min(d, kTwoPi);
  s.sweep = ccw ? d : -d;
  s.length = r * d;
  s.a = s.point(0.0);
  s.b = s.point(s.length);
  return s;
}

/// Signed area enclosed by the chain: polygon shoelace over endpoints plus
/// circular-segment corrections for arcs.
inline double chainSignedArea(const std::vector<BoundarySegment>& segs) {
  double area = 0.0;
  for (const BoundarySegment& s : segs) {
    area += 0.5 * cross(s.a, s.b);
    if (s.isArc()) {
      double d = std::abs(s.sweep);
      double seg_area = 0.5 * s.radius * s.radius * (d - std::sin(d));
      area += (s.sweep >= 0 ? seg_area : -seg_area);
    }
  }
  return area;
}

/// Dense polyline sampling of a segment (used for intersection screening).
inline std::vector<Vec2> samplePolyline(const BoundarySegment& s, int n) {
  std::vector<Vec2> pts;
  pts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) pts.push_back(s.point(s.length * i / n));
  return pts;
}

inline bool properSegmentIntersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto side = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
  double d1 = side(a, b, c), d2 = side(a, b, d);
  double d3 = side(c, d, a), d4 = side(c, d, b);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace detail

/// Validates a segment chain and assembles the DomainSpec. Corners are
/// detected where adjacent tangents differ by more than 1e-9 radians.
inline DomainSpec assemble_domain(std::vector<BoundarySegment> segs) {
  if (segs.empty()) throw ValidationError("empty boundary chain");

  DomainSpec spec;
  spec.segments = std::move(segs);

  spec.bbox.lo = spec.bbox.hi = spec.segments[0].a;
  for (const BoundarySegment& s : spec.segments) {
    spec.bbox.absorb(s.a);
    spec.bbox.absorb(s.b);
    if (s.isArc())
      for (const Vec2& p : detail::samplePolyline(s, 32)) spec.bbox.absorb(p);
  }
  double diam = spec.bbox.diameter();
  if (diam <= 0) throw ValidationError("degenerate boundary chain");

  const int n = static_cast<int>(spec.segments.size());
  for (int i = 0; i < n; ++i) {
    const BoundarySegment& cur = spec.segments[i];
    const BoundarySegment& nxt = spec.segments[(i + 1) % n];
    if (dist(cur.b, nxt.a) > 1e-12 * diam)
      throw ValidationError("open boundary chain: segment " +
                            std::to_string(i) + " does not meet segment " +
                            std::to_string((i + 1) % n));
  }

  spec.area = detail::chainSignedArea(spec.segments);
  if (spec.area <= 0)
    throw ValidationError(
        "negative orientation: the domain must lie on the left of the "
        "traversal (signed area <= 0); reverse the chain");

  // Self-intersection screening on a dense polyline.
  {
    struct Piece { Vec2 a, b; int seg; };
    std::vector<Piece> pieces;
    for (int i = 0; i < n; ++i) {
      int m = spec.segments[i].isArc() ? 64 : 8;
      auto pts = detail::samplePolyline(spec.segments[i], m);
      for (int j = 0; j + 1 <= m; ++j)
        pieces.push_back({pts[j], pts[j + 1], i});
    }
    const int np = static_cast<int>(pieces.size());
    for (int i = 0; i < np; ++i)
      for (int j = i + 2; j < np; ++j) {
        if (i == 0 && j == np - 1) continue;  // closing adjacency
        if (detail::properSegmentIntersect(pieces[i].a, pieces[i].b,
                                           pieces[j].a, pieces[j].b))
          throw ValidationError("self-intersecting boundary chain");
      }
  }

  // Corner detection and interior angles from incident tangents.
  for (int i = 0; i < n; ++i) {
    const BoundarySegment& cur = spec.segments[i];
    const BoundarySegment& nxt = spec.segments[(i + 1) % n];
    Vec2 tin = cur.tangent(cur.length);
    Vec2 tout = nxt.tangent(0.0);
    double turn = std::atan2(cross(tin, tout), dot(tin, tout));
    if (std::abs(turn) <= 1e-9) continue;
    Corner c;
    c.vertex = cur.b;
    c.interior_angle = kPi - turn;
    c.seg_in = i;
    c.seg_out = (i + 1) % n;
    if (!(c.interior_angle > 0 && c.interior_angle < kPi)) {
      std::ostringstream os;
      os << "non-convex corner at (" << c.vertex.x << ", " << c.vertex.y
         << "): interior angle " << c.interior_angle << " not in (0, pi)";
      throw ValidationError(os.str());
    }
    spec.corners.push_back(c);
  }

  spec.hash = fnv1a64(serialize(spec));
  return spec;
}

inline DomainSpec parse_domain(const std::string& text) {
  std::vector<BoundarySegment> segs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word[0] == '#') continue;
    if (word == "line") {
      double x0, y0, x1, y1;
      if (!(ls >> x0 >> y0 >> x1 >> y1))
        throw ParseError("expected `line x0 y0 x1 y1`", lineno, 1);
      if (dist({x0, y0}, {x1, y1}) == 0.0)
        throw ParseError("zero-length line segment", lineno, 1);
      segs.push_back(detail::makeLine({x0, y0}, {x1, y1}));
    } else if (word == "arc") {
      double cx, cy, r, th0, th1;
      std::string dir;
      if (!(ls >> cx >> cy >> r >> th0 >> th1 >> dir) ||
          (dir != "ccw" && dir != "cw"))
        throw ParseError("expected `arc cx cy r theta0 theta1 ccw|cw`", lineno,
                         1);
      if (r <= 0) throw ParseError("arc radius must be positive", lineno, 1);
      segs.push_back(detail::makeArc({cx, cy}, r, th0, th1, dir == "ccw"));
    } else {
      throw ParseError("unknown statement `" + word + "`", lineno, 1);
    }
  }
  return assemble_domain(std::move(segs));
}

// ---------------------------------------------------------------------------
// Lip certification.
//
// A fixed-coordinates lip domain has every outer-normal angle inside the
// closed cone [pi/4, 3pi/4] U [5pi/4, 7pi/4]; that is the graph condition
// "Lipschitz constant at most one" restated through normals.

enum class LipVerdict { Lip, NotLip };

struct SegmentNormalRange {
  int segment = 0;
  double angle_min = 0.0, angle_max = 0.0;  // after the applied rotation
  bool inside_cone = false;
};

struct LipCertificate {
  LipVerdict verdict = LipVerdict::NotLip;
  double rotation_applied = 0.0;
  bool searched = false;
  LipVerdict fixed_verdict = LipVerdict::NotLip;  // at the requested rotation
  std::vector<SegmentNormalRange> normal_ranges;  // for the certified rotation
  std::vector<int> violating_segments;            // for the certified rotation
  bool rectangle = false;
  bool square = false;
};

namespace detail {

inline double wrapAngle(double a) {  // into [0, 2*pi)
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

/// Does the closed angle interval [a0, a1] (a1 >= a0) fit inside
/// [lo, hi] modulo 2*pi, with tolerance tol at the cone boundary?
inline bool intervalInsideArc(double a0, double a1, double lo, double hi,
                              double tol) {
  if (a1 - a0 > hi - lo + 2 * tol) return false;
  double start = wrapAngle(a0);
  for (int k = -1; k <= 1; ++k) {
    double s = start + k * kTwoPi;
    if (s >= lo - tol && s + (a1 - a0) <= hi + tol) return true;
  }
  return false;
}

inline bool intervalInsideCone(double a0, double a1, double tol) {
  return intervalInsideArc(a0, a1, kPi / 4, 3 * kPi / 4, tol) ||
         intervalInsideArc(a0, a1, 5 * kPi / 4, 7 * kPi / 4, tol);
}

/// Range of outer-normal angles along a segment, after rotating the domain.
inline std::pair<double, double> normalAngleRange(const BoundarySegment& s,
                                                  double rotation) {
  if (!s.isArc()) {
    Vec2 nu = rotate(s.outerNormal(0.0), rotation);
    double a = std::atan2(nu.y, nu.x);
    return {a, a};
  }
  double start = std::atan2(s.outerNormal(0.0).y, s.outerNormal(0.0).x) +
                 rotation;
  // Normal angle advances with the signed sweep along the arc.
  return s.sweep >= 0 ? std::pair{start, start + s.sweep}
                      : std::pair{start + s.sweep, start};
}

inline bool coneTest(const DomainSpec& spec, double rotation,
                     std::vector<SegmentNormalRange>& ranges,
                     std::vector<int>& violating) {
  constexpr double tol = 1e-9;
  ranges.clear();
  violating.clear();
  bool ok = true;
  for (int i = 0; i < static_cast<int>(spec.segments.size()); ++i) {
    auto [a0, a1] = normalAngleRange(spec.segments[i], rotation);
    bool inside = intervalInsideCone(a0, a1, tol);
    ranges.push_back({i, a0, a1, inside});
    if (!inside) {
      ok = false;
      violating.push_back(i);
    }
  }
  return ok;
}

inline void setShapeFlags(const DomainSpec& spec, double rotation,
                          LipCertificate& cert) {
  constexpr double tol = 1e-9;
  cert.rectangle = false;
  cert.square = false;
  if (spec.corners.size() != 4) return;
  for (const BoundarySegment& s : spec.segments) {
    if (s.isArc()) return;
    Vec2 nu = rotate(s.outerNormal(0.0), rotation);
    double a = detail::wrapAngle(std::atan2(nu.y, nu.x));
    double best = kTwoPi;
    for (double target : {kPi / 4, 3 * kPi / 4, 5 * kPi / 4, 7 * kPi / 4})
      best = std::min(best, std::abs(a - target));
    if (best > tol) return;
  }
  cert.rectangle = true;
  // Side lengths between consecutive corners (segments may be split).
  std::vector<double> sides;
  double acc = 0.0;
  const int n = static_cast<int>(spec.segments.size());
  int start = spec.corners[0].seg_out;
  for (int k = 0; k < n; ++k) {
    int i = (start + k) % n;
    acc += spec.segments[i].length;
    if (spec.cornerAfter(i)) {
      sides.push_back(acc);
      acc = 0.0;
    }
  }
  double lo = *std::min_element(sides.begin(), sides.end());
  double hi = *std::max_element(sides.begin(), sides.end());
  cert.square = (hi - lo) <= 1e-9 * hi;
}

}  // namespace detail

/// Cone test for the lip property at the given rotation of the domain. With
/// `search` set, rotations k*pi/256 (0 <= k < 512) are additionally scanned
/// and the first certifying one is reported.
inline LipCertificate check_lip(const DomainSpec& spec, double rotation = 0.0,
                                bool search = false) {
  LipCertificate cert;
  cert.searched = search;
  bool ok = detail::coneTest(spec, rotation, cert.normal_ranges,
                             cert.violating_segments);
  cert.fixed_verdict = ok ? LipVerdict::Lip : LipVerdict::NotLip;
  cert.verdict = cert.fixed_verdict;
  cert.rotation_applied = rotation;

  if (!ok && search) {
    for (int k = 0; k < 512; ++k) {
      double rot = k * kPi / 256;
      std::vector<SegmentNormalRange> ranges;
      std::vector<int> violating;
      if (detail::coneTest(spec, rot, ranges, violating)) {
        cert.verdict = LipVerdict::Lip;
        cert.rotation_applied = rot;
        cert.normal_ranges = std::move(ranges);
        cert.violating_segments.clear();
        break;
      }
    }
  }
  detail::setShapeFlags(spec, cert.rotation_applied, cert);
  return cert;
}

// ---------------------------------------------------------------------------
// Extreme boundary points (the "coldest/hottest spot" candidates).

struct ExtremePoints {
  Vec2 leftmost, rightmost;
  bool leftmost_unique = true, rightmost_unique = true;
};

inline ExtremePoints boundary_extremes(const DomainSpec& spec) {
  // Sample each segment densely, then refine uniqueness by checking whether
  // the extreme abscissa is attained on a piece of positive length.
  ExtremePoints ex;
  double xmin = 1e300, xmax = -1e300;
  for (const BoundarySegment& s : spec.segments) {
    int m = s.isArc() ? 512 : 1;
    for (int i = 0; i <= m; ++i) {
      Vec2 p = s.point(s.length * i / m);
      if (p.x < xmin) { xmin = p.x; ex.leftmost = p; }
      if (p.x > xmax) { xmax = p.x; ex.rightmost = p; }
    }
  }
  double tol = 1e-9 * spec.bbox.diameter();
  double left_len = 0.0, right_len = 0.0;
  for (const BoundarySegment& s : spec.segments) {
    int m = s.isArc() ? 512 : 8;
    for (int i = 0; i < m; ++i) {
      Vec2 p0 = s.point(s.length * i / m), p1 = s.point(s.length * (i + 1) / m);
      if (p0.x < xmin + tol && p1.x < xmin + tol) left_len += dist(p0, p1);
      if (p0.x > xmax - tol && p1.x > xmax - tol) right_len += dist(p0, p1);
    }
  }
  ex.leftmost_unique = left_len < tol;
  ex.rightmost_unique = right_len < tol;
  return ex;
}

}  // namespace specgeom
