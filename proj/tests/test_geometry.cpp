#include <catch2/catch_amalgamated.hpp>

#include "specgeom/geometry.hpp"

using namespace specgeom;
using Catch::Approx;

namespace {

DomainSpec diamond() {
  return parse_domain(
      "line 1 0 0 1\nline 0 1 -1 0\nline -1 0 0 -1\nline 0 -1 1 0\n");
}

DomainSpec unitDisk() { return parse_domain("arc 0 0 1 0 6.283185307179586 ccw\n"); }

DomainSpec lipTriangle() {
  return parse_domain("line 0 0 2 0\nline 2 0 1 1\nline 1 1 0 0\n");
}

DomainSpec equilateral() {
  return parse_domain(
      "line 0 0 1 0\n"
      "line 1 0 0.5 0.8660254037844386\n"
      "line 0.5 0.8660254037844386 0 0\n");
}

}  // namespace

TEST_CASE("diamond parses with four right-angle corners") {
  DomainSpec d = diamond();
  REQUIRE(d.segments.size() == 4);
  REQUIRE(d.corners.size() == 4);
  for (const Corner& c : d.corners)
    CHECK(c.interior_angle == Approx(kPi / 2).margin(1e-12));
  CHECK(d.area == Approx(2.0).margin(1e-14));
}

TEST_CASE("full circle has no corners") {
  DomainSpec d = unitDisk();
  REQUIRE(d.segments.size() == 1);
  CHECK(d.corners.empty());
  CHECK(d.area == Approx(kPi).margin(1e-12));
}

TEST_CASE("open chains are rejected") {
  REQUIRE_THROWS_AS(parse_domain("line 0 0 1 0\nline 1 0.1 0 0.1\nline 0 0.1 0 0\n"),
                    ValidationError);
  REQUIRE_THROWS_WITH(
      parse_domain("line 0 0 1 0\nline 1 0.1 0 0.1\nline 0 0.1 0 0\n"),
      Catch::Matchers::ContainsSubstring("open boundary chain"));
}

TEST_CASE("reversed chains are rejected as negatively oriented") {
  std::string reversed =
      "line 0 -1 -1 0\nline -1 0 0 1\nline 0 1 1 0\nline 1 0 0 -1\n";
  REQUIRE_THROWS_WITH(parse_domain(reversed),
                      Catch::Matchers::ContainsSubstring("reverse"));
  // The raw chain area flips sign under reversal.
  std::vector<BoundarySegment> segs;
  segs.push_back(detail::makeLine({0, -1}, {-1, 0}));
  segs.push_back(detail::makeLine({-1, 0}, {0, 1}));
  segs.push_back(detail::makeLine({0, 1}, {1, 0}));
  segs.push_back(detail::makeLine({1, 0}, {0, -1}));
  CHECK(detail::chainSignedArea(segs) == Approx(-2.0).margin(1e-14));
}

TEST_CASE("non-convex corners are rejected") {
  // L-shape with a reflex corner at (1, 1).
  std::string l =
      "line 0 0 2 0\nline 2 0 2 2\nline 2 2 1 2\nline 1 2 1 1\n"
      "line 1 1 0 1\nline 0 1 0 0\n";
  REQUIRE_THROWS_WITH(parse_domain(l),
                      Catch::Matchers::ContainsSubstring("non-convex"));
}

TEST_CASE("self-intersecting chains are rejected") {
  std::string bowtie = "line 0 0 1 1\nline 1 1 1 0\nline 1 0 0 1\nline 0 1 0 0\n";
  REQUIRE_THROWS_AS(parse_domain(bowtie), ValidationError);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse_domain("line 0 0 1 0\nfrob 1 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("signed curvature of lines and circles") {
  DomainSpec d = diamond();
  CHECK(signed_curvature(d.segments[0], 0.5) == 0.0);

  DomainSpec disk = unitDisk();
  CHECK(signed_curvature(disk.segments[0], 1.0) == Approx(-1.0).margin(1e-14));

  DomainSpec disk2 = parse_domain("arc 0 0 2 0 6.283185307179586 ccw\n");
  CHECK(signed_curvature(disk2.segments[0], 1.0) == Approx(-0.5).margin(1e-14));

  REQUIRE_THROWS_AS(signed_curvature(disk.segments[0], -0.1), PreconditionError);
  REQUIRE_THROWS_AS(signed_curvature(disk.segments[0], 100.0), PreconditionError);
}

TEST_CASE("curvature agrees with a finite-difference second derivative") {
  // kappa = <nu(s), r''(s)> with r'' approximated by central differences.
  for (double radius : {1.0, 2.0, 0.5}) {
    DomainSpec d = parse_domain("arc 0 0 " + fmt17(radius) +
                                " 0 6.283185307179586 ccw\n");
    const BoundarySegment& s = d.segments[0];
    double eps = 1e-5 * radius;
    for (double frac : {0.2, 0.5, 0.8}) {
      double at = frac * s.length;
      Vec2 rpp = (s.point(at + eps) - 2.0 * s.point(at) + s.point(at - eps)) /
                 (eps * eps);
      double numeric = dot(s.outerNormal(at), rpp);
      CHECK(signed_curvature(s, at) == Approx(numeric).margin(1e-5));
    }
  }
}

TEST_CASE("boundary frames") {
  DomainSpec d = diamond();
  // Edge from (1,0) to (0,1): outer normal (1,1)/sqrt(2).
  BoundaryFrame f = boundary_frame(d, 0, d.segments[0].length / 2);
  CHECK(f.normal.x == Approx(std::sqrt(0.5)).margin(1e-14));
  CHECK(f.normal.y == Approx(std::sqrt(0.5)).margin(1e-14));

  DomainSpec disk = unitDisk();
  BoundaryFrame g = boundary_frame(disk, 0, 0.0);
  CHECK(g.point.x == Approx(1.0).margin(1e-14));
  CHECK(g.normal.x == Approx(1.0).margin(1e-14));
  CHECK(g.tangent.y == Approx(1.0).margin(1e-14));

  DomainSpec disk2 = parse_domain("arc 0 0 2 0 6.283185307179586 ccw\n");
  BoundaryFrame h = boundary_frame(disk2, 0, 2 * (kPi / 2));  // at (0, 2)
  CHECK(h.point.y == Approx(2.0).margin(1e-12));
  CHECK(h.normal.x == Approx(0.0).margin(1e-12));
  CHECK(h.normal.y == Approx(1.0).margin(1e-12));

  REQUIRE_THROWS_AS(boundary_frame(d, 7, 0.0), PreconditionError);
  REQUIRE_THROWS_AS(boundary_frame(d, 0, -1.0), PreconditionError);
}

TEST_CASE("frame orthonormality and unit speed everywhere") {
  for (const DomainSpec& d : {diamond(), unitDisk(), lipTriangle()}) {
    for (int i = 0; i < static_cast<int>(d.segments.size()); ++i) {
      const BoundarySegment& s = d.segments[i];
      for (int q = 1; q < 8; ++q) {
        double at = s.length * q / 8.0;
        BoundaryFrame f = boundary_frame(d, i, at);
        CHECK(std::abs(f.tangent.norm() - 1) <= 1e-12);
        CHECK(std::abs(f.normal.norm() - 1) <= 1e-12);
        CHECK(std::abs(dot(f.tangent, f.normal)) <= 1e-12);
        // |r'| = 1 via central differences.
        double eps = 1e-6 * std::max(1.0, s.length);
        if (at > eps && at + eps < s.length) {
          Vec2 rp = (s.point(at + eps) - s.point(at - eps)) / (2 * eps);
          CHECK(std::abs(rp.norm() - 1) <= 1e-8);
          CHECK(dist(rp, f.tangent) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("convex domains have nonpositive curvature") {
  for (const DomainSpec& d : {diamond(), unitDisk()})
    for (const BoundarySegment& s : d.segments)
      for (double frac : {0.25, 0.5, 0.75})
        CHECK(signed_curvature(s, frac * s.length) <= 0.0);
}

TEST_CASE("serialization round-trips") {
  for (const DomainSpec& d : {diamond(), unitDisk(), lipTriangle()}) {
    DomainSpec back = parse_domain(serialize(d));
    REQUIRE(back.segments.size() == d.segments.size());
    CHECK(back.hash == d.hash);
    for (size_t i = 0; i < d.segments.size(); ++i) {
      CHECK(dist(back.segments[i].a, d.segments[i].a) <= 1e-12);
      CHECK(dist(back.segments[i].b, d.segments[i].b) <= 1e-12);
    }
  }
}

TEST_CASE("lip certificates for the fleet") {
  SECTION("diamond is a lip square") {
    LipCertificate c = check_lip(diamond(), 0.0, false);
    CHECK(c.verdict == LipVerdict::Lip);
    CHECK(c.rectangle);
    CHECK(c.square);
  }
  SECTION("equilateral triangle is never lip") {
    LipCertificate c0 = check_lip(equilateral(), 0.0, false);
    CHECK(c0.verdict == LipVerdict::NotLip);
    CHECK_FALSE(c0.violating_segments.empty());
    LipCertificate c1 = check_lip(equilateral(), 0.0, true);
    CHECK(c1.verdict == LipVerdict::NotLip);
  }
  SECTION("half-square triangle is lip") {
    LipCertificate c = check_lip(lipTriangle(), 0.0, false);
    CHECK(c.verdict == LipVerdict::Lip);
    CHECK_FALSE(c.rectangle);
  }
  SECTION("axis-aligned square certifies only under the rotation search") {
    double a = std::sqrt(0.5);
    std::string dsl;
    Vec2 v[4] = {{a, -a}, {a, a}, {-a, a}, {-a, -a}};
    for (int i = 0; i < 4; ++i)
      dsl += "line " + fmt17(v[i].x) + " " + fmt17(v[i].y) + " " +
             fmt17(v[(i + 1) % 4].x) + " " + fmt17(v[(i + 1) % 4].y) + "\n";
    DomainSpec sq = parse_domain(dsl);
    LipCertificate fixed = check_lip(sq, 0.0, false);
    CHECK(fixed.verdict == LipVerdict::NotLip);
    LipCertificate searched = check_lip(sq, 0.0, true);
    CHECK(searched.fixed_verdict == LipVerdict::NotLip);
    CHECK(searched.verdict == LipVerdict::Lip);
    CHECK(searched.rotation_applied == Approx(kPi / 4).margin(1e-12));
    CHECK(searched.square);
  }
  SECTION("explicit rotation argument applies the cone test there") {
    LipCertificate c = check_lip(diamond(), kPi / 4, false);
    CHECK(c.verdict == LipVerdict::NotLip);
  }
  SECTION("disk is not lip") {
    CHECK(check_lip(unitDisk(), 0.0, true).verdict == LipVerdict::NotLip);
  }
}

TEST_CASE("boundary extreme points") {
  ExtremePoints ex = boundary_extremes(lipTriangle());
  CHECK(dist(ex.leftmost, {0, 0}) <= 1e-9);
  CHECK(dist(ex.rightmost, {2, 0}) <= 1e-9);
  CHECK(ex.leftmost_unique);
  CHECK(ex.rightmost_unique);

  // A square with a vertical left side has no unique leftmost point.
  DomainSpec sq = parse_domain(
      "line 0 0 1 0\nline 1 0 1 1\nline 1 1 0 1\nline 0 1 0 0\n");
  ExtremePoints ex2 = boundary_extremes(sq);
  CHECK_FALSE(ex2.leftmost_unique);
}
