#include <catch2/catch_amalgamated.hpp>

#include "specgeom/mesh.hpp"
#include "specgeom/triangulate.hpp"

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

void checkInvariants(const Mesh& m, const DomainSpec& spec) {
  for (int t = 0; t < m.numTriangles(); ++t) CHECK(m.triangleArea(t) > 0);
  CHECK(m.eulerCharacteristic() == 1);

  // Boundary edges close into a single loop in traversal order.
  const auto& be = m.boundary_edges;
  REQUIRE_FALSE(be.empty());
  for (size_t i = 0; i < be.size(); ++i)
    CHECK(be[i].n1 == be[(i + 1) % be.size()].n0);

  double diam = spec.bbox.diameter();
  for (const BoundaryEdge& e : be) {
    const BoundarySegment& s = spec.segments[e.segment];
    CHECK(e.s0 >= -1e-12);
    CHECK(e.s1 <= s.length + 1e-12);
    CHECK(e.s0 < e.s1);
    CHECK(dist(m.nodes[e.n0], s.point(e.s0)) <= 1e-10 * diam);
    CHECK(dist(m.nodes[e.n1], s.point(e.s1)) <= 1e-10 * diam);
    double len = e.s1 - e.s0;
    CHECK(len <= m.h * (1 + 1e-12));
    CHECK(len >= m.h / 2 * (1 - 1e-12));
  }

  // Every domain corner appears as a corner-flagged mesh node.
  for (const Corner& c : spec.corners) {
    bool found = false;
    for (int i = 0; i < m.numNodes(); ++i)
      if (m.is_corner_node[i] && dist(m.nodes[i], c.vertex) <= 1e-10 * diam)
        found = true;
    CHECK(found);
  }
}

}  // namespace

TEST_CASE("triangulate the fleet with quality bounds") {
  struct Case { DomainSpec spec; double h; };
  for (auto& [spec, h] : {Case{diamond(), 0.1}, Case{unitDisk(), 0.1},
                          Case{lipTriangle(), 0.08}}) {
    Mesh m = triangulate(spec, h);
    checkInvariants(m, spec);
    CHECK(m.minAngle() >= 20.0 * kPi / 180.0);
    CHECK(m.maxCircumradius() <= h * (1 + 1e-9));
  }
}

TEST_CASE("diamond at h=1 keeps all four corners") {
  DomainSpec spec = diamond();
  Mesh m = triangulate(spec, 1.0);
  checkInvariants(m, spec);
  int corners = 0;
  for (char c : m.is_corner_node) corners += c;
  CHECK(corners == 4);
  int bnodes = 0;
  for (char c : m.is_boundary_node) bnodes += c;
  CHECK(bnodes >= 4);
}

TEST_CASE("disk boundary nodes lie on the circle") {
  DomainSpec spec = unitDisk();
  Mesh m = triangulate(spec, 0.2);
  for (int i = 0; i < m.numNodes(); ++i)
    if (m.is_boundary_node[i])
      CHECK(std::abs(m.nodes[i].norm() - 1.0) <= 1e-10);
}

TEST_CASE("triangle mesh satisfies the Euler relation") {
  Mesh m = triangulate(lipTriangle(), 0.1);
  CHECK(m.eulerCharacteristic() == 1);
}

TEST_CASE("polygon area is reproduced exactly") {
  Mesh m = triangulate(diamond(), 0.05);
  CHECK(std::abs(m.totalArea() - 2.0) <= 1e-12 * 2.0);
}

TEST_CASE("disk area deficit decays at second order under refinement") {
  DomainSpec spec = unitDisk();
  Mesh m0 = triangulate(spec, 0.2);
  Mesh m1 = refine(m0, spec);
  Mesh m2 = refine(m1, spec);
  double d0 = kPi - m0.totalArea();
  double d1 = kPi - m1.totalArea();
  double d2 = kPi - m2.totalArea();
  REQUIRE(d0 > 0);
  CHECK(d0 / d1 == Approx(4.0).margin(0.8));
  CHECK(d1 / d2 == Approx(4.0).margin(0.8));
}

TEST_CASE("red refinement splits every triangle in four") {
  DomainSpec spec = diamond();
  Mesh m = triangulate(spec, 0.5);
  Mesh r = refine(m, spec);
  CHECK(r.numTriangles() == 4 * m.numTriangles());
  CHECK(r.h == Approx(0.25));
  Mesh rr = refine(r, spec);
  CHECK(rr.h == Approx(0.125));
  checkInvariants(rr, spec);
}

TEST_CASE("refined disk midpoints project onto the circle") {
  DomainSpec spec = unitDisk();
  Mesh m = triangulate(spec, 0.2);
  Mesh r = refine(m, spec);
  for (int i = 0; i < r.numNodes(); ++i)
    if (r.is_boundary_node[i])
      CHECK(std::abs(r.nodes[i].norm() - 1.0) <= 1e-10);
  checkInvariants(r, spec);
}

TEST_CASE("triangulation is deterministic") {
  DomainSpec spec = unitDisk();
  std::string a = write_mesh(triangulate(spec, 0.15));
  std::string b = write_mesh(triangulate(spec, 0.15));
  CHECK(a == b);
}

TEST_CASE("node budget is enforced") {
  TriangulateOptions opts;
  opts.node_budget = 100;
  REQUIRE_THROWS_AS(triangulate(diamond(), 0.01, opts), PreconditionError);
  Mesh m = triangulate(diamond(), 0.5);
  REQUIRE_THROWS_AS(refine(m, diamond(), 10), PreconditionError);
}

TEST_CASE("invalid target size is rejected") {
  REQUIRE_THROWS_AS(triangulate(diamond(), 0.0), PreconditionError);
  REQUIRE_THROWS_AS(triangulate(diamond(), 100.0), PreconditionError);
}

TEST_CASE("mesh text format round-trips") {
  DomainSpec spec = lipTriangle();
  Mesh m = triangulate(spec, 0.15);
  Mesh back = read_mesh(write_mesh(m));
  REQUIRE(back.numNodes() == m.numNodes());
  REQUIRE(back.numTriangles() == m.numTriangles());
  REQUIRE(back.boundary_edges.size() == m.boundary_edges.size());
  CHECK(back.h == m.h);
  for (int i = 0; i < m.numNodes(); ++i)
    CHECK(dist(back.nodes[i], m.nodes[i]) <= 1e-12);
  CHECK(write_mesh(back) == write_mesh(m));
}
