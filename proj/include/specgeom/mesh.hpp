// Conforming triangle meshes whose boundary edges stay linked to the exact
// boundary segment (index + arclength interval) they discretize.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "specgeom/core.hpp"
#include "specgeom/geometry.hpp"

namespace specgeom {

struct BoundaryEdge {
  int n0 = -1, n1 = -1;   // node indices in traversal order
  int segment = -1;       // source segment in the DomainSpec
  double s0 = 0, s1 = 0;  // arclength interval on the source segment
  bool corner0 = false, corner1 = false;
};

struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;  // positively oriented
  std::vector<BoundaryEdge> boundary_edges;   // single closed loop, in order
  std::vector<char> is_boundary_node;
  std::vector<char> is_corner_node;
  double h = 0.0;
  uint64_t domain_hash = 0;

  int numNodes() const { return static_cast<int>(nodes.size()); }
  int numTriangles() const { return static_cast<int>(triangles.size()); }

  double triangleArea(int t) const { return triangleAreaOf(triangles[t]); }

  double triangleAreaOf(const std::array<int, 3>& tr) const {
    return 0.5 * cross(nodes[tr[1]] - nodes[tr[0]], nodes[tr[2]] - nodes[tr[0]]);
  }

  double totalArea() const {
    double a = 0;
    for (int t = 0; t < numTriangles(); ++t) a += triangleArea(t);
    return a;
  }

  /// Euler characteristic V - E + F of the triangulated disk (edges counted
  /// once); equals 1 for a valid mesh.
  int eulerCharacteristic() const {
    std::map<std::pair<int, int>, char> edges;
    for (const auto& tr : triangles)
      for (int k = 0; k < 3; ++k) {
        int a = tr[k], b = tr[(k + 1) % 3];
        edges[{std::min(a, b), std::max(a, b)}] = 1;
      }
    return numNodes() - static_cast<int>(edges.size()) + numTriangles();
  }

  double minAngle() const {
    double best = kTwoPi;
    for (const auto& tr : triangles) {
      for (int k = 0; k < 3; ++k) {
        Vec2 u = nodes[tr[(k + 1) % 3]] - nodes[tr[k]];
        Vec2 v = nodes[tr[(k + 2) % 3]] - nodes[tr[k]];
        double ang = std::atan2(std::abs(cross(u, v)), dot(u, v));
        best = std::min(best, ang);
      }
    }
    return best;
  }

  double maxCircumradius() const {
    double best = 0;
    for (const auto& tr : triangles) {
      Vec2 a = nodes[tr[0]], b = nodes[tr[1]], c = nodes[tr[2]];
      double d = 2 * cross(b - a, c - a);
      Vec2 rel{(b - a).norm2(), (c - a).norm2()};
      Vec2 cc{(rel.x * (c - a).y - rel.y * (b - a).y) / d,
              ((b - a).x * rel.y - (c - a).x * rel.x) / d};
      best = std::max(best, cc.norm());
    }
    return best;
  }
};

// ---------------------------------------------------------------------------
// Text format:
//   mesh v=<V> t=<T> b=<B> h=<h>
//   n x y          (per node)
//   t i j k        (per triangle)
//   b i j seg s0 s1 c0 c1   (per boundary edge)

inline std::string write_mesh(const Mesh& m) {
  std::string out = "mesh v=" + std::to_string(m.numNodes()) +
                    " t=" + std::to_string(m.numTriangles()) +
                    " b=" + std::to_string(m.boundary_edges.size()) +
                    " h=" + fmt17(m.h) + "\n";
  for (const Vec2& p : m.nodes)
    out += "n " + fmt17(p.x) + " " + fmt17(p.y) + "\n";
  for (const auto& t : m.triangles)
    out += "t " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
           std::to_string(t[2]) + "\n";
  for (const BoundaryEdge& e : m.boundary_edges)
    out += "b " + std::to_string(e.n0) + " " + std::to_string(e.n1) + " " +
           std::to_string(e.segment) + " " + fmt17(e.s0) + " " + fmt17(e.s1) +
           " " + (e.corner0 ? "1" : "0") + " " + (e.corner1 ? "1" : "0") + "\n";
  return out;
}

inline Mesh read_mesh(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Mesh m;
  int lineno = 0;
  int v = -1, t = -1, b = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "mesh") {
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("bad header", lineno, 1);
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "v") v = std::stoi(val);
        else if (key == "t") t = std::stoi(val);
        else if (key == "b") b = std::stoi(val);
        else if (key == "h") m.h = std::stod(val);
      }
    } else if (word == "n") {
      Vec2 p;
      if (!(ls >> p.x >> p.y)) throw ParseError("bad node line", lineno, 1);
      m.nodes.push_back(p);
    } else if (word == "t") {
      std::array<int, 3> tr{};
      if (!(ls >> tr[0] >> tr[1] >> tr[2]))
        throw ParseError("bad triangle line", lineno, 1);
      m.triangles.push_back(tr);
    } else if (word == "b") {
      BoundaryEdge e;
      int c0, c1;
      if (!(ls >> e.n0 >> e.n1 >> e.segment >> e.s0 >> e.s1 >> c0 >> c1))
        throw ParseError("bad boundary edge line", lineno, 1);
      e.corner0 = c0 != 0;
      e.corner1 = c1 != 0;
      m.boundary_edges.push_back(e);
    } else {
      throw ParseError("unknown mesh statement `" + word + "`", lineno, 1);
    }
  }
  if (v != m.numNodes() || t != m.numTriangles() ||
      b != static_cast<int>(m.boundary_edges.size()))
    throw ParseError("mesh header counts do not match body", 1, 1);
  m.is_boundary_node.assign(m.nodes.size(), 0);
  m.is_corner_node.assign(m.nodes.size(), 0);
  for (const BoundaryEdge& e : m.boundary_edges) {
    m.is_boundary_node[e.n0] = m.is_boundary_node[e.n1] = 1;
    if (e.corner0) m.is_corner_node[e.n0] = 1;
    if (e.corner1) m.is_corner_node[e.n1] = 1;
  }
  return m;
}

}  // namespace specgeom
