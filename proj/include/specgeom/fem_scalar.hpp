// P1 finite elements for the scalar Neumann and Dirichlet Laplacians.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "specgeom/core.hpp"
#include "specgeom/eigensolver.hpp"
#include "specgeom/mesh.hpp"
#include "specgeom/sparse.hpp"

namespace specgeom {

enum class ScalarBC { Neumann, Dirichlet };

inline std::string to_string(ScalarBC bc) {
  return bc == ScalarBC::Neumann ? "neumann" : "dirichlet";
}

/// Map between mesh nodes and unknowns. Dirichlet eliminates boundary nodes.
struct DofMap {
  std::vector<int> node_to_dof;  // -1 for eliminated nodes
  std::vector<int> dof_to_node;
  int numDofs() const { return static_cast<int>(dof_to_node.size()); }
};

struct ScalarSystem {
  SparseSym stiffness;
  SparseSym mass;
  DofMap dofs;
};

namespace detail {

/// Gradients of the three P1 shape functions on a triangle and its area.
struct P1Element {
  Vec2 grad[3];
  double area;
};

inline P1Element p1element(Vec2 a, Vec2 b, Vec2 c) {
  P1Element e;
  double twice = cross(b - a, c - a);
  e.area = 0.5 * twice;
  e.grad[0] = (c - b).perp() / twice;
  e.grad[1] = (a - c).perp() / twice;
  e.grad[2] = (b - a).perp() / twice;
  return e;
}

}  // namespace detail

inline ScalarSystem assemble_scalar(const Mesh& mesh, ScalarBC bc) {
  DofMap dofs;
  dofs.node_to_dof.assign(mesh.numNodes(), -1);
  for (int i = 0; i < mesh.numNodes(); ++i) {
    if (bc == ScalarBC::Dirichlet && mesh.is_boundary_node[i]) continue;
    dofs.node_to_dof[i] = dofs.numDofs();
    dofs.dof_to_node.push_back(i);
  }

  ScalarSystem sys{SparseSym(dofs.numDofs()), SparseSym(dofs.numDofs()), dofs};
  for (const auto& t : mesh.triangles) {
    auto el = detail::p1element(mesh.nodes[t[0]], mesh.nodes[t[1]],
                                mesh.nodes[t[2]]);
    if (el.area <= 0) throw NumericalError("degenerate triangle in assembly");
    for (int i = 0; i < 3; ++i) {
      int di = sys.dofs.node_to_dof[t[i]];
      if (di < 0) continue;
      for (int j = 0; j <= i; ++j) {
        int dj = sys.dofs.node_to_dof[t[j]];
        if (dj < 0) continue;
        sys.stiffness.add(di, dj, el.area * dot(el.grad[i], el.grad[j]));
        sys.mass.add(di, dj, el.area / 12.0 * (i == j ? 2.0 : 1.0));
      }
    }
  }
  return sys;
}

struct ScalarEigenpairs {
  ScalarBC bc = ScalarBC::Neumann;
  std::vector<double> eigenvalues;
  Eigen::MatrixXd fields;  // nodal values per column, mass-orthonormal;
                           // Dirichlet fields extended by zero to the boundary
  std::vector<double> residuals;
  std::string method;
  double h = 0.0;
  uint64_t domain_hash = 0;
};

inline ScalarEigenpairs solve_scalar(const Mesh& mesh, ScalarBC bc, int k,
                                     const EigOptions& opts = {}) {
  if (k < 1) throw PreconditionError("eigenpair count must be at least 1");
  ScalarSystem sys = assemble_scalar(mesh, bc);
  EigResult er = gen_sym_eig(sys.stiffness, sys.mass, k, opts);

  ScalarEigenpairs out;
  out.bc = bc;
  out.eigenvalues = er.eigenvalues;
  out.residuals = er.residuals;
  out.method = er.method;
  out.h = mesh.h;
  out.domain_hash = mesh.domain_hash;
  out.fields = Eigen::MatrixXd::Zero(mesh.numNodes(), k);
  for (int j = 0; j < k; ++j)
    for (int d = 0; d < sys.dofs.numDofs(); ++d)
      out.fields(sys.dofs.dof_to_node[d], j) = er.eigenvectors(d, j);

  if (bc == ScalarBC::Neumann && std::abs(out.eigenvalues[0]) > 1e-8)
    throw NumericalError("Neumann ground eigenvalue is not numerically zero");
  if (bc == ScalarBC::Dirichlet) {
    if (out.eigenvalues[0] <= 0)
      throw NumericalError("Dirichlet eigenvalue is not positive");
    if (k >= 2 && !(out.eigenvalues[1] > out.eigenvalues[0]))
      throw NumericalError("Dirichlet ground state is not simple");
  }
  return out;
}

/// Piecewise-constant P1 gradient of a nodal field on one triangle.
inline Vec2 p1_gradient(const Mesh& mesh, const Eigen::VectorXd& field, int t) {
  const auto& tr = mesh.triangles[t];
  auto el = detail::p1element(mesh.nodes[tr[0]], mesh.nodes[tr[1]],
                              mesh.nodes[tr[2]]);
  Vec2 g{0, 0};
  for (int i = 0; i < 3; ++i) g += el.grad[i] * field[tr[i]];
  return g;
}

/// Mass-weighted recovery of a per-triangle gradient field to the nodes.
inline std::vector<Vec2> recover_gradient(const Mesh& mesh,
                                          const Eigen::VectorXd& field) {
  std::vector<Vec2> g(mesh.numNodes(), Vec2{0, 0});
  std::vector<double> w(mesh.numNodes(), 0.0);
  for (int t = 0; t < mesh.numTriangles(); ++t) {
    Vec2 gt = p1_gradient(mesh, field, t);
    double a = mesh.triangleArea(t) / 3.0;
    for (int k = 0; k < 3; ++k) {
      g[mesh.triangles[t][k]] += gt * a;
      w[mesh.triangles[t][k]] += a;
    }
  }
  for (int i = 0; i < mesh.numNodes(); ++i) g[i] = g[i] / w[i];
  return g;
}

}  // namespace specgeom
