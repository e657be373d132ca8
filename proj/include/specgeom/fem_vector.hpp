// The quadratic form on vector fields
//
//   a[u] = int_Omega (|grad u1|^2 + |grad u2|^2) - int_bdry kappa |u|^2
//
// restricted to fields with vanishing normal trace, discretized with P1
// components. The curvature in the boundary term is evaluated on the exact
// source segment of each boundary edge, not the straight mesh edge.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "specgeom/core.hpp"
#include "specgeom/eigensolver.hpp"
#include "specgeom/fem_scalar.hpp"
#include "specgeom/geometry.hpp"
#include "specgeom/mesh.hpp"
#include "specgeom/sparse.hpp"

namespace specgeom {

// Nodal vector fields are stored as a flat vector: node i owns entries
// 2i (u1) and 2i+1 (u2).

struct VectorFormPair {
  SparseSym form;  // block stiffness minus the curvature boundary term
  SparseSym mass;  // block scalar mass
};

namespace detail {

// 3-point Gauss-Legendre on [0, 1].
inline constexpr double kGauss3X[3] = {0.1127016653792583, 0.5,
                                       0.8872983346207417};
inline constexpr double kGauss3W[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

}  // namespace detail

inline VectorFormPair assemble_vector_form(const Mesh& mesh,
                                           const DomainSpec& spec) {
  const int n = mesh.numNodes();
  VectorFormPair out{SparseSym(2 * n), SparseSym(2 * n)};

  for (const auto& t : mesh.triangles) {
    auto el = detail::p1element(mesh.nodes[t[0]], mesh.nodes[t[1]],
                                mesh.nodes[t[2]]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j <= i; ++j) {
        double kij = el.area * dot(el.grad[i], el.grad[j]);
        double mij = el.area / 12.0 * (i == j ? 2.0 : 1.0);
        for (int c = 0; c < 2; ++c) {
          out.form.add(2 * t[i] + c, 2 * t[j] + c, kij);
          out.mass.add(2 * t[i] + c, 2 * t[j] + c, mij);
        }
      }
  }

  // Boundary term: -kappa(s) times the P1 trace products, integrated in the
  // exact arclength parameter of the source segment.
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (e.segment < 0 || e.segment >= static_cast<int>(spec.segments.size()))
      throw PreconditionError("boundary edge lacks a source segment link");
    const BoundarySegment& seg = spec.segments[e.segment];
    double len = e.s1 - e.s0;
    int nodes[2] = {e.n0, e.n1};
    for (int g = 0; g < 3; ++g) {
      double t = detail::kGauss3X[g];
      double s = e.s0 + t * len;
      double kappa = signed_curvature(seg, s);
      double w = detail::kGauss3W[g] * len;
      double shape[2] = {1.0 - t, t};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j <= i; ++j)
          for (int c = 0; c < 2; ++c)
            out.form.add(2 * nodes[i] + c, 2 * nodes[j] + c,
                         -kappa * w * shape[i] * shape[j]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tangential constraint <u, nu> = 0 by local rotation and elimination.

enum class NodeConstraint { Free, TangentialOnly, FullyClamped };

struct ConstraintMap {
  std::vector<NodeConstraint> kind;  // per node
  std::vector<Vec2> tangent;         // unit tangent for TangentialOnly nodes
  Eigen::SparseMatrix<double> reduction;  // full (2n) x free
  int free_count = 0;

  /// Full nodal vector from reduced unknowns.
  Eigen::VectorXd expand(const Eigen::VectorXd& reduced) const {
    return reduction * reduced;
  }

  /// Nearest constrained field: tangential projection at boundary nodes,
  /// zero at corners.
  void project(std::vector<Vec2>& nodal) const {
    for (size_t i = 0; i < kind.size(); ++i) {
      if (kind[i] == NodeConstraint::TangentialOnly)
        nodal[i] = tangent[i] * dot(nodal[i], tangent[i]);
      else if (kind[i] == NodeConstraint::FullyClamped)
        nodal[i] = {0, 0};
    }
  }
};

inline ConstraintMap build_tangential_constraint(const Mesh& mesh,
                                                 const DomainSpec& spec) {
  const int n = mesh.numNodes();
  ConstraintMap cm;
  cm.kind.assign(n, NodeConstraint::Free);
  cm.tangent.assign(n, Vec2{0, 0});

  // Outer normal per boundary node from the exact segment; adjacent edges of
  // a non-corner node must agree on it.
  std::vector<Vec2> normal(n, Vec2{0, 0});
  std::vector<char> seen(n, 0);
  auto visit = [&](int node, Vec2 nu, bool corner) {
    if (corner) {
      cm.kind[node] = NodeConstraint::FullyClamped;
      return;
    }
    if (cm.kind[node] == NodeConstraint::FullyClamped) return;
    if (seen[node] && (normal[node] - nu).norm() > 1e-8)
      throw ValidationError(
          "inconsistent outer normals at a non-corner boundary junction");
    seen[node] = 1;
    normal[node] = nu;
    cm.kind[node] = NodeConstraint::TangentialOnly;
  };
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const BoundarySegment& seg = spec.segments[e.segment];
    visit(e.n0, seg.outerNormal(e.s0), e.corner0);
    visit(e.n1, seg.outerNormal(e.s1), e.corner1);
  }

  std::vector<Eigen::Triplet<double>> ts;
  int free = 0;
  for (int i = 0; i < n; ++i) {
    switch (cm.kind[i]) {
      case NodeConstraint::Free:
        ts.emplace_back(2 * i, free, 1.0);
        ts.emplace_back(2 * i + 1, free + 1, 1.0);
        free += 2;
        break;
      case NodeConstraint::TangentialOnly: {
        Vec2 tau{-normal[i].y, normal[i].x};  // nu rotated +90 deg
        cm.tangent[i] = tau;
        ts.emplace_back(2 * i, free, tau.x);
        ts.emplace_back(2 * i + 1, free, tau.y);
        free += 1;
        break;
      }
      case NodeConstraint::FullyClamped:
        break;
    }
  }
  cm.free_count = free;
  cm.reduction.resize(2 * n, free);
  cm.reduction.setFromTriplets(ts.begin(), ts.end());
  return cm;
}

/// R^T S R for a symmetric S given in lower-triangle storage.
inline SparseSym reduce_symmetric(const SparseSym& S,
                                  const Eigen::SparseMatrix<double>& R) {
  Eigen::SparseMatrix<double> full = S.toEigen();
  Eigen::SparseMatrix<double> red =
      Eigen::SparseMatrix<double>(R.transpose()) * full * R;
  SparseSym out(static_cast<int>(red.rows()));
  for (int c = 0; c < red.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(red, c); it; ++it)
      if (it.row() >= it.col()) out.add(it.row(), it.col(), it.value());
  out.compress();
  return out;
}

struct VectorEigenpairs {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd fields;  // 2n x k nodal coefficients, mass-orthonormal
  std::vector<double> form_values;  // a[u_j]
  std::vector<double> residuals;
  std::string method;
  double h = 0.0;
  uint64_t domain_hash = 0;
};

inline VectorEigenpairs solve_vector(const Mesh& mesh, const DomainSpec& spec,
                                     int k, const EigOptions& opts = {}) {
  if (k < 1) throw PreconditionError("eigenpair count must be at least 1");
  VectorFormPair fp = assemble_vector_form(mesh, spec);
  ConstraintMap cm = build_tangential_constraint(mesh, spec);
  SparseSym A = reduce_symmetric(fp.form, cm.reduction);
  SparseSym B = reduce_symmetric(fp.mass, cm.reduction);
  EigResult er = gen_sym_eig(A, B, k, opts);

  VectorEigenpairs out;
  out.eigenvalues = er.eigenvalues;
  out.residuals = er.residuals;
  out.method = er.method;
  out.h = mesh.h;
  out.domain_hash = mesh.domain_hash;
  out.fields.resize(2 * mesh.numNodes(), k);
  out.form_values.resize(k);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd full = cm.expand(er.eigenvectors.col(j));
    out.fields.col(j) = full;
    out.form_values[j] = full.dot(fp.form.multiply(full));
  }
  return out;
}

/// Rayleigh quotient of an arbitrary nodal vector field (need not satisfy
/// the tangential constraint).
inline double rayleigh(const VectorFormPair& fp, const Eigen::VectorXd& u) {
  double den = u.dot(fp.mass.multiply(u));
  if (den <= 0) throw PreconditionError("Rayleigh quotient of a zero field");
  return u.dot(fp.form.multiply(u)) / den;
}

inline double rayleigh(const Mesh& mesh, const DomainSpec& spec,
                       const Eigen::VectorXd& u) {
  return rayleigh(assemble_vector_form(mesh, spec), u);
}

/// Flat nodal vector from per-node values.
inline Eigen::VectorXd pack_field(const std::vector<Vec2>& nodal) {
  Eigen::VectorXd u(2 * nodal.size());
  for (size_t i = 0; i < nodal.size(); ++i) {
    u[2 * i] = nodal[i].x;
    u[2 * i + 1] = nodal[i].y;
  }
  return u;
}

inline std::vector<Vec2> unpack_field(const Eigen::VectorXd& u) {
  std::vector<Vec2> nodal(u.size() / 2);
  for (size_t i = 0; i < nodal.size(); ++i)
    nodal[i] = {u[2 * i], u[2 * i + 1]};
  return nodal;
}

}  // namespace specgeom
