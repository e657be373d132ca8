// Verification layer: Helmholtz-type classification of vector eigenfields,
// spectrum matching against the merged Neumann + Dirichlet list, min-max
// spot checks, Richardson extrapolation, and the hot-spots checks.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "specgeom/core.hpp"
#include "specgeom/eigensolver.hpp"
#include "specgeom/fem_scalar.hpp"
#include "specgeom/fem_vector.hpp"
#include "specgeom/geometry.hpp"
#include "specgeom/mesh.hpp"
#include "specgeom/triangulate.hpp"

namespace specgeom {

// ---------------------------------------------------------------------------
// Classification of vector fields into the Helmholtz sectors.

enum class FieldClass { GradientType, PerpGradientType, Mixed };

inline std::string to_string(FieldClass c) {
  switch (c) {
    case FieldClass::GradientType: return "gradient";
    case FieldClass::PerpGradientType: return "perp-gradient";
    default: return "mixed";
  }
}

struct ClassificationTag {
  FieldClass kind = FieldClass::Mixed;
  double curl_residual = 0;      // ||d1 u2 - d2 u1|| / ||grad u||
  double div_residual = 0;       // ||div u|| / ||grad u||
  double normal_trace_norm = 0;  // L2(boundary) norm of <u, nu>
  double field_norm = 0;         // L2(Omega) norm of u
};

/// L2(boundary) norm of the normal trace <u, nu>, with nu taken from the
/// exact source segments and the P1 trace of u along each edge.
inline double normal_trace_norm(const Mesh& mesh, const DomainSpec& spec,
                                const std::vector<Vec2>& nodal) {
  double acc = 0;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    const BoundarySegment& seg = spec.segments[e.segment];
    double len = e.s1 - e.s0;
    for (int g = 0; g < 3; ++g) {
      double t = detail::kGauss3X[g];
      Vec2 u = nodal[e.n0] * (1 - t) + nodal[e.n1] * t;
      Vec2 nu = seg.outerNormal(e.s0 + t * len);
      acc += detail::kGauss3W[g] * len * dot(u, nu) * dot(u, nu);
    }
  }
  return std::sqrt(acc);
}

inline ClassificationTag classify(const Mesh& mesh, const DomainSpec& spec,
                                  const Eigen::VectorXd& u) {
  const int nt = mesh.numTriangles();
  Eigen::VectorXd u1(mesh.numNodes()), u2(mesh.numNodes());
  for (int i = 0; i < mesh.numNodes(); ++i) {
    u1[i] = u[2 * i];
    u2[i] = u[2 * i + 1];
  }
  double curl2 = 0, div2 = 0, grad2 = 0, mass2 = 0;
  for (int t = 0; t < nt; ++t) {
    double a = mesh.triangleArea(t);
    Vec2 g1 = p1_gradient(mesh, u1, t);
    Vec2 g2 = p1_gradient(mesh, u2, t);
    double curl = g2.x - g1.y;  // d1 u2 - d2 u1
    double div = g1.x + g2.y;
    curl2 += a * curl * curl;
    div2 += a * div * div;
    grad2 += a * (g1.norm2() + g2.norm2());
    const auto& tr = mesh.triangles[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double m = a / 12.0 * (i == j ? 2.0 : 1.0);
        mass2 += m * (u1[tr[i]] * u1[tr[j]] + u2[tr[i]] * u2[tr[j]]);
      }
  }
  ClassificationTag tag;
  tag.field_norm = std::sqrt(std::max(mass2, 0.0));
  if (tag.field_norm == 0) throw PreconditionError("classify: zero field");
  double gr = std::sqrt(grad2);
  tag.curl_residual = gr > 1e-14 * tag.field_norm ? std::sqrt(curl2) / gr : 0;
  tag.div_residual = gr > 1e-14 * tag.field_norm ? std::sqrt(div2) / gr : 0;
  tag.normal_trace_norm = normal_trace_norm(mesh, spec, unpack_field(u));

  if (tag.curl_residual < 0.1 && tag.div_residual >= tag.curl_residual)
    tag.kind = FieldClass::GradientType;
  else if (tag.div_residual < 0.1 &&
           tag.normal_trace_norm < 0.1 * tag.field_norm)
    tag.kind = FieldClass::PerpGradientType;
  else
    tag.kind = FieldClass::Mixed;
  return tag;
}

// ---------------------------------------------------------------------------
// Cluster-adapted eigenfield bases.
//
// Inside a near-degenerate eigenvalue cluster the discrete eigenvectors are an
// arbitrary basis of the cluster subspace; when the cluster straddles both
// Helmholtz sectors (e.g. a Neumann and a Dirichlet eigenvalue coincide in the
// continuum) the raw vectors mix the sectors. Diagonalizing the curl energy on
// the cluster span recovers sector-adapted representatives.

inline VectorEigenpairs helmholtz_adapted(const Mesh& mesh,
                                          const VectorEigenpairs& vec,
                                          double rel_width = 0.02) {
  VectorEigenpairs out = vec;
  const int k = static_cast<int>(vec.eigenvalues.size());
  const int nt = mesh.numTriangles();
  int lo = 0;
  while (lo < k) {
    int hi = lo;
    while (hi + 1 < k &&
           vec.eigenvalues[hi + 1] - vec.eigenvalues[lo] <=
               rel_width * std::max(std::abs(vec.eigenvalues[lo]), 1e-12))
      ++hi;
    if (hi > lo) {
      const int q = hi - lo + 1;
      // Per-triangle curls of the cluster fields.
      Eigen::MatrixXd curls(nt, q);
      Eigen::VectorXd areas(nt);
      for (int t = 0; t < nt; ++t) areas[t] = mesh.triangleArea(t);
      for (int c = 0; c < q; ++c) {
        Eigen::VectorXd u1(mesh.numNodes()), u2(mesh.numNodes());
        for (int i = 0; i < mesh.numNodes(); ++i) {
          u1[i] = vec.fields(2 * i, lo + c);
          u2[i] = vec.fields(2 * i + 1, lo + c);
        }
        for (int t = 0; t < nt; ++t)
          curls(t, c) = p1_gradient(mesh, u2, t).x - p1_gradient(mesh, u1, t).y;
      }
      Eigen::MatrixXd C = curls.transpose() * areas.asDiagonal() * curls;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
      Eigen::MatrixXd W = es.eigenvectors();  // ascending curl energy
      out.fields.middleCols(lo, q) = vec.fields.middleCols(lo, q) * W;
      for (int c = 0; c < q; ++c) {
        double fv = 0, res = 0;
        for (int i = 0; i < q; ++i) {
          fv += W(i, c) * W(i, c) * vec.eigenvalues[lo + i];
          res = std::max(res, vec.residuals[lo + i]);
        }
        out.form_values[lo + c] = fv;
        out.residuals[lo + c] =
            res + (vec.eigenvalues[hi] - vec.eigenvalues[lo]);
      }
    }
    lo = hi + 1;
  }
  detail::applySignConvention(out.fields);
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum matching (the vector spectrum against merged Neumann + Dirichlet).

struct SpectrumEntry {
  double value = 0;
  ScalarBC source = ScalarBC::Neumann;
  int index = 0;  // k for mu_k (1-based physics numbering) or lambda_k
};

struct MatchedPair {
  double vector_value = 0;
  SpectrumEntry scalar;
  double rel_gap = 0;
  FieldClass tag = FieldClass::Mixed;
  bool tag_consistent = false;
};

struct SpectrumMatchReport {
  std::vector<MatchedPair> pairs;
  std::vector<SpectrumEntry> unmatched_scalar;
  std::vector<double> unmatched_vector;
  std::vector<std::vector<int>> clusters;  // pair indices, width 1e-3
  double rel_tol = 0;
  double cluster_width = 1e-3;
  bool pass = false;
  bool tags_consistent = false;
};

inline SpectrumMatchReport match_spectra(const Mesh& mesh,
                                         const DomainSpec& spec,
                                         const VectorEigenpairs& vec,
                                         const ScalarEigenpairs& neu,
                                         const ScalarEigenpairs& dir, int K,
                                         double rel_tol) {
  if (neu.eigenvalues.empty() || dir.eigenvalues.empty() ||
      vec.eigenvalues.empty())
    throw PreconditionError("match_spectra: empty spectra");
  if (std::abs(neu.eigenvalues[0]) > 1e-6)
    throw PreconditionError("match_spectra: Neumann list lacks the zero mode");

  SpectrumMatchReport rep;
  rep.rel_tol = rel_tol;

  // Merge all available scalar entries; the first K are the match targets,
  // but attribution inside a tolerance-cluster may borrow a source label from
  // a cluster member just past the cutoff.
  std::vector<SpectrumEntry> merged;
  for (size_t i = 1; i < neu.eigenvalues.size(); ++i)
    merged.push_back({neu.eigenvalues[i], ScalarBC::Neumann,
                      static_cast<int>(i + 1)});
  for (size_t i = 0; i < dir.eigenvalues.size(); ++i)
    merged.push_back({dir.eigenvalues[i], ScalarBC::Dirichlet,
                      static_cast<int>(i + 1)});
  std::stable_sort(merged.begin(), merged.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) {
                     return a.value < b.value;
                   });

  const int nall = static_cast<int>(merged.size());
  const int ns = std::min(K, nall);
  const int nv = std::min<int>(K, static_cast<int>(vec.eigenvalues.size()));
  const int npairs = std::min(nv, ns);

  VectorEigenpairs adapted = helmholtz_adapted(mesh, vec, rel_tol);
  std::vector<FieldClass> tags(nv);
  for (int j = 0; j < nv; ++j)
    tags[j] = classify(mesh, spec, adapted.fields.col(j)).kind;

  // Positional pairing of the two sorted lists, then reattribution of scalar
  // sources inside tolerance-clusters so classification decides ambiguity.
  std::vector<int> assign(npairs);
  int lo = 0;
  while (lo < npairs) {
    int hi = lo;  // cluster extends over merged entries, possibly past K
    while (hi + 1 < nall &&
           merged[hi + 1].value <= merged[lo].value * (1 + rel_tol))
      ++hi;
    int pair_hi = std::min(hi, npairs - 1);
    std::vector<int> nslots, dslots;
    for (int i = lo; i <= hi; ++i)
      (merged[i].source == ScalarBC::Neumann ? nslots : dslots).push_back(i);
    std::vector<int> rest;
    for (int i = lo; i <= pair_hi; ++i) {
      std::vector<int>* want =
          tags[i] == FieldClass::GradientType       ? &nslots
          : tags[i] == FieldClass::PerpGradientType ? &dslots
                                                    : nullptr;
      if (want && !want->empty()) {
        assign[i] = want->front();
        want->erase(want->begin());
      } else {
        rest.push_back(i);
      }
    }
    std::vector<int> leftovers = nslots;
    leftovers.insert(leftovers.end(), dslots.begin(), dslots.end());
    std::sort(leftovers.begin(), leftovers.end());
    for (size_t r = 0; r < rest.size(); ++r) assign[rest[r]] = leftovers[r];
    lo = pair_hi + 1;
  }

  rep.pass = npairs == K && ns == K && nv == K;
  rep.tags_consistent = true;
  for (int i = 0; i < npairs; ++i) {
    MatchedPair p;
    p.vector_value = vec.eigenvalues[i];
    p.scalar = merged[assign[i]];
    p.rel_gap = std::abs(p.vector_value - p.scalar.value) / p.scalar.value;
    p.tag = tags[i];
    p.tag_consistent =
        (p.scalar.source == ScalarBC::Neumann &&
         p.tag == FieldClass::GradientType) ||
        (p.scalar.source == ScalarBC::Dirichlet &&
         p.tag == FieldClass::PerpGradientType);
    // The positional target must also agree in value.
    double pos_gap =
        std::abs(p.vector_value - merged[i].value) / merged[i].value;
    if (p.rel_gap > rel_tol || pos_gap > rel_tol) rep.pass = false;
    if (!p.tag_consistent) rep.tags_consistent = false;
    rep.pairs.push_back(p);
  }
  for (int i = npairs; i < ns; ++i) rep.unmatched_scalar.push_back(merged[i]);
  for (int i = npairs; i < nv; ++i)
    rep.unmatched_vector.push_back(vec.eigenvalues[i]);
  if (!rep.unmatched_scalar.empty() || !rep.unmatched_vector.empty())
    rep.pass = false;

  // Cluster structure of the matched scalar values at width 1e-3.
  lo = 0;
  while (lo < npairs) {
    int hi = lo;
    while (hi + 1 < npairs && rep.pairs[hi + 1].scalar.value <=
                                  rep.pairs[lo].scalar.value *
                                      (1 + rep.cluster_width))
      ++hi;
    std::vector<int> group;
    for (int i = lo; i <= hi; ++i) group.push_back(i);
    rep.clusters.push_back(group);
    lo = hi + 1;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// mu2 < lambda1.

struct OrderCheck {
  double mu2 = 0, lambda1 = 0, gap = 0;
  bool pass = false;
};

inline OrderCheck order_check(const ScalarEigenpairs& neu,
                              const ScalarEigenpairs& dir) {
  if (neu.eigenvalues.size() < 2 || dir.eigenvalues.empty())
    throw PreconditionError("order_check needs mu2 and lambda1");
  OrderCheck oc;
  oc.mu2 = neu.eigenvalues[1];
  oc.lambda1 = dir.eigenvalues[0];
  oc.gap = oc.lambda1 - oc.mu2;
  oc.pass = oc.gap > 0;
  return oc;
}

// ---------------------------------------------------------------------------
// One-sided discrete Courant-Fischer spot check.

struct MinMaxCheck {
  int j = 0;
  int trials = 0;
  double min_margin = 0;  // min over trials of (max Rayleigh on F) - eta_j
  bool pass = false;
};

inline MinMaxCheck minmax_bound_check(const SparseSym& A, const SparseSym& B,
                                      const std::vector<double>& etas, int j,
                                      int trials, uint64_t seed = 0x5EED,
                                      double tol = 1e-8) {
  if (j < 1 || j > static_cast<int>(etas.size()))
    throw PreconditionError("minmax_bound_check: j out of range");
  const int n = A.dim();
  MinMaxCheck mc;
  mc.j = j;
  mc.trials = trials;
  mc.min_margin = 1e300;
  double eta_j = etas[j - 1];
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed + 7919 * trial + j);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd F(n, j);
    for (int c = 0; c < j; ++c)
      for (int r = 0; r < n; ++r) F(r, c) = gauss(rng);
    Eigen::MatrixXd AF(n, j), BF(n, j);
    for (int c = 0; c < j; ++c) {
      AF.col(c) = A.multiply(F.col(c));
      BF.col(c) = B.multiply(F.col(c));
    }
    Eigen::MatrixXd Ai = F.transpose() * AF, Bi = F.transpose() * BF;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ai, Bi);
    double max_rayleigh = es.eigenvalues()(j - 1);
    mc.min_margin = std::min(mc.min_margin, max_rayleigh - eta_j);
  }
  mc.pass = mc.min_margin >= -tol * (std::abs(eta_j) + 1);
  return mc;
}

// ---------------------------------------------------------------------------
// Richardson extrapolation.

inline double extrapolate(double coarse, double fine, int order = 2) {
  double denom = std::pow(2.0, order) - 1.0;
  return fine + (fine - coarse) / denom;
}

// ---------------------------------------------------------------------------
// Hot spots checks.

inline constexpr Vec2 kDiagPlus{0.7071067811865476, 0.7071067811865476};
inline constexpr Vec2 kDiagMinus{0.7071067811865476, -0.7071067811865476};

struct HotSpotsReport {
  LipCertificate lip;
  double h = 0;
  double mu2 = 0;
  int mu2_cluster_size = 1;
  double cluster_width = 1e-3;
  bool square_exception = false;  // degenerate mu2 on a square, as predicted

  Vec2 v0, v1;
  bool v0_unique = true, v1_unique = true;
  double psi_v0 = 0, psi_v1 = 0;
  bool sign_well_defined = true;

  double min_deriv_plus = 0;   // along (e1+e2)/sqrt(2), tested barycenters
  double min_deriv_minus = 0;  // along (e1-e2)/sqrt(2)
  int tested_barycenters = 0;

  Vec2 argmin, argmax;
  bool argmin_on_boundary = false, argmax_on_boundary = false;
  double argmin_dist_v0 = 0, argmax_dist_v1 = 0;
  bool corollary_applicable = false;

  bool monotone_strict = true;   // strict positivity vs demoted nonnegativity
  bool claim_simple = false;     // asserted unless square degeneracy expected
  bool claim_monotone = false;
  bool monotone_asserted = false;
  bool claim_extrema = false;
  bool extrema_asserted = false;
  bool pass = false;
};

/// True if some straight boundary piece is parallel to e1+e2 or e1-e2.
inline bool has_diagonal_boundary_piece(const DomainSpec& spec) {
  for (const BoundarySegment& s : spec.segments) {
    if (s.isArc()) continue;
    Vec2 d = s.tangent(0);
    if (std::abs(std::abs(dot(d, kDiagPlus)) - 1) < 1e-9 ||
        std::abs(std::abs(dot(d, kDiagMinus)) - 1) < 1e-9)
      return true;
  }
  return false;
}

inline HotSpotsReport hotspots_check(const DomainSpec& spec, const Mesh& mesh,
                                     const ScalarEigenpairs& neu,
                                     bool strict = false) {
  HotSpotsReport rep;
  rep.lip = check_lip(spec, 0.0, false);
  if (rep.lip.verdict != LipVerdict::Lip)
    throw PreconditionError("domain is not a lip domain");
  if (neu.bc != ScalarBC::Neumann || neu.eigenvalues.size() < 3)
    throw PreconditionError("hotspots_check needs >= 3 Neumann eigenpairs");
  rep.h = mesh.h;
  rep.mu2 = neu.eigenvalues[1];

  rep.mu2_cluster_size = 1;
  for (size_t i = 2; i < neu.eigenvalues.size(); ++i)
    if ((neu.eigenvalues[i] - rep.mu2) / rep.mu2 <= rep.cluster_width)
      ++rep.mu2_cluster_size;

  ExtremePoints ex = boundary_extremes(spec);
  rep.v0 = ex.leftmost;
  rep.v1 = ex.rightmost;
  rep.v0_unique = ex.leftmost_unique;
  rep.v1_unique = ex.rightmost_unique;

  if (rep.mu2_cluster_size > 1) {
    if (rep.lip.square) {
      rep.square_exception = true;
      rep.claim_simple = true;  // degeneracy is the predicted outcome
      rep.pass = true;
    } else {
      rep.claim_simple = false;
      rep.pass = false;
    }
    return rep;
  }
  rep.claim_simple = true;

  Eigen::VectorXd psi = neu.fields.col(1);

  auto nearestNode = [&](Vec2 p) {
    int best = 0;
    double bd = 1e300;
    for (int i = 0; i < mesh.numNodes(); ++i) {
      double d = dist(mesh.nodes[i], p);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    return best;
  };
  int n0 = nearestNode(rep.v0), n1 = nearestNode(rep.v1);
  rep.psi_v0 = psi[n0];
  rep.psi_v1 = psi[n1];
  double amp = psi.cwiseAbs().maxCoeff();
  rep.sign_well_defined = std::abs(rep.psi_v1 - rep.psi_v0) > 1e-8 * amp;
  if (rep.psi_v1 < rep.psi_v0) {
    psi = -psi;
    rep.psi_v0 = -rep.psi_v0;
    rep.psi_v1 = -rep.psi_v1;
  }

  // Directional derivatives at interior barycenters (> 2h from the boundary).
  std::vector<Vec2> bpoly;
  for (const BoundaryEdge& e : mesh.boundary_edges)
    bpoly.push_back(mesh.nodes[e.n0]);
  rep.min_deriv_plus = rep.min_deriv_minus = 1e300;
  rep.tested_barycenters = 0;
  for (int t = 0; t < mesh.numTriangles(); ++t) {
    const auto& tr = mesh.triangles[t];
    Vec2 bc = (mesh.nodes[tr[0]] + mesh.nodes[tr[1]] + mesh.nodes[tr[2]]) / 3.0;
    if (detail::distToPolyline(bpoly, bc) <= 2 * mesh.h) continue;
    Vec2 g = p1_gradient(mesh, psi, t);
    rep.min_deriv_plus = std::min(rep.min_deriv_plus, dot(g, kDiagPlus));
    rep.min_deriv_minus = std::min(rep.min_deriv_minus, dot(g, kDiagMinus));
    ++rep.tested_barycenters;
  }
  if (rep.tested_barycenters == 0)
    rep.min_deriv_plus = rep.min_deriv_minus = 0;

  // Theorem 1.2(ii) excludes rectangles; there the claim is demoted to
  // nonnegativity within -1e-8.
  rep.monotone_strict = strict || !rep.lip.rectangle;
  if (rep.monotone_strict)
    rep.claim_monotone = rep.tested_barycenters > 0 &&
                         rep.min_deriv_plus > 0 && rep.min_deriv_minus > 0;
  else
    rep.claim_monotone = rep.tested_barycenters > 0 &&
                         rep.min_deriv_plus >= -1e-8 &&
                         rep.min_deriv_minus >= -1e-8;
  rep.monotone_asserted = true;

  // Extremum locations.
  int imin = 0, imax = 0;
  for (int i = 1; i < mesh.numNodes(); ++i) {
    if (psi[i] < psi[imin]) imin = i;
    if (psi[i] > psi[imax]) imax = i;
  }
  rep.argmin = mesh.nodes[imin];
  rep.argmax = mesh.nodes[imax];
  rep.argmin_on_boundary = mesh.is_boundary_node[imin] != 0;
  rep.argmax_on_boundary = mesh.is_boundary_node[imax] != 0;
  rep.argmin_dist_v0 = dist(rep.argmin, rep.v0);
  rep.argmax_dist_v1 = dist(rep.argmax, rep.v1);
  rep.corollary_applicable = rep.v0_unique && rep.v1_unique &&
                             !has_diagonal_boundary_piece(spec);
  rep.claim_extrema = rep.argmin_on_boundary && rep.argmax_on_boundary &&
                      rep.argmin_dist_v0 <= mesh.h + 1e-12 &&
                      rep.argmax_dist_v1 <= mesh.h + 1e-12;
  rep.extrema_asserted = rep.corollary_applicable || strict;

  rep.pass = rep.claim_simple && (!rep.monotone_asserted || rep.claim_monotone) &&
             (!rep.extrema_asserted || rep.claim_extrema);
  return rep;
}

inline HotSpotsReport hotspots_check(const DomainSpec& spec, double h,
                                     bool strict = false,
                                     const EigOptions& opts = {}) {
  Mesh mesh = triangulate(spec, h);
  ScalarEigenpairs neu = solve_scalar(mesh, ScalarBC::Neumann, 5, opts);
  return hotspots_check(spec, mesh, neu, strict);
}

// ---------------------------------------------------------------------------
// Minimizer identity: the Rayleigh quotient of the recovered gradient of the
// first nontrivial Neumann eigenfunction reproduces mu2. The recovered field
// is projected onto the tangential constraint, which the continuum gradient
// satisfies exactly.

struct MinimizerIdentity {
  double mu2 = 0;
  double rayleigh_value = 0;
  double rel_err = 0;
};

inline MinimizerIdentity minimizer_identity_check(const DomainSpec& spec,
                                                  const Mesh& mesh,
                                                  const ScalarEigenpairs& neu) {
  if (neu.eigenvalues.size() < 2)
    throw PreconditionError("minimizer identity needs mu2");
  MinimizerIdentity mi;
  mi.mu2 = neu.eigenvalues[1];
  std::vector<Vec2> u = recover_gradient(mesh, neu.fields.col(1));
  ConstraintMap cm = build_tangential_constraint(mesh, spec);
  cm.project(u);
  mi.rayleigh_value = rayleigh(mesh, spec, pack_field(u));
  mi.rel_err = std::abs(mi.rayleigh_value - mi.mu2) / mi.mu2;
  return mi;
}

// ---------------------------------------------------------------------------
// Absolute-value minimizer check.
//
// In coordinates rotated by pi/4 (where the lip condition reads
// nu1 * nu2 <= 0), the diagonal components w± = <u, (e1 ± e2)/sqrt(2)> of a
// constrained field satisfy w+ w- >= 0 on the boundary, and the field with
// components (|w-|, |w+|) stays admissible with the same Rayleigh quotient up
// to recovery error.

struct AbsMinimizerReport {
  double mu2 = 0;
  double rayleigh_value = 0;
  double rel_err = 0;
  double min_sign_product = 0;  // min over boundary quadrature points of w+ w-
  bool sign_ok = false;
  bool rayleigh_ok = false;
  bool pass = false;
};

inline AbsMinimizerReport abs_minimizer_check(const DomainSpec& spec,
                                              const Mesh& mesh,
                                              const ScalarEigenpairs& neu) {
  LipCertificate lip = check_lip(spec, 0.0, false);
  if (lip.verdict != LipVerdict::Lip)
    throw PreconditionError("domain is not a lip domain");
  if (neu.eigenvalues.size() < 3)
    throw PreconditionError("abs_minimizer_check needs >= 3 Neumann pairs");
  double mu2 = neu.eigenvalues[1];
  if ((neu.eigenvalues[2] - mu2) / mu2 <= 1e-3)
    throw PreconditionError("abs_minimizer_check requires a simple mu2");

  AbsMinimizerReport rep;
  rep.mu2 = mu2;

  std::vector<Vec2> u = recover_gradient(mesh, neu.fields.col(1));
  ConstraintMap cm = build_tangential_constraint(mesh, spec);
  cm.project(u);

  // Boundary sign identity at quadrature points.
  rep.min_sign_product = 1e300;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    for (int g = 0; g < 3; ++g) {
      double t = detail::kGauss3X[g];
      Vec2 uu = u[e.n0] * (1 - t) + u[e.n1] * t;
      double wp = dot(uu, kDiagPlus), wm = dot(uu, kDiagMinus);
      rep.min_sign_product = std::min(rep.min_sign_product, wp * wm);
    }
  }
  rep.sign_ok = rep.min_sign_product >= -1e-8;

  std::vector<Vec2> v(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    double wp = dot(u[i], kDiagPlus), wm = dot(u[i], kDiagMinus);
    v[i] = kDiagMinus * std::abs(wm) + kDiagPlus * std::abs(wp);
  }
  cm.project(v);

  VectorFormPair fp = assemble_vector_form(mesh, spec);
  rep.rayleigh_value = rayleigh(fp, pack_field(v));
  rep.rel_err = std::abs(rep.rayleigh_value - mu2) / mu2;
  rep.rayleigh_ok = rep.rel_err <= 0.05;
  rep.pass = rep.sign_ok && rep.rayleigh_ok;
  return rep;
}

}  // namespace specgeom
