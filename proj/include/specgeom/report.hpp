// JSON reports, CSV tables and VTK field exports. Reports embed the domain
// hash, mesh size, solver tolerances and library version, and are named by
// content hash so repeated studies never overwrite evidence.
#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "specgeom/analysis.hpp"
#include "specgeom/core.hpp"
#include "specgeom/fem_scalar.hpp"
#include "specgeom/fem_vector.hpp"
#include "specgeom/geometry.hpp"
#include "specgeom/mesh.hpp"

namespace specgeom {

using Json = nlohmann::ordered_json;

inline Json certificate_json(const LipCertificate& c, uint64_t domain_hash) {
  Json j;
  j["verdict"] = c.verdict == LipVerdict::Lip ? "Lip" : "NotLip";
  j["fixed_verdict"] = c.fixed_verdict == LipVerdict::Lip ? "Lip" : "NotLip";
  j["rotation"] = c.rotation_applied;
  j["searched"] = c.searched;
  j["rectangle"] = c.rectangle;
  j["square"] = c.square;
  Json ranges = Json::array();
  for (const SegmentNormalRange& r : c.normal_ranges) {
    Json e;
    e["segment"] = r.segment;
    e["normal_angle_min"] = r.angle_min;
    e["normal_angle_max"] = r.angle_max;
    e["inside_cone"] = r.inside_cone;
    ranges.push_back(e);
  }
  j["normal_ranges"] = ranges;
  j["violating_segments"] = c.violating_segments;
  j["domain_hash"] = hex64(domain_hash);
  j["version"] = std::string(kVersion);
  return j;
}

inline Json scalar_report_json(const ScalarEigenpairs& s, double solver_tol) {
  Json j;
  j["bc"] = to_string(s.bc);
  j["h"] = s.h;
  j["eigenvalues"] = s.eigenvalues;
  j["residuals"] = s.residuals;
  j["method"] = s.method;
  j["domain_hash"] = hex64(s.domain_hash);
  j["tolerances"] = {{"solver", solver_tol}};
  j["version"] = std::string(kVersion);
  return j;
}

inline Json classification_json(const ClassificationTag& t) {
  Json j;
  j["kind"] = to_string(t.kind);
  j["curl_residual"] = t.curl_residual;
  j["div_residual"] = t.div_residual;
  j["normal_trace_norm"] = t.normal_trace_norm;
  j["field_norm"] = t.field_norm;
  return j;
}

inline Json vector_report_json(const VectorEigenpairs& v,
                               const std::vector<ClassificationTag>& tags,
                               double solver_tol) {
  Json j;
  j["h"] = v.h;
  j["eigenvalues"] = v.eigenvalues;
  j["form_values"] = v.form_values;
  j["residuals"] = v.residuals;
  j["method"] = v.method;
  Json cls = Json::array();
  for (const ClassificationTag& t : tags) cls.push_back(classification_json(t));
  j["classifications"] = cls;
  j["domain_hash"] = hex64(v.domain_hash);
  j["tolerances"] = {{"solver", solver_tol}};
  j["version"] = std::string(kVersion);
  return j;
}

inline Json match_report_json(const SpectrumMatchReport& m) {
  Json j;
  j["rel_tol"] = m.rel_tol;
  j["cluster_width"] = m.cluster_width;
  Json pairs = Json::array();
  for (const MatchedPair& p : m.pairs) {
    Json e;
    e["vector_value"] = p.vector_value;
    e["scalar_value"] = p.scalar.value;
    e["source"] = to_string(p.scalar.source);
    e["scalar_index"] = p.scalar.index;
    e["rel_gap"] = p.rel_gap;
    e["classification"] = to_string(p.tag);
    e["tag_consistent"] = p.tag_consistent;
    pairs.push_back(e);
  }
  j["matches"] = pairs;
  Json us = Json::array();
  for (const SpectrumEntry& s : m.unmatched_scalar)
    us.push_back({{"value", s.value},
                  {"source", to_string(s.source)},
                  {"index", s.index}});
  j["unmatched_scalar"] = us;
  j["unmatched_vector"] = m.unmatched_vector;
  j["clusters"] = m.clusters;
  j["tags_consistent"] = m.tags_consistent;
  j["pass"] = m.pass;
  return j;
}

inline Json hotspots_report_json(const HotSpotsReport& r) {
  Json j;
  j["lip"] = {{"verdict", r.lip.verdict == LipVerdict::Lip ? "Lip" : "NotLip"},
              {"rectangle", r.lip.rectangle},
              {"square", r.lip.square}};
  j["h"] = r.h;
  j["mu2"] = r.mu2;
  j["mu2_cluster_size"] = r.mu2_cluster_size;
  j["cluster_width"] = r.cluster_width;
  j["square_exception"] = r.square_exception;
  j["v0"] = {r.v0.x, r.v0.y};
  j["v1"] = {r.v1.x, r.v1.y};
  j["v0_unique"] = r.v0_unique;
  j["v1_unique"] = r.v1_unique;
  j["psi_v0"] = r.psi_v0;
  j["psi_v1"] = r.psi_v1;
  j["sign_well_defined"] = r.sign_well_defined;
  j["min_deriv_plus"] = r.min_deriv_plus;
  j["min_deriv_minus"] = r.min_deriv_minus;
  j["tested_barycenters"] = r.tested_barycenters;
  j["argmin"] = {r.argmin.x, r.argmin.y};
  j["argmax"] = {r.argmax.x, r.argmax.y};
  j["argmin_on_boundary"] = r.argmin_on_boundary;
  j["argmax_on_boundary"] = r.argmax_on_boundary;
  j["argmin_dist_v0"] = r.argmin_dist_v0;
  j["argmax_dist_v1"] = r.argmax_dist_v1;
  j["corollary_applicable"] = r.corollary_applicable;
  j["claims"] = {{"simple", r.claim_simple},
                 {"monotone", r.claim_monotone},
                 {"monotone_asserted", r.monotone_asserted},
                 {"monotone_strict", r.monotone_strict},
                 {"extrema", r.claim_extrema},
                 {"extrema_asserted", r.extrema_asserted}};
  j["pass"] = r.pass;
  return j;
}

inline Json abs_minimizer_json(const AbsMinimizerReport& r) {
  Json j;
  j["mu2"] = r.mu2;
  j["rayleigh"] = r.rayleigh_value;
  j["rel_err"] = r.rel_err;
  j["min_sign_product"] = r.min_sign_product;
  j["sign_ok"] = r.sign_ok;
  j["rayleigh_ok"] = r.rayleigh_ok;
  j["pass"] = r.pass;
  return j;
}

// ---------------------------------------------------------------------------
// CSV and VTK field exports.

inline std::string scalar_field_csv(const Mesh& mesh,
                                    const Eigen::VectorXd& field) {
  std::string out = "node,x,y,value\n";
  for (int i = 0; i < mesh.numNodes(); ++i)
    out += std::to_string(i) + "," + fmt17(mesh.nodes[i].x) + "," +
           fmt17(mesh.nodes[i].y) + "," + fmt17(field[i]) + "\n";
  return out;
}

inline std::string vector_field_csv(const Mesh& mesh,
                                    const Eigen::VectorXd& field) {
  std::string out = "node,x,y,u1,u2\n";
  for (int i = 0; i < mesh.numNodes(); ++i)
    out += std::to_string(i) + "," + fmt17(mesh.nodes[i].x) + "," +
           fmt17(mesh.nodes[i].y) + "," + fmt17(field[2 * i]) + "," +
           fmt17(field[2 * i + 1]) + "\n";
  return out;
}

/// Legacy-ASCII VTK unstructured grid with one point-data array. Vector
/// fields carry two components (third set to zero).
inline std::string vtk_export(const Mesh& mesh, const Eigen::VectorXd& field,
                              const std::string& name, bool vector_field) {
  std::string out = "# vtk DataFile Version 3.0\n";
  out += name + "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out += "POINTS " + std::to_string(mesh.numNodes()) + " double\n";
  for (const Vec2& p : mesh.nodes)
    out += fmt17(p.x) + " " + fmt17(p.y) + " 0\n";
  out += "CELLS " + std::to_string(mesh.numTriangles()) + " " +
         std::to_string(4 * mesh.numTriangles()) + "\n";
  for (const auto& t : mesh.triangles)
    out += "3 " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
           std::to_string(t[2]) + "\n";
  out += "CELL_TYPES " + std::to_string(mesh.numTriangles()) + "\n";
  for (int t = 0; t < mesh.numTriangles(); ++t) out += "5\n";
  out += "POINT_DATA " + std::to_string(mesh.numNodes()) + "\n";
  if (vector_field) {
    out += "VECTORS " + name + " double\n";
    for (int i = 0; i < mesh.numNodes(); ++i)
      out += fmt17(field[2 * i]) + " " + fmt17(field[2 * i + 1]) + " 0\n";
  } else {
    out += "SCALARS " + name + " double 1\nLOOKUP_TABLE default\n";
    for (int i = 0; i < mesh.numNodes(); ++i) out += fmt17(field[i]) + "\n";
  }
  return out;
}

inline std::string spectra_csv(const std::vector<double>& values,
                               const std::string& label) {
  std::string out = "index," + label + "\n";
  for (size_t i = 0; i < values.size(); ++i)
    out += std::to_string(i + 1) + "," + fmt17(values[i]) + "\n";
  return out;
}

/// Content-hash file stem for append-only artifacts.
inline std::string content_stem(const std::string& kind,
                                const std::string& content) {
  return kind + "-" + hex64(fnv1a64(content));
}

}  // namespace specgeom
