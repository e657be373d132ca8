// Command-line front end: domain validation, meshing, eigen-solves and the
// verification studies, emitting JSON reports plus CSV/VTK artifacts.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "specgeom/specgeom.hpp"

namespace fs = std::filesystem;
using namespace specgeom;

namespace {

struct RunConfig {
  std::string domain_file;
  double h = 0.04;
  int levels = 2;
  int k = 4;
  double tol = 0.02;         // match relative tolerance
  double solver_tol = 1e-10;
  uint64_t seed = 0x5EED;
  int budget = 200000;
  std::string out_dir;
  std::string format = "json";
  std::string bc = "neumann";
  bool strict = false;

  void validate() const {
    if (!(h > 0)) throw PreconditionError("h must be positive");
    if (k < 1) throw PreconditionError("k must be at least 1");
    if (levels < 0) throw PreconditionError("levels must be nonnegative");
    if (!(tol > 0) || !(solver_tol > 0))
      throw PreconditionError("tolerances must be positive");
    if (format != "json" && format != "csv")
      throw PreconditionError("format must be json or csv");
  }
};

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

/// Reports are append-only: the file name carries the content hash.
fs::path artifactPath(const RunConfig& cfg, const std::string& kind,
                      const std::string& content, const std::string& ext) {
  return fs::path(cfg.out_dir) / (content_stem(kind, content) + ext);
}

DomainSpec loadDomain(const RunConfig& cfg) {
  return parse_domain(readFile(cfg.domain_file));
}

EigOptions eigOptions(const RunConfig& cfg) {
  EigOptions o;
  o.tol = cfg.solver_tol;
  o.seed = cfg.seed;
  return o;
}

void emitReport(const RunConfig& cfg, const std::string& kind, const Json& j) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!cfg.out_dir.empty())
    writeFile(artifactPath(cfg, kind, text, ".json"), text);
}

int runValidate(const RunConfig& cfg) {
  DomainSpec spec = loadDomain(cfg);
  LipCertificate cert = check_lip(spec, 0.0, true);
  emitReport(cfg, "certificate", certificate_json(cert, spec.hash));
  return 0;
}

int runMesh(const RunConfig& cfg) {
  DomainSpec spec = loadDomain(cfg);
  Mesh mesh = triangulate(spec, cfg.h, {cfg.budget});
  std::string text = write_mesh(mesh);
  std::cout << text;
  if (!cfg.out_dir.empty())
    writeFile(artifactPath(cfg, "mesh", text, ".mesh"), text);
  return 0;
}

int runSolveScalar(const RunConfig& cfg) {
  DomainSpec spec = loadDomain(cfg);
  Mesh mesh = triangulate(spec, cfg.h, {cfg.budget});
  ScalarBC bc = cfg.bc == "dirichlet" ? ScalarBC::Dirichlet : ScalarBC::Neumann;
  ScalarEigenpairs sol = solve_scalar(mesh, bc, cfg.k, eigOptions(cfg));
  Json rep = scalar_report_json(sol, cfg.solver_tol);
  if (cfg.format == "csv")
    std::cout << spectra_csv(sol.eigenvalues, to_string(bc));
  else
    std::cout << rep.dump(2) << "\n";
  if (!cfg.out_dir.empty()) {
    std::string text = rep.dump(2) + "\n";
    writeFile(artifactPath(cfg, "scalar-" + to_string(bc), text, ".json"), text);
    writeFile(fs::path(cfg.out_dir) / ("spectrum-" + to_string(bc) + ".csv"),
              spectra_csv(sol.eigenvalues, to_string(bc)));
    for (int j = 0; j < cfg.k; ++j) {
      std::string tag = to_string(bc) + "-psi" + std::to_string(j + 1);
      writeFile(fs::path(cfg.out_dir) / (tag + ".csv"),
                scalar_field_csv(mesh, sol.fields.col(j)));
      writeFile(fs::path(cfg.out_dir) / (tag + ".vtk"),
                vtk_export(mesh, sol.fields.col(j), tag, false));
    }
  }
  return 0;
}

int runSolveVector(const RunConfig& cfg) {
  DomainSpec spec = loadDomain(cfg);
  Mesh mesh = triangulate(spec, cfg.h, {cfg.budget});
  VectorEigenpairs sol = solve_vector(mesh, spec, cfg.k, eigOptions(cfg));
  VectorEigenpairs adapted = helmholtz_adapted(mesh, sol, cfg.tol);
  std::vector<ClassificationTag> tags;
  for (int j = 0; j < cfg.k; ++j)
    tags.push_back(classify(mesh, spec, adapted.fields.col(j)));
  Json rep = vector_report_json(sol, tags, cfg.solver_tol);
  if (cfg.format == "csv")
    std::cout << spectra_csv(sol.eigenvalues, "vector");
  else
    std::cout << rep.dump(2) << "\n";
  if (!cfg.out_dir.empty()) {
    std::string text = rep.dump(2) + "\n";
    writeFile(artifactPath(cfg, "vector", text, ".json"), text);
    writeFile(fs::path(cfg.out_dir) / "spectrum-vector.csv",
              spectra_csv(sol.eigenvalues, "vector"));
    for (int j = 0; j < cfg.k; ++j) {
      std::string tag = "vector-u" + std::to_string(j + 1);
      writeFile(fs::path(cfg.out_dir) / (tag + ".csv"),
                vector_field_csv(mesh, adapted.fields.col(j)));
      writeFile(fs::path(cfg.out_dir) / (tag + ".vtk"),
                vtk_export(mesh, adapted.fields.col(j), tag, true));
    }
  }
  return 0;
}

int runVerifySpectrum(const RunConfig& cfg) {
  DomainSpec spec = loadDomain(cfg);
  Mesh mesh = triangulate(spec, cfg.h, {cfg.budget});
  EigOptions opts = eigOptions(cfg);
  ScalarEigenpairs neu = solve_scalar(mesh, ScalarBC::Neumann, cfg.k + 2, opts);
  ScalarEigenpairs dir = solve_scalar(mesh, ScalarBC::Dirichlet, cfg.k + 2, opts);
  VectorEigenpairs vec = solve_vector(mesh, spec, cfg.k + 2, opts);
  SpectrumMatchReport match = match_spectra(mesh, spec, vec, neu, dir, cfg.k,
                                            cfg.tol);
  OrderCheck oc = order_check(neu, dir);

  Json j;
  j["domain_hash"] = hex64(spec.hash);
  j["h"] = cfg.h;
  j["spectra"] = {{"neumann", neu.eigenvalues},
                  {"dirichlet", dir.eigenvalues},
                  {"vector", vec.eigenvalues}};
  Json m = match_report_json(match);
  j["matches"] = m["matches"];
  Json cls = Json::array();
  for (const MatchedPair& p : match.pairs) cls.push_back(to_string(p.tag));
  j["classifications"] = cls;
  j["order_check"] = {{"mu2", oc.mu2}, {"lambda1", oc.lambda1},
                      {"gap", oc.gap}, {"pass", oc.pass}};
  j["verdicts"] = {{"match", match.pass},
                   {"tags_consistent", match.tags_consistent},
                   {"order", oc.pass}};
  j["tolerances"] = {{"match_rel", cfg.tol}, {"solver", cfg.solver_tol}};
  j["cluster_width"] = match.cluster_width;
  j["version"] = std::string(kVersion);
  emitReport(cfg, "verify-spectrum", j);
  if (!cfg.out_dir.empty()) {
    writeFile(fs::path(cfg.out_dir) / "spectrum-neumann.csv",
              spectra_csv(neu.eigenvalues, "neumann"));
    writeFile(fs::path(cfg.out_dir) / "spectrum-dirichlet.csv",
              spectra_csv(dir.eigenvalues, "dirichlet"));
    writeFile(fs::path(cfg.out_dir) / "spectrum-vector.csv",
              spectra_csv(vec.eigenvalues, "vector"));
  }
  return (match.pass && match.tags_consistent && oc.pass) ? 0 : 1;
}

int runVerifyHotspots(const RunConfig& cfg) {
  DomainSpec spec = loadDomain(cfg);
  Mesh mesh = triangulate(spec, cfg.h, {cfg.budget});
  ScalarEigenpairs neu = solve_scalar(mesh, ScalarBC::Neumann, 5, eigOptions(cfg));
  HotSpotsReport rep = hotspots_check(spec, mesh, neu, cfg.strict);

  Json j;
  j["domain_hash"] = hex64(spec.hash);
  j["h"] = cfg.h;
  j["hotspots"] = hotspots_report_json(rep);
  if (rep.claim_simple && rep.mu2_cluster_size == 1) {
    AbsMinimizerReport amr = abs_minimizer_check(spec, mesh, neu);
    j["abs_minimizer"] = abs_minimizer_json(amr);
    j["verdicts"] = {{"hotspots", rep.pass}, {"abs_minimizer", amr.pass}};
    j["tolerances"] = {{"solver", cfg.solver_tol}};
    j["version"] = std::string(kVersion);
    emitReport(cfg, "verify-hotspots", j);
    return rep.pass && amr.pass ? 0 : 1;
  }
  j["verdicts"] = {{"hotspots", rep.pass}};
  j["tolerances"] = {{"solver", cfg.solver_tol}};
  j["version"] = std::string(kVersion);
  emitReport(cfg, "verify-hotspots", j);
  return rep.pass ? 0 : 1;
}

int runStudyConvergence(const RunConfig& cfg) {
  DomainSpec spec = loadDomain(cfg);
  EigOptions opts = eigOptions(cfg);
  std::vector<Mesh> meshes;
  meshes.push_back(triangulate(spec, cfg.h, {cfg.budget}));
  for (int l = 0; l < cfg.levels; ++l)
    meshes.push_back(refine(meshes.back(), spec, cfg.budget));

  std::vector<double> hs, mu2s, eta1s;
  for (const Mesh& m : meshes) {
    ScalarEigenpairs neu = solve_scalar(m, ScalarBC::Neumann, 2, opts);
    VectorEigenpairs vec = solve_vector(m, spec, 1, opts);
    hs.push_back(m.h);
    mu2s.push_back(neu.eigenvalues[1]);
    eta1s.push_back(vec.eigenvalues[0]);
  }

  Json j;
  j["domain_hash"] = hex64(spec.hash);
  j["h"] = cfg.h;
  j["levels"] = cfg.levels;
  Json rows = Json::array();
  std::string csv = "level,h,mu2,eta1,mu2_extrapolated,eta1_extrapolated\n";
  for (size_t i = 0; i < meshes.size(); ++i) {
    Json row;
    row["level"] = static_cast<int>(i);
    row["h"] = hs[i];
    row["mu2"] = mu2s[i];
    row["eta1"] = eta1s[i];
    std::string xm = "", xe = "";
    if (i > 0) {
      double em = extrapolate(mu2s[i - 1], mu2s[i]);
      double ee = extrapolate(eta1s[i - 1], eta1s[i]);
      row["mu2_extrapolated"] = em;
      row["eta1_extrapolated"] = ee;
      xm = fmt17(em);
      xe = fmt17(ee);
    }
    rows.push_back(row);
    csv += std::to_string(i) + "," + fmt17(hs[i]) + "," + fmt17(mu2s[i]) + "," +
           fmt17(eta1s[i]) + "," + xm + "," + xe + "\n";
  }
  j["table"] = rows;
  j["tolerances"] = {{"solver", cfg.solver_tol}};
  j["version"] = std::string(kVersion);
  if (cfg.format == "csv")
    std::cout << csv;
  else
    std::cout << j.dump(2) << "\n";
  if (!cfg.out_dir.empty()) {
    std::string text = j.dump(2) + "\n";
    writeFile(artifactPath(cfg, "convergence", text, ".json"), text);
    writeFile(artifactPath(cfg, "convergence", csv, ".csv"), csv);
  }
  return 0;
}

Json errorJson(const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar spectral geometry toolkit: Neumann/Dirichlet spectra, "
               "the curvature-weighted vector form, and hot-spots checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Configuration file (key = value lines)");

  RunConfig cfg;
  if (const char* env = std::getenv("SPECGEOM_OUT")) cfg.out_dir = env;

  app.add_option("--h", cfg.h, "target mesh edge length");
  app.add_option("--k", cfg.k, "number of eigenpairs");
  app.add_option("--tol", cfg.tol, "match relative tolerance");
  app.add_option("--solver-tol", cfg.solver_tol, "eigensolver residual tol");
  app.add_option("--seed", cfg.seed, "root random seed");
  app.add_option("--budget", cfg.budget, "mesh node budget");
  app.add_option("--out", cfg.out_dir, "output directory for artifacts");
  app.add_option("--format", cfg.format, "spectra table format: json|csv");

  auto addDomain = [&](CLI::App* c) {
    c->fallthrough();
    c->add_option("domain", cfg.domain_file, "domain DSL file")->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "geometry + lip checks");
  addDomain(validate);
  CLI::App* mesh = app.add_subcommand("mesh", "triangulate a domain");
  addDomain(mesh);
  CLI::App* solve = app.add_subcommand("solve", "eigen-solves");
  solve->require_subcommand(1);
  solve->fallthrough();
  CLI::App* solve_scalar_cmd = solve->add_subcommand("scalar", "scalar Laplacian");
  addDomain(solve_scalar_cmd);
  solve_scalar_cmd->add_option("--bc", cfg.bc, "neumann|dirichlet");
  CLI::App* solve_vector_cmd = solve->add_subcommand("vector", "vector form");
  addDomain(solve_vector_cmd);
  CLI::App* verify = app.add_subcommand("verify", "verification reports");
  verify->require_subcommand(1);
  verify->fallthrough();
  CLI::App* verify_spectrum = verify->add_subcommand("spectrum",
                                                     "spectrum coincidence");
  addDomain(verify_spectrum);
  CLI::App* verify_hotspots = verify->add_subcommand("hotspots",
                                                     "hot-spots checks");
  addDomain(verify_hotspots);
  verify_hotspots->add_flag("--strict", cfg.strict,
                            "assert all claims, including demoted ones");
  CLI::App* study = app.add_subcommand("study", "parameter studies");
  study->require_subcommand(1);
  study->fallthrough();
  CLI::App* study_conv = study->add_subcommand("convergence",
                                               "eigenvalues across refinements");
  addDomain(study_conv);
  study_conv->add_option("--levels", cfg.levels, "refinement levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0)
      std::cerr << errorJson("usage", e.what()).dump() << "\n";
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    cfg.validate();
    if (validate->parsed()) return runValidate(cfg);
    if (mesh->parsed()) return runMesh(cfg);
    if (solve_scalar_cmd->parsed()) return runSolveScalar(cfg);
    if (solve_vector_cmd->parsed()) return runSolveVector(cfg);
    if (verify_spectrum->parsed()) return runVerifySpectrum(cfg);
    if (verify_hotspots->parsed()) return runVerifyHotspots(cfg);
    if (study_conv->parsed()) return runStudyConvergence(cfg);
    std::cerr << errorJson("usage", "no subcommand").dump() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << errorJson("usage",
                           std::string(e.what()) + " (line " +
                               std::to_string(e.line) + ")")
                     .dump()
              << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << errorJson("usage", e.what()).dump() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << errorJson("usage", e.what()).dump() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << errorJson("numerical", e.what()).dump() << "\n";
    return 3;
  }
}
