#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "oracles.hpp"
#include "specgeom/eigensolver.hpp"
#include "specgeom/sparse.hpp"

using namespace specgeom;
using Catch::Approx;

namespace {

SparseSym diag(const std::vector<double>& d) {
  SparseSym m(static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.add(static_cast<int>(i), static_cast<int>(i), d[i]);
  return m;
}

SparseSym identity(int n) {
  SparseSym m(n);
  for (int i = 0; i < n; ++i) m.add(i, i, 1.0);
  return m;
}

SparseSym tridiag(int n, double d, double off) {
  SparseSym m(n);
  for (int i = 0; i < n; ++i) {
    m.add(i, i, d);
    if (i + 1 < n) m.add(i + 1, i, off);
  }
  return m;
}

}  // namespace

TEST_CASE("diagonal generalized problems") {
  EigResult r = gen_sym_eig(diag({1, 2, 3}), identity(3), 3);
  CHECK(r.eigenvalues[0] == Approx(1.0).margin(1e-12));
  CHECK(r.eigenvalues[1] == Approx(2.0).margin(1e-12));
  CHECK(r.eigenvalues[2] == Approx(3.0).margin(1e-12));

  EigResult r2 = gen_sym_eig(diag({2, 2}), diag({2, 1}), 2);
  CHECK(r2.eigenvalues[0] == Approx(1.0).margin(1e-12));
  CHECK(r2.eigenvalues[1] == Approx(2.0).margin(1e-12));
}

TEST_CASE("Toeplitz stiffness against the closed form") {
  SparseSym A = tridiag(50, 2.0, -1.0);
  SparseSym B = identity(50);
  double expected = oracles::toeplitzSmallest(50);

  EigOptions dense;
  dense.method = EigMethod::Dense;
  CHECK(gen_sym_eig(A, B, 1, dense).eigenvalues[0] ==
        Approx(expected).margin(1e-10));

  EigOptions lanczos;
  lanczos.method = EigMethod::ShiftInvertLanczos;
  CHECK(gen_sym_eig(A, B, 1, lanczos).eigenvalues[0] ==
        Approx(expected).margin(1e-10));
}

TEST_CASE("solve_spd") {
  Eigen::VectorXd rhs(3);
  rhs << 1, 2, 3;
  CHECK((solve_spd(identity(3), rhs) - rhs).norm() <= 1e-12);

  Eigen::VectorXd one(1);
  one << 8;
  CHECK(solve_spd(diag({4}), one)[0] == Approx(2.0).margin(1e-12));

  SparseSym B = tridiag(100, 2.0, -1.0);
  Eigen::VectorXd x = solve_spd(B, B.multiply(Eigen::VectorXd::Ones(100)));
  CHECK((x - Eigen::VectorXd::Ones(100)).norm() <= 1e-10 * 10);
}

TEST_CASE("non-SPD B is reported") {
  REQUIRE_THROWS_AS(solve_spd(diag({1, -1}), Eigen::VectorXd::Ones(2)),
                    NumericalError);
  REQUIRE_THROWS_AS(gen_sym_eig(identity(2), diag({1, -1}), 1),
                    NumericalError);
}

TEST_CASE("dense and Lanczos routes agree on a random symmetric pencil") {
  const int n = 120, k = 5;
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss;
  SparseSym A(n), B(n);
  for (int i = 0; i < n; ++i) {
    A.add(i, i, 2.0 + 0.1 * gauss(rng));
    B.add(i, i, 1.0 + 0.2 * std::abs(gauss(rng)));
    if (i + 1 < n) A.add(i + 1, i, -1.0 + 0.05 * gauss(rng));
    if (i + 2 < n) A.add(i + 2, i, 0.1 * gauss(rng));
  }
  EigOptions dense;
  dense.method = EigMethod::Dense;
  EigOptions lanczos;
  lanczos.method = EigMethod::ShiftInvertLanczos;
  EigResult rd = gen_sym_eig(A, B, k, dense);
  EigResult rl = gen_sym_eig(A, B, k, lanczos);
  for (int j = 0; j < k; ++j)
    CHECK(rl.eigenvalues[j] ==
          Approx(rd.eigenvalues[j]).margin(1e-8 * (1 + std::abs(rd.eigenvalues[j]))));

  SECTION("result invariants") {
    for (const EigResult& r : {rd, rl}) {
      for (int j = 1; j < k; ++j)
        CHECK(r.eigenvalues[j] >= r.eigenvalues[j - 1]);
      // B-orthonormality.
      Eigen::MatrixXd BV(n, k);
      for (int j = 0; j < k; ++j) BV.col(j) = B.multiply(r.eigenvectors.col(j));
      Eigen::MatrixXd G = r.eigenvectors.transpose() * BV;
      CHECK((G - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-8);
      for (int j = 0; j < k; ++j)
        CHECK(r.residuals[j] <= 1e-8 * (std::abs(r.eigenvalues[j]) + 1));
    }
  }

  SECTION("min principle over random vectors") {
    std::mt19937_64 rng2(7);
    double eta1 = rd.eigenvalues[0];
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::VectorXd w(n);
      for (int i = 0; i < n; ++i) w[i] = gauss(rng2);
      CHECK(rayleigh_quotient(A, B, w) >= eta1 - 1e-10 * (1 + std::abs(eta1)));
    }
  }

  SECTION("deterministic for fixed inputs and seed") {
    EigResult r2 = gen_sym_eig(A, B, k, lanczos);
    for (int j = 0; j < k; ++j) {
      CHECK(r2.eigenvalues[j] == rl.eigenvalues[j]);
      CHECK((r2.eigenvectors.col(j) - rl.eigenvectors.col(j)).norm() == 0.0);
    }
  }

  SECTION("sign convention: largest-magnitude component positive") {
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXd v = rd.eigenvectors.col(j).cwiseAbs();
      int imax = 0;
      v.maxCoeff(&imax);
      CHECK(rd.eigenvectors(imax, j) > 0);
    }
  }
}

TEST_CASE("matrix export") {
  SparseSym A = tridiag(3, 2.0, -1.0);
  std::string text = A.exportText();
  CHECK(text.rfind("%%sym 3 5", 0) == 0);
  CHECK(text.find("2 1 -1") != std::string::npos);
}

TEST_CASE("bad eigenpair counts are rejected") {
  REQUIRE_THROWS_AS(gen_sym_eig(identity(3), identity(3), 0), PreconditionError);
  REQUIRE_THROWS_AS(gen_sym_eig(identity(3), identity(3), 4), PreconditionError);
  REQUIRE_THROWS_AS(gen_sym_eig(identity(3), identity(2), 1), PreconditionError);
}
