// Symmetric generalized eigenvalue solver A v = eta B v with B SPD.
//
// Two routes: a dense transformation through the Cholesky factor of B (the
// trustworthy default at small dimensions) and shift-invert Lanczos with full
// reorthogonalization for larger systems.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <string>
#include <vector>

#include "specgeom/core.hpp"
#include "specgeom/sparse.hpp"

namespace specgeom {

enum class EigMethod { Auto, Dense, ShiftInvertLanczos };

struct EigOptions {
  EigMethod method = EigMethod::Auto;
  double tol = 1e-10;       // residual target, scaled by (|eta| + 1)
  double sigma = -1.0;      // shift for the Lanczos route
  int max_subspace = 400;   // Krylov dimension cap
  uint64_t seed = 0x5EEDull;
  int dense_threshold = 3000;
};

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;     // columns, B-orthonormal
  std::vector<double> residuals;    // ||A v - eta B v||_2
  std::string method;
  int iterations = 0;
  double tol = 0.0;
};

namespace detail {

inline void applySignConvention(Eigen::MatrixXd& V) {
  for (int c = 0; c < V.cols(); ++c) {
    int imax = 0;
    double best = std::abs(V(0, c));
    for (int i = 1; i < V.rows(); ++i)
      if (std::abs(V(i, c)) > best) {
        best = std::abs(V(i, c));
        imax = i;
      }
    if (V(imax, c) < 0) V.col(c) = -V.col(c);
  }
}

inline EigResult denseRoute(const SparseSym& A, const SparseSym& B, int k,
                            const EigOptions& opts) {
  Eigen::MatrixXd Ad = A.toDense();
  Eigen::MatrixXd Bd = B.toDense();
  Eigen::LLT<Eigen::MatrixXd> llt(Bd);
  if (llt.info() != Eigen::Success)
    throw NumericalError("B is not positive definite (Cholesky failed)");
  // Standard problem C y = eta y with C = L^-1 A L^-T, v = L^-T y.
  Eigen::MatrixXd C = llt.matrixL().solve(Ad);
  C = llt.matrixL().solve(C.transpose()).eval();
  C = 0.5 * (C + C.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
  if (es.info() != Eigen::Success)
    throw NumericalError("dense symmetric eigensolver failed");

  EigResult r;
  r.method = "dense-cholesky";
  r.tol = opts.tol;
  r.iterations = 1;
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
  Eigen::MatrixXd Y = es.eigenvectors().leftCols(k);
  r.eigenvectors =
      llt.matrixL().transpose().solve(Y);  // back-transform, B-orthonormal
  return r;
}

inline EigResult lanczosRoute(const SparseSym& A, const SparseSym& B, int k,
                              const EigOptions& opts) {
  const int n = A.dim();
  Eigen::SparseMatrix<double> shifted = A.toEigen();
  shifted -= opts.sigma * B.toEigen();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success)
    throw NumericalError("shift-invert factorization failed");

  // B-orthonormal Lanczos on Op = (A - sigma B)^-1 B. Ritz values theta map to
  // eta = sigma + 1/theta; the k smallest eta are the k largest theta.
  auto bmul = [&](const Eigen::VectorXd& x) { return B.multiply(x); };

  SplitMix64 rng(opts.seed);
  Eigen::VectorXd q0(n);
  for (int i = 0; i < n; ++i)
    q0[i] = (rng.next() >> 11) * (1.0 / 9007199254740992.0) - 0.5;

  std::vector<Eigen::VectorXd> Q, BQ;
  std::vector<double> alpha, beta;
  {
    Eigen::VectorXd bq = bmul(q0);
    double nrm = std::sqrt(q0.dot(bq));
    Q.push_back(q0 / nrm);
    BQ.push_back(bq / nrm);
  }

  const int mmax = std::min(n, std::max(opts.max_subspace, 4 * k + 40));
  EigResult r;
  r.method = "shift-invert-lanczos";
  r.tol = opts.tol;

  int m = 0;
  while (true) {
    // Extend the basis by one vector.
    Eigen::VectorXd w = ldlt.solve(BQ[m]);
    double a = w.dot(BQ[m]);
    alpha.push_back(a);
    w -= a * Q[m];
    if (m > 0) w -= beta[m - 1] * Q[m - 1];
    for (int pass = 0; pass < 2; ++pass)  // full reorthogonalization
      for (size_t i = 0; i < Q.size(); ++i) w -= BQ[i].dot(w) * Q[i];
    Eigen::VectorXd bw = bmul(w);
    double b = std::sqrt(std::max(w.dot(bw), 0.0));
    ++m;

    bool breakdown = b < 1e-13;
    if (!breakdown && m < mmax) {
      beta.push_back(b);
      Q.push_back(w / b);
      BQ.push_back(bw / b);
    }

    // Check Ritz convergence periodically (and when forced to stop).
    bool due = m >= std::max(2 * k, 10) && m % 10 == 0;
    if (due || breakdown || m >= mmax) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      // Largest theta first.
      const int found = std::min<int>(k, m);
      Eigen::MatrixXd V(n, found);
      std::vector<double> etas(found);
      for (int j = 0; j < found; ++j) {
        int col = m - 1 - j;
        double theta = es.eigenvalues()(col);
        etas[j] = opts.sigma + 1.0 / theta;
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < m; ++i) v += es.eigenvectors()(i, col) * Q[i];
        V.col(j) = v;
      }
      bool all_ok = found == k;
      std::vector<double> res(found);
      for (int j = 0; j < found && all_ok; ++j) {
        Eigen::VectorXd rv = A.multiply(V.col(j)) - etas[j] * bmul(V.col(j));
        res[j] = rv.norm();
        if (res[j] > opts.tol * (std::abs(etas[j]) + 1)) all_ok = false;
      }
      if (all_ok || breakdown || m >= mmax) {
        if (!all_ok)
          throw NumericalError(
              "Lanczos did not converge " + std::to_string(k) +
              " eigenpairs within subspace cap " + std::to_string(mmax));
        // Sort ascending by eta.
        std::vector<int> order(found);
        for (int j = 0; j < found; ++j) order[j] = j;
        std::sort(order.begin(), order.end(),
                  [&](int x, int y) { return etas[x] < etas[y]; });
        r.eigenvalues.resize(found);
        r.eigenvectors.resize(n, found);
        for (int j = 0; j < found; ++j) {
          r.eigenvalues[j] = etas[order[j]];
          r.eigenvectors.col(j) = V.col(order[j]);
        }
        r.iterations = m;
        return r;
      }
    }
  }
}

}  // namespace detail

/// k smallest eigenpairs of A v = eta B v (A symmetric, B SPD). The returned
/// eigenvectors are B-orthonormal with the first component of largest
/// magnitude made positive.
inline EigResult gen_sym_eig(const SparseSym& A, const SparseSym& B, int k,
                             const EigOptions& opts = {}) {
  if (A.dim() != B.dim()) throw PreconditionError("dimension mismatch");
  if (k < 1 || k > A.dim())
    throw PreconditionError("requested eigenpair count out of range");

  EigMethod method = opts.method;
  if (method == EigMethod::Auto)
    method = A.dim() > opts.dense_threshold ? EigMethod::ShiftInvertLanczos
                                            : EigMethod::Dense;

  EigResult r = (method == EigMethod::Dense) ? detail::denseRoute(A, B, k, opts)
                                             : detail::lanczosRoute(A, B, k, opts);

  detail::applySignConvention(r.eigenvectors);
  r.residuals.resize(k);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd rv = A.multiply(r.eigenvectors.col(j)) -
                         r.eigenvalues[j] * B.multiply(r.eigenvectors.col(j));
    r.residuals[j] = rv.norm();
    if (r.residuals[j] > opts.tol * (std::abs(r.eigenvalues[j]) + 1))
      throw NumericalError("eigensolver residual exceeds tolerance");
  }
  return r;
}

/// Rayleigh quotient v^T A v / v^T B v.
inline double rayleigh_quotient(const SparseSym& A, const SparseSym& B,
                                const Eigen::VectorXd& v) {
  double den = v.dot(B.multiply(v));
  if (den <= 0) throw PreconditionError("Rayleigh quotient of a zero field");
  return v.dot(A.multiply(v)) / den;
}

}  // namespace specgeom
