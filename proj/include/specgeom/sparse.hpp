// Symmetric sparse matrices in lower-triangle coordinate storage with
// deterministic compression, plus an SPD direct solve.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <string>
#include <vector>

#include "specgeom/core.hpp"

namespace specgeom {

/// Symmetric matrix; only the lower triangle (i >= j) is stored, so symmetry
/// is exact by construction. Duplicate triplets are summed in sorted order.
class SparseSym {
 public:
  explicit SparseSym(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }

  void add(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    triplets_.push_back({i, j, v});
    compressed_ = false;
  }

  void compress() const {
    if (compressed_) return;
    std::sort(triplets_.begin(), triplets_.end(),
              [](const Entry& a, const Entry& b) {
                return a.i != b.i ? a.i < b.i : a.j < b.j;
              });
    std::vector<Entry> merged;
    merged.reserve(triplets_.size());
    for (const Entry& e : triplets_) {
      if (!merged.empty() && merged.back().i == e.i && merged.back().j == e.j)
        merged.back().v += e.v;
      else
        merged.push_back(e);
    }
    triplets_ = std::move(merged);
    compressed_ = true;
  }

  /// y = A x using symmetric completion of the lower triangle.
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
    compress();
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
    for (const Entry& e : triplets_) {
      y[e.i] += e.v * x[e.j];
      if (e.i != e.j) y[e.j] += e.v * x[e.i];
    }
    return y;
  }

  Eigen::MatrixXd toDense() const {
    compress();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (const Entry& e : triplets_) {
      m(e.i, e.j) = e.v;
      if (e.i != e.j) m(e.j, e.i) = e.v;
    }
    return m;
  }

  Eigen::SparseMatrix<double> toEigen() const {
    compress();
    std::vector<Eigen::Triplet<double>> ts;
    ts.reserve(2 * triplets_.size());
    for (const Entry& e : triplets_) {
      ts.emplace_back(e.i, e.j, e.v);
      if (e.i != e.j) ts.emplace_back(e.j, e.i, e.v);
    }
    Eigen::SparseMatrix<double> m(dim_, dim_);
    m.setFromTriplets(ts.begin(), ts.end());
    return m;
  }

  /// Matrix-market style text export: `%%sym` header, 1-based lower triplets.
  std::string exportText() const {
    compress();
    std::string out = "%%sym " + std::to_string(dim_) + " " +
                      std::to_string(triplets_.size()) + "\n";
    for (const Entry& e : triplets_)
      out += std::to_string(e.i + 1) + " " + std::to_string(e.j + 1) + " " +
             fmt17(e.v) + "\n";
    return out;
  }

  struct Entry {
    int i, j;
    double v;
  };
  const std::vector<Entry>& entries() const {
    compress();
    return triplets_;
  }

  bool sameSparsityAndValues(const SparseSym& o, double tol) const {
    compress();
    o.compress();
    if (dim_ != o.dim_ || triplets_.size() != o.triplets_.size()) return false;
    for (size_t k = 0; k < triplets_.size(); ++k) {
      const Entry &a = triplets_[k], &b = o.triplets_[k];
      if (a.i != b.i || a.j != b.j || std::abs(a.v - b.v) > tol) return false;
    }
    return true;
  }

 private:
  int dim_;
  mutable std::vector<Entry> triplets_;
  mutable bool compressed_ = false;
};

/// Direct solve B x = rhs for symmetric positive definite B.
inline Eigen::VectorXd solve_spd(const SparseSym& B,
                                 const Eigen::VectorXd& rhs) {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(B.toEigen());
  if (llt.info() != Eigen::Success)
    throw NumericalError("SPD factorization failed: matrix is not positive "
                         "definite");
  Eigen::VectorXd x = llt.solve(rhs);
  double rn = (B.multiply(x) - rhs).norm();
  if (rn > 1e-10 * std::max(rhs.norm(), 1e-300) + 1e-300)
    throw NumericalError("SPD solve residual too large");
  return x;
}

}  // namespace specgeom
