// Independent oracles for the test suites: closed-form spectra of squares,
// rectangles and the half-square right triangle, Bessel-root eigenvalues of
// the unit disk (roots found by bisection on a power series), and the
// closed-form spectrum of the (2,-1) Toeplitz matrix.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// Power series for J_n; adequate to machine precision for x <= 6.
inline double besselJ(int n, double x) {
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= x / (2.0 * k);
  double sum = 0.0;
  for (int k = 0; k < 64; ++k) {
    sum += term;
    term *= -(x / 2) * (x / 2) / ((k + 1.0) * (k + 1.0 + n));
  }
  return sum;
}

inline double besselJderiv(int n, double x) {
  if (n == 0) return -besselJ(1, x);
  return 0.5 * (besselJ(n - 1, x) - besselJ(n + 1, x));
}

inline double bisect(double lo, double hi,
                     const std::function<double(double)>& f) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) * flo > 0) {
      lo = mid;
      flo = f(mid);
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Positive Neumann eigenvalues of the unit disk, ascending with multiplicity.
inline std::vector<double> diskNeumann(int count) {
  // (j'_{n,k})^2 with multiplicity 2 for n >= 1, 1 for n = 0.
  struct Root { double value; int mult; };
  std::vector<Root> roots;
  for (int n = 0; n <= 6; ++n) {
    double lo = 0.1, step = 0.05;
    int found = 0;
    for (double x = std::max(lo, 0.5); x < 12 && found < 4; x += step) {
      double f0 = besselJderiv(n, x), f1 = besselJderiv(n, x + step);
      if (f0 == 0) continue;
      if (f0 * f1 < 0) {
        double r = bisect(x, x + step, [n](double t) { return besselJderiv(n, t); });
        if (r > 1e-6) {
          roots.push_back({r * r, n == 0 ? 1 : 2});
          ++found;
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.value < b.value; });
  std::vector<double> out;
  for (const Root& r : roots)
    for (int m = 0; m < r.mult && static_cast<int>(out.size()) < count; ++m)
      out.push_back(r.value);
  return out;
}

/// Dirichlet eigenvalues of the unit disk, ascending with multiplicity.
inline std::vector<double> diskDirichlet(int count) {
  struct Root { double value; int mult; };
  std::vector<Root> roots;
  for (int n = 0; n <= 6; ++n) {
    double step = 0.05;
    int found = 0;
    for (double x = 0.5; x < 14 && found < 4; x += step) {
      double f0 = besselJ(n, x), f1 = besselJ(n, x + step);
      if (f0 * f1 < 0) {
        double r = bisect(x, x + step, [n](double t) { return besselJ(n, t); });
        roots.push_back({r * r, n == 0 ? 1 : 2});
        ++found;
      }
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.value < b.value; });
  std::vector<double> out;
  for (const Root& r : roots)
    for (int m = 0; m < r.mult && static_cast<int>(out.size()) < count; ++m)
      out.push_back(r.value);
  return out;
}

/// Neumann eigenvalues of an a x b rectangle (including the zero mode).
inline std::vector<double> rectNeumann(double a, double b, int count) {
  std::vector<double> out;
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= 20; ++n)
      out.push_back(kPi * kPi * (m * m / (a * a) + n * n / (b * b)));
  std::sort(out.begin(), out.end());
  out.resize(count);
  return out;
}

inline std::vector<double> rectDirichlet(double a, double b, int count) {
  std::vector<double> out;
  for (int m = 1; m <= 20; ++m)
    for (int n = 1; n <= 20; ++n)
      out.push_back(kPi * kPi * (m * m / (a * a) + n * n / (b * b)));
  std::sort(out.begin(), out.end());
  out.resize(count);
  return out;
}

/// Positive Neumann eigenvalues of the right isosceles triangle with legs of
/// length sqrt(2) (the half of the side-sqrt(2) square cut along a diagonal):
/// pi^2 (m^2 + n^2) / 2 over unordered pairs m >= n >= 0, (m, n) != (0, 0).
inline std::vector<double> lipTriangleNeumannPositive(int count) {
  std::vector<double> out;
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; n <= m; ++n) {
      if (m == 0 && n == 0) continue;
      out.push_back(kPi * kPi * (m * m + n * n) / 2.0);
    }
  std::sort(out.begin(), out.end());
  out.resize(count);
  return out;
}

/// Dirichlet eigenvalues of the same triangle: pi^2 (m^2 + n^2) / 2, m > n >= 1.
inline std::vector<double> lipTriangleDirichlet(int count) {
  std::vector<double> out;
  for (int m = 2; m <= 13; ++m)
    for (int n = 1; n < m; ++n)
      out.push_back(kPi * kPi * (m * m + n * n) / 2.0);
  std::sort(out.begin(), out.end());
  out.resize(count);
  return out;
}

/// Smallest eigenvalue of the n x n tridiagonal (2, -1) matrix:
/// 4 sin^2(pi / (2 (n + 1))).
inline double toeplitzSmallest(int n) {
  double s = std::sin(kPi / (2.0 * (n + 1)));
  return 4.0 * s * s;
}

}  // namespace oracles
