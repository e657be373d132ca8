// specgeom: spectral geometry of planar domains.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace specgeom {

inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// ---------------------------------------------------------------------------
// Errors. The CLI maps these onto exit codes; library users catch by type.

/// Malformed domain-DSL or mesh text input.
struct ParseError : std::runtime_error {
  int line = 0, col = 0;
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg)), line(line_), col(col_) {}
};

/// Structurally invalid input (open chain, negative orientation, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation was invoked outside its contract (bad index, non-lip
/// domain passed to a lip-only check, ...).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure: factorization broke down or iteration did not converge.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Plane vectors.

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }

  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  /// Counterclockwise quarter turn.
  Vec2 perp() const { return {-y, x}; }
  Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }
inline Vec2 rotate(Vec2 v, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

struct BBox {
  Vec2 lo{0, 0}, hi{0, 0};
  double diameter() const { return (hi - lo).norm(); }
  void absorb(Vec2 p) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
  }
};

// ---------------------------------------------------------------------------
// Hashing and deterministic pseudo-randomness.

inline uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// splitmix64: tiny deterministic generator used to seed shuffles.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, n).
  uint64_t below(uint64_t n) { return next() % n; }
};

/// Shortest fixed formatting that round-trips doubles (17 significant digits).
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace specgeom
