#pragma once

#include <array>
#include <cmath>

namespace lorentzfd {

// Point or direction in the slab chart (x1, x2, s) = (Re z, Im z, Im w).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double a) const { return {x * a, y * a, z * a}; }
  constexpr Vec3 operator/(double a) const { return {x / a, y / a, z / a}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Solves the 3x3 system rows[i] . x = rhs[i] by Cramer's rule.
// Returns false if the determinant is below `min_det` in absolute value.
inline bool solve3(const std::array<Vec3, 3>& rows, const std::array<double, 3>& rhs, Vec3& out,
                   double min_det = 1e-14) {
  const double det = dot(rows[0], cross(rows[1], rows[2]));
  if (std::abs(det) < min_det) return false;
  const Vec3 c0 = cross(rows[1], rows[2]);
  const Vec3 c1 = cross(rows[2], rows[0]);
  const Vec3 c2 = cross(rows[0], rows[1]);
  out = (c0 * rhs[0] + c1 * rhs[1] + c2 * rhs[2]) / det;
  return true;
}

// Ratio of largest to smallest singular-value proxy for a 3x3 row matrix:
// product of row norms over |det| (Hadamard bound, >= 1).
inline double hadamard_condition(const std::array<Vec3, 3>& rows) {
  const double det = std::abs(dot(rows[0], cross(rows[1], rows[2])));
  if (det == 0.0) return INFINITY;
  return norm(rows[0]) * norm(rows[1]) * norm(rows[2]) / det;
}

}  // namespace lorentzfd
