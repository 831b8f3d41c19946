#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace ltesim {

using Vec3 = std::array<double, 3>;

// Row-major 3x3 matrix; just enough linear algebra for the channel filter.
struct Mat3 {
  std::array<double, 9> m{};

  double& operator()(int r, int c) { return m[r * 3 + c]; }
  double operator()(int r, int c) const { return m[r * 3 + c]; }

  static Mat3 identity() {
    Mat3 a;
    a(0, 0) = a(1, 1) = a(2, 2) = 1.0;
    return a;
  }

  static Mat3 diag(const Vec3& d) {
    Mat3 a;
    a(0, 0) = d[0];
    a(1, 1) = d[1];
    a(2, 2) = d[2];
    return a;
  }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] + b.m[i];
  return r;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = a.m[i] - b.m[i];
  return r;
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

inline Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
          a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
          a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

inline double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

inline double max_abs(const Mat3& a) {
  double v = 0.0;
  for (double e : a.m) v = std::max(v, std::abs(e));
  return v;
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double v = 0.0;
  for (int i = 0; i < 9; ++i) v = std::max(v, std::abs(a.m[i] - b.m[i]));
  return v;
}

// Gauss-Jordan elimination with partial pivoting.
inline Mat3 inverse(const Mat3& a) {
  const double scale = max_abs(a);
  const double tiny = 1e-30 * std::max(1.0, scale);
  Mat3 lhs = a;
  Mat3 rhs = Mat3::identity();
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(lhs(r, col)) > std::abs(lhs(pivot, col))) pivot = r;
    if (std::abs(lhs(pivot, col)) < tiny)
      throw std::runtime_error("mat3: inverse of a numerically singular matrix");
    if (pivot != col) {
      for (int j = 0; j < 3; ++j) {
        std::swap(lhs(pivot, j), lhs(col, j));
        std::swap(rhs(pivot, j), rhs(col, j));
      }
    }
    const double inv_p = 1.0 / lhs(col, col);
    for (int j = 0; j < 3; ++j) {
      lhs(col, j) *= inv_p;
      rhs(col, j) *= inv_p;
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = lhs(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < 3; ++j) {
        lhs(r, j) -= f * lhs(col, j);
        rhs(r, j) -= f * rhs(col, j);
      }
    }
  }
  return rhs;
}

}  // namespace ltesim
