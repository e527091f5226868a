// Small fixed-size complex linear algebra for 3-vectors and 3x3 dyadics.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>

namespace mlnf {

using cdouble = std::complex<double>;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](std::size_t i) { return (&x)[i]; }
  double operator[](std::size_t i) const { return (&x)[i]; }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const { return *this / norm(); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Vec3c {
  cdouble x{}, y{}, z{};

  Vec3c() = default;
  Vec3c(cdouble a, cdouble b, cdouble c) : x(a), y(b), z(c) {}
  explicit Vec3c(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  cdouble& operator[](std::size_t i) { return (&x)[i]; }
  cdouble operator[](std::size_t i) const { return (&x)[i]; }

  Vec3c operator+(const Vec3c& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3c operator-(const Vec3c& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3c operator*(cdouble s) const { return {x * s, y * s, z * s}; }
  Vec3c operator-() const { return {-x, -y, -z}; }
  Vec3c& operator+=(const Vec3c& o) { x += o.x; y += o.y; z += o.z; return *this; }

  // unconjugated dot product a.b
  cdouble dot(const Vec3c& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3c conj() const { return {std::conj(x), std::conj(y), std::conj(z)}; }
  double norm() const {
    return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z));
  }
  double max_abs() const {
    return std::max({std::abs(x), std::abs(y), std::abs(z)});
  }
};

inline Vec3c operator*(cdouble s, const Vec3c& v) { return v * s; }
inline Vec3c operator*(double s, const Vec3c& v) { return v * cdouble(s); }

// 3x3 complex dyadic, row-major
struct Mat3c {
  std::array<cdouble, 9> m{};

  cdouble& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
  cdouble operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

  static Mat3c identity() {
    Mat3c r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
  }
  static Mat3c outer(const Vec3c& a, const Vec3c& b) {
    Mat3c r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
    return r;
  }
  static Mat3c outer(const Vec3& a, const Vec3& b) {
    return outer(Vec3c(a), Vec3c(b));
  }

  Mat3c operator+(const Mat3c& o) const {
    Mat3c r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
    return r;
  }
  Mat3c operator-(const Mat3c& o) const {
    Mat3c r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
    return r;
  }
  Mat3c operator*(cdouble s) const {
    Mat3c r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] * s;
    return r;
  }
  Mat3c& operator+=(const Mat3c& o) {
    for (std::size_t i = 0; i < 9; ++i) m[i] += o.m[i];
    return *this;
  }
  Mat3c& operator-=(const Mat3c& o) {
    for (std::size_t i = 0; i < 9; ++i) m[i] -= o.m[i];
    return *this;
  }
  Mat3c operator-() const { return *this * cdouble(-1.0); }

  Mat3c dot(const Mat3c& o) const {
    Mat3c r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        cdouble s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  Mat3c transpose() const {
    Mat3c r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  Mat3c conj() const {
    Mat3c r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = std::conj(m[i]);
    return r;
  }
  Mat3c adjoint() const { return conj().transpose(); }
  Mat3c real_part() const {
    Mat3c r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i].real();
    return r;
  }
  Mat3c imag_part() const {
    Mat3c r;
    for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i].imag();
    return r;
  }

  // v . M (row vector times matrix)
  Vec3c left_mul(const Vec3c& v) const {
    Vec3c r;
    for (std::size_t j = 0; j < 3; ++j)
      r[j] = v[0] * (*this)(0, j) + v[1] * (*this)(1, j) + v[2] * (*this)(2, j);
    return r;
  }
  // M . v
  Vec3c right_mul(const Vec3c& v) const {
    Vec3c r;
    for (std::size_t i = 0; i < 3; ++i)
      r[i] = (*this)(i, 0) * v[0] + (*this)(i, 1) * v[1] + (*this)(i, 2) * v[2];
    return r;
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& e : m) r = std::max(r, std::abs(e));
    return r;
  }
  bool all_finite() const {
    for (const auto& e : m)
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
  }
};

inline Mat3c operator*(cdouble s, const Mat3c& a) { return a * s; }
inline Mat3c operator*(double s, const Mat3c& a) { return a * cdouble(s); }

// real 3x3 rotation (orthonormal columns)
struct Rot3 {
  std::array<double, 9> m{};

  double& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
  double operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

  static Rot3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Rot3 r;
    for (std::size_t i = 0; i < 3; ++i) {
      r(i, 0) = c0[i];
      r(i, 1) = c1[i];
      r(i, 2) = c2[i];
    }
    return r;
  }
  // rotation mapping +z to axis (axis must be unit); remaining columns arbitrary orthonormal
  static Rot3 z_to(const Vec3& axis) {
    Vec3 seed = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 u = axis.cross(seed).normalized();
    Vec3 v = axis.cross(u);
    return from_columns(u, v, axis);
  }

  Vec3 apply(const Vec3& p) const {
    return {m[0] * p.x + m[1] * p.y + m[2] * p.z,
            m[3] * p.x + m[4] * p.y + m[5] * p.z,
            m[6] * p.x + m[7] * p.y + m[8] * p.z};
  }
  Vec3 apply_transposed(const Vec3& p) const {
    return {m[0] * p.x + m[3] * p.y + m[6] * p.z,
            m[1] * p.x + m[4] * p.y + m[7] * p.z,
            m[2] * p.x + m[5] * p.y + m[8] * p.z};
  }
  Vec3c apply(const Vec3c& p) const {
    return {m[0] * p.x + m[1] * p.y + m[2] * p.z,
            m[3] * p.x + m[4] * p.y + m[5] * p.z,
            m[6] * p.x + m[7] * p.y + m[8] * p.z};
  }
  // Q . A . Q^T
  Mat3c conjugate(const Mat3c& a) const {
    Mat3c r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        cdouble s = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t l = 0; l < 3; ++l)
            s += (*this)(i, k) * a(k, l) * (*this)(j, l);
        r(i, j) = s;
      }
    return r;
  }
};

// Levi-Civita symbol
inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) return 1;
  return -1;
}

// relative deviation max|A-B| / max(max|A|, max|B|); 0/0 -> 0
inline double rel_dev(const Mat3c& a, const Mat3c& b) {
  double den = std::max(a.max_abs(), b.max_abs());
  if (den == 0.0) return 0.0;
  return (a - b).max_abs() / den;
}

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

}  // namespace mlnf
