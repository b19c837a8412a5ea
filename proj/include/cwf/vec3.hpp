#pragma once

#include <cmath>
#include <cstddef>

namespace cwf {

// Small fixed 3-vector, templated so the geometric kernels can run on
// plain doubles or on forward-mode dual numbers.
template <class T>
struct Vec3 {
  T x{}, y{}, z{};

  Vec3() = default;
  Vec3(T xx, T yy, T zz) : x(xx), y(yy), z(zz) {}

  T& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  const T& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(const T& s) { x *= s; y *= s; z *= s; return *this; }
};

template <class T> Vec3<T> operator+(Vec3<T> a, const Vec3<T>& b) { return a += b; }
template <class T> Vec3<T> operator-(Vec3<T> a, const Vec3<T>& b) { return a -= b; }
template <class T> Vec3<T> operator*(const T& s, Vec3<T> a) { return a *= s; }
template <class T> Vec3<T> operator*(Vec3<T> a, const T& s) { return a *= s; }
template <class T> Vec3<T> operator/(const Vec3<T>& a, const T& s) { return {a.x / s, a.y / s, a.z / s}; }
template <class T> Vec3<T> operator-(const Vec3<T>& a) { return {-a.x, -a.y, -a.z}; }

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
T norm2(const Vec3<T>& a) { return dot(a, a); }

template <class T>
T norm(const Vec3<T>& a) { using std::sqrt; return sqrt(dot(a, a)); }

template <class T>
Vec3<T> normalized(const Vec3<T>& a) { return a / norm(a); }

using V3 = Vec3<double>;

inline double dist(const V3& a, const V3& b) { return norm(a - b); }

}  // namespace cwf
