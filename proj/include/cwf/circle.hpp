#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwf/mesh.hpp"
#include "cwf/topology.hpp"
#include "cwf/vec3.hpp"

namespace cwf {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Circumcircle {
  V3 center;
  double radius = 0.0;
  V3 normal;  // unit, orientation of the triangle (q-p) x (r-p)
};

namespace circle_detail {

// Circumcenter as p + alpha*(q-p) + beta*(r-p), from the 2x2 system
// (c-p).a = |a|^2/2, (c-p).b = |b|^2/2. The common denominator is
// |a x b|^2, so the formula degrades exactly when the triangle does.
template <class T>
Vec3<T> circumcenter_kernel(const Vec3<T>& p, const Vec3<T>& q, const Vec3<T>& r) {
  const Vec3<T> a = q - p;
  const Vec3<T> b = r - p;
  const T aa = dot(a, a), bb = dot(b, b), ab = dot(a, b);
  const T denom = 2.0 * (aa * bb - ab * ab);
  const T alpha = bb * (aa - ab) / denom;
  const T beta = aa * (bb - ab) / denom;
  return p + alpha * a + beta * b;
}

// Cosine of the external intersection angle of the circumcircles of the
// oriented faces (pi,pj,pk) and (pj,pi,pl), via the tangents of both
// circles at the shared vertex pi: t = n x (pi - c). The tangents have
// length radius, and the unnormalized face normals cancel in the
// normalization, so no square roots are needed until the final division.
template <class T>
T cos_beta_kernel(const Vec3<T>& pi, const Vec3<T>& pj, const Vec3<T>& pk,
                  const Vec3<T>& pl) {
  using std::sqrt;
  const Vec3<T> c1 = circumcenter_kernel(pi, pj, pk);
  const Vec3<T> c2 = circumcenter_kernel(pj, pi, pl);
  const Vec3<T> n1 = cross(pj - pi, pk - pi);
  const Vec3<T> n2 = cross(pi - pj, pl - pj);
  const Vec3<T> t1 = cross(n1, pi - c1);
  const Vec3<T> t2 = cross(n2, pi - c2);
  return dot(t1, t2) / sqrt(dot(t1, t1) * dot(t2, t2));
}

}  // namespace circle_detail

inline Circumcircle circumcircle(const V3& p, const V3& q, const V3& r) {
  if (triangle_degenerate(p, q, r))
    throw GeometryError("degenerate triangle in circumcircle computation");
  Circumcircle c;
  c.center = circle_detail::circumcenter_kernel(p, q, r);
  c.radius = norm(p - c.center);
  c.normal = normalized(cross(q - p, r - p));
  return c;
}

inline void check_edge_triangles(const std::vector<V3>& positions, const EdgeRecord& e) {
  if (e.boundary)
    throw GeometryError("beta undefined for boundary edge (" + std::to_string(e.i) +
                        "," + std::to_string(e.j) + ")");
  if (triangle_degenerate(positions[e.i], positions[e.j], positions[e.k]) ||
      triangle_degenerate(positions[e.j], positions[e.i], positions[e.l]))
    throw GeometryError("degenerate triangle at edge (" + std::to_string(e.i) + "," +
                        std::to_string(e.j) + ")");
}

// External intersection angle of the two circumcircles at an interior
// edge, in [0, pi]. Zero when the circles coincide.
inline double beta(const std::vector<V3>& positions, const EdgeRecord& e) {
  check_edge_triangles(positions, e);
  const double c = circle_detail::cos_beta_kernel(positions[e.i], positions[e.j],
                                                  positions[e.k], positions[e.l]);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace cwf
