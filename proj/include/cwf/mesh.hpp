#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwf/vec3.hpp"

namespace cwf {

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Face = std::array<int, 3>;

// Indexed triangle soup with consistent orientation. Positions are
// arbitrary-scale Euclidean coordinates; faces index into positions.
struct TriangleMesh {
  std::vector<V3> positions;
  std::vector<Face> faces;

  int vertex_count() const { return static_cast<int>(positions.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
};

// Checks the local invariants that do not need edge extraction:
// indices in range and no repeated vertex inside a face.
inline void validate_face_indices(const TriangleMesh& mesh) {
  const int nv = mesh.vertex_count();
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    for (int c = 0; c < 3; ++c) {
      if (face[c] < 0 || face[c] >= nv)
        throw MeshError("face " + std::to_string(f) + " references vertex " +
                        std::to_string(face[c]) + " out of range");
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
      throw MeshError("face " + std::to_string(f) + " repeats a vertex");
  }
}

inline double bounding_box_diagonal(const std::vector<V3>& positions) {
  if (positions.empty()) return 0.0;
  V3 lo = positions[0], hi = positions[0];
  for (const V3& p : positions) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
  }
  return norm(hi - lo);
}

inline V3 bounding_box_center(const std::vector<V3>& positions) {
  V3 lo = positions.at(0), hi = positions.at(0);
  for (const V3& p : positions) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
  }
  return 0.5 * (lo + hi);
}

// Scale-invariant degeneracy guard: a triangle counts as degenerate when
// its area falls below 1e-12 times the squared longest edge.
inline constexpr double kDegeneracyAreaFactor = 1e-12;

inline bool triangle_degenerate(const V3& p, const V3& q, const V3& r) {
  const double area2 = norm(cross(q - p, r - p));  // twice the area
  const double l2 = std::max({norm2(q - p), norm2(r - p), norm2(r - q)});
  return area2 < 2.0 * kDegeneracyAreaFactor * l2;
}

// area / (longest edge)^2, the quality measure used for collapse detection
inline double triangle_quality(const V3& p, const V3& q, const V3& r) {
  const double area2 = norm(cross(q - p, r - p));
  const double l2 = std::max({norm2(q - p), norm2(r - p), norm2(r - q)});
  if (l2 == 0.0) return 0.0;
  return 0.5 * area2 / l2;
}

// Six times the signed volume enclosed by the oriented surface. Positive
// for outward orientation of a closed mesh.
inline double signed_volume6(const TriangleMesh& mesh) {
  double v = 0.0;
  for (const Face& f : mesh.faces) {
    const V3& a = mesh.positions[f[0]];
    const V3& b = mesh.positions[f[1]];
    const V3& c = mesh.positions[f[2]];
    v += dot(a, cross(b, c));
  }
  return v;
}

}  // namespace cwf
