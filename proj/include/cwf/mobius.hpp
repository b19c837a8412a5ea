#pragma once

#include <stdexcept>
#include <vector>

#include "cwf/mesh.hpp"

namespace cwf {

// Inversion in the sphere of the given center and radius:
// p -> center + radius^2 (p - center) / |p - center|^2.
inline std::vector<V3> sphere_inversion(const std::vector<V3>& positions,
                                        const V3& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("inversion radius must be positive");
  std::vector<V3> out;
  out.reserve(positions.size());
  const double r2 = radius * radius;
  for (const V3& p : positions) {
    const V3 d = p - center;
    const double n2 = norm2(d);
    if (n2 == 0.0)
      throw std::invalid_argument("vertex coincides with the inversion center");
    out.push_back(center + (r2 / n2) * d);
  }
  return out;
}

}  // namespace cwf
