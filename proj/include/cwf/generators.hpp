#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cwf/convex_hull.hpp"
#include "cwf/mesh.hpp"

namespace cwf {

// Deterministic standard-normal sampling: mt19937_64 plus our own
// Box-Muller, so results do not depend on the standard library's
// distribution implementation.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform01(); } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  V3 unit_vector() {
    V3 v;
    double n = 0.0;
    do {
      v = {next(), next(), next()};
      n = norm(v);
    } while (n < 1e-12);
    return v / n;
  }

 private:
  double uniform01() {
    return (rng_() >> 11) * 0x1.0p-53;  // 53-bit mantissa in [0,1)
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Torus of revolution around the z axis, m major by n minor samples, each
// grid quad split along its (a,b+1)-(a+1,b) diagonal.
inline TriangleMesh generate_torus(double R, double r, int m, int n) {
  if (!(R > r && r > 0.0)) throw MeshError("torus requires R > r > 0");
  if (m < 3 || n < 3) throw MeshError("torus requires m >= 3 and n >= 3");

  TriangleMesh mesh;
  mesh.positions.reserve(static_cast<std::size_t>(m) * n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int a = 0; a < m; ++a) {
    const double theta = two_pi * a / m;
    for (int b = 0; b < n; ++b) {
      const double phi = two_pi * b / n;
      const double w = R + r * std::cos(phi);
      mesh.positions.push_back({w * std::cos(theta), w * std::sin(theta), r * std::sin(phi)});
    }
  }
  auto idx = [n](int a, int b) { return a * n + b; };
  mesh.faces.reserve(static_cast<std::size_t>(2) * m * n);
  for (int a = 0; a < m; ++a) {
    const int a1 = (a + 1) % m;
    for (int b = 0; b < n; ++b) {
      const int b1 = (b + 1) % n;
      // quad corners: (a,b) (a1,b) (a1,b1) (a,b1), diagonal (a,b1)-(a1,b)
      mesh.faces.push_back({idx(a, b), idx(a1, b), idx(a, b1)});
      mesh.faces.push_back({idx(a1, b), idx(a1, b1), idx(a, b1)});
    }
  }
  return mesh;
}

// Convex hull of `count` points sampled uniformly on the unit sphere and
// scaled by the semiaxes. Points on a strictly convex surface are all
// extreme, so the hull keeps every sample.
inline TriangleMesh generate_random_inscribed(int count, const V3& semiaxes,
                                              std::uint64_t seed) {
  if (count < 4) throw MeshError("need at least 4 points");
  if (!(semiaxes.x > 0.0 && semiaxes.y > 0.0 && semiaxes.z > 0.0))
    throw MeshError("semiaxes must be positive");
  NormalSampler sampler(seed);
  std::vector<V3> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const V3 u = sampler.unit_vector();
    pts.push_back({u.x * semiaxes.x, u.y * semiaxes.y, u.z * semiaxes.z});
  }
  return convex_hull(pts);
}

inline TriangleMesh make_tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  return convex_hull({{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}});
}

inline TriangleMesh make_octahedron() {
  return convex_hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

inline TriangleMesh make_icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = 1.0 / std::sqrt(1.0 + phi * phi);  // unit circumsphere
  const double a = s, b = s * phi;
  return convex_hull({{0, a, b}, {0, -a, b}, {0, a, -b}, {0, -a, -b},
                      {a, b, 0}, {-a, b, 0}, {a, -b, 0}, {-a, -b, 0},
                      {b, 0, a}, {b, 0, -a}, {-b, 0, a}, {-b, 0, -a}});
}

}  // namespace cwf
