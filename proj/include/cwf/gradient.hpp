#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "cwf/dual.hpp"
#include "cwf/energy.hpp"
#include "cwf/mesh.hpp"
#include "cwf/topology.hpp"

namespace cwf {

// One vector per vertex: the partial derivatives of the energy with
// respect to that vertex position.
using GradientField = std::vector<V3>;

enum class GradientMode { Analytic, FiniteDifference };

// Default threshold below which edges stop contributing to the gradient
// of the non-smooth energy W (the solver would otherwise chatter at
// beta = 0 where the circumcircles coincide).
inline constexpr double kDefaultWThreshold = 1e-3;

namespace gradient_detail {

// Derivative of cos(beta) with respect to the 12 coordinates of the four
// points around one interior edge, by forward-mode differentiation of the
// circumcircle-tangent kernel.
struct EdgeCosDerivative {
  double cos_beta;
  std::array<double, 12> d;  // d cos(beta) / d (pi, pj, pk, pl)
};

inline EdgeCosDerivative edge_cos_derivative(const V3& pi, const V3& pj, const V3& pk,
                                             const V3& pl) {
  using D = Dual<12>;
  const Vec3<D> a{D::seeded(pi.x, 0), D::seeded(pi.y, 1), D::seeded(pi.z, 2)};
  const Vec3<D> b{D::seeded(pj.x, 3), D::seeded(pj.y, 4), D::seeded(pj.z, 5)};
  const Vec3<D> c{D::seeded(pk.x, 6), D::seeded(pk.y, 7), D::seeded(pk.z, 8)};
  const Vec3<D> d{D::seeded(pl.x, 9), D::seeded(pl.y, 10), D::seeded(pl.z, 11)};
  const D u = circle_detail::cos_beta_kernel(a, b, c, d);
  EdgeCosDerivative out;
  out.cos_beta = u.v;
  out.d = u.d;
  return out;
}

// d(beta^2)/du where u = cos(beta): -2 beta / sin(beta), continuous at
// beta = 0 where it equals -2. The series branch keeps the factor finite
// and accurate when u is within roundoff of 1.
inline double beta_sq_du_factor(double u) {
  if (u >= 1.0) return -2.0;
  if (u > 1.0 - 1e-9) return -2.0 * (1.0 + (1.0 - u) / 3.0);
  const double s = std::sqrt(1.0 - u * u);
  return -2.0 * std::acos(u) / s;
}

}  // namespace gradient_detail

struct EnergyAndGradient {
  double energy = 0.0;          // raw sum over interior edges (no constant)
  GradientField gradient;
  double beta_min = std::numeric_limits<double>::infinity();
  double beta_max = 0.0;
};

// Raw energy (without the combinatorial constant) and its exact gradient
// in one pass. For kind W, edges with beta below w_threshold contribute
// value but no gradient; the squared energies are smooth at beta = 0 and
// take no threshold.
inline EnergyAndGradient energy_and_gradient(const std::vector<V3>& positions,
                                             const MeshTopology& topo, EnergyKind kind,
                                             double w_threshold = kDefaultWThreshold) {
  EnergyAndGradient out;
  out.gradient.assign(positions.size(), V3{});

  for (const EdgeRecord& e : topo.edges) {
    if (e.boundary) continue;
    check_edge_triangles(positions, e);
    const auto der = gradient_detail::edge_cos_derivative(
        positions[e.i], positions[e.j], positions[e.k], positions[e.l]);
    const double u = std::clamp(der.cos_beta, -1.0, 1.0);
    const double b = std::acos(u);
    out.beta_min = std::min(out.beta_min, b);
    out.beta_max = std::max(out.beta_max, b);

    const double weight =
        (kind == EnergyKind::W2w) ? topo.valence[e.i] + topo.valence[e.j] : 1.0;

    double factor = 0.0;  // d f(beta) / d cos(beta)
    switch (kind) {
      case EnergyKind::W: {
        out.energy += b;
        if (b < w_threshold) factor = 0.0;  // treated as flat
        else {
          const double s = std::sqrt(std::max(1.0 - u * u, 1e-300));
          factor = -1.0 / s;
        }
        break;
      }
      case EnergyKind::W2:
      case EnergyKind::W2w: {
        out.energy += weight * b * b;
        factor = weight * gradient_detail::beta_sq_du_factor(u);
        break;
      }
    }
    if (factor != 0.0) {
      const int verts[4] = {e.i, e.j, e.k, e.l};
      for (int v = 0; v < 4; ++v)
        for (int c = 0; c < 3; ++c)
          out.gradient[verts[v]][c] += factor * der.d[3 * v + c];
    }
  }
  if (out.beta_min > out.beta_max) {  // no interior edges
    out.beta_min = 0.0;
    out.beta_max = 0.0;
  }
  return out;
}

inline double raw_energy(const std::vector<V3>& positions, const MeshTopology& topo,
                         EnergyKind kind) {
  double sum = 0.0;
  for (const EdgeRecord& e : topo.edges) {
    if (e.boundary) continue;
    const double b = beta(positions, e);
    const double w =
        (kind == EnergyKind::W2w) ? topo.valence[e.i] + topo.valence[e.j] : 1.0;
    sum += (kind == EnergyKind::W) ? b : w * b * b;
  }
  return sum;
}

// Central finite differences of the raw energy, step scaled by the
// bounding box diagonal. Slow path, selectable as an oracle.
inline GradientField finite_difference_gradient(const std::vector<V3>& positions,
                                                const MeshTopology& topo, EnergyKind kind,
                                                double step_scale = 1e-6) {
  const double h = step_scale * bounding_box_diagonal(positions);
  std::vector<V3> work = positions;
  GradientField grad(positions.size());
  for (std::size_t v = 0; v < positions.size(); ++v) {
    for (int c = 0; c < 3; ++c) {
      const double saved = work[v][c];
      work[v][c] = saved + h;
      const double fp = raw_energy(work, topo, kind);
      work[v][c] = saved - h;
      const double fm = raw_energy(work, topo, kind);
      work[v][c] = saved;
      grad[v][c] = (fp - fm) / (2.0 * h);
    }
  }
  return grad;
}

// Exact analytic gradient of the energy (the constant does not move).
// For kind W the threshold mirrors the minimization behavior.
inline GradientField gradient(const std::vector<V3>& positions, const MeshTopology& topo,
                              EnergyKind kind, double w_threshold = kDefaultWThreshold,
                              GradientMode mode = GradientMode::Analytic) {
  if (mode == GradientMode::FiniteDifference)
    return finite_difference_gradient(positions, topo, kind);
  return energy_and_gradient(positions, topo, kind, w_threshold).gradient;
}

}  // namespace cwf
