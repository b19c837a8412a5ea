#pragma once

// Test-only oracles, independent of the library code paths they check:
// finite differences for gradients, exhaustive KKT enumeration for the
// inequality program, the inscribed-angle theorem for planar circle
// angles, and deterministic random mesh factories.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "cwf/cwf.hpp"

namespace oracle {

// ---------------------------------------------------------------------
// finite-difference gradient of the raw energy sums, central differences
inline cwf::GradientField fd_gradient(const std::vector<cwf::V3>& positions,
                                      const cwf::MeshTopology& topo,
                                      cwf::EnergyKind kind, double step_scale = 1e-6) {
  auto value = [&](const std::vector<cwf::V3>& pos) {
    double sum = 0.0;
    for (const cwf::EdgeRecord& e : topo.edges) {
      if (e.boundary) continue;
      const double b = cwf::beta(pos, e);
      const double w = (kind == cwf::EnergyKind::W2w)
                           ? topo.valence[e.i] + topo.valence[e.j]
                           : 1.0;
      sum += (kind == cwf::EnergyKind::W) ? b : w * b * b;
    }
    return sum;
  };
  const double h = step_scale * cwf::bounding_box_diagonal(positions);
  std::vector<cwf::V3> work = positions;
  cwf::GradientField grad(positions.size());
  for (std::size_t v = 0; v < positions.size(); ++v) {
    for (int c = 0; c < 3; ++c) {
      const double saved = work[v][c];
      work[v][c] = saved + h;
      const double fp = value(work);
      work[v][c] = saved - h;
      const double fm = value(work);
      work[v][c] = saved;
      grad[v][c] = (fp - fm) / (2.0 * h);
    }
  }
  return grad;
}

// ---------------------------------------------------------------------
// Planar convex quad (k and l on opposite sides of edge ij): the
// inscribed angle theorem gives the external circle intersection angle
// as pi minus the triangle angles at k and l.
inline double planar_beta_by_inscribed_angles(const cwf::V3& pi_, const cwf::V3& pj,
                                              const cwf::V3& pk, const cwf::V3& pl) {
  auto angle_at = [](const cwf::V3& apex, const cwf::V3& a, const cwf::V3& b) {
    const cwf::V3 u = a - apex, v = b - apex;
    return std::acos(std::clamp(dot(u, v) / (norm(u) * norm(v)), -1.0, 1.0));
  };
  return std::numbers::pi - angle_at(pk, pi_, pj) - angle_at(pl, pi_, pj);
}

// ---------------------------------------------------------------------
// Dense brute-force solution of min x^t Q x s.t. Mx >= 2 pi 1 by
// enumerating every active subset and checking the KKT conditions.
// Viable for vertex counts up to ~12.
inline std::optional<Eigen::VectorXd> brute_force_inequality_qp(const cwf::GraphData& g,
                                                                bool weighted) {
  const int nv = g.vertex_count;
  const int ne = g.edge_count();
  const double two_pi = 2.0 * std::numbers::pi;
  Eigen::VectorXd qdiag = Eigen::VectorXd::Ones(ne);
  if (weighted)
    for (int e = 0; e < ne; ++e) qdiag[e] = g.edge_weight[e];

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nv, ne);
  for (int e = 0; e < ne; ++e) {
    m(g.edges[e].first, e) = 1.0;
    m(g.edges[e].second, e) = 1.0;
  }

  std::optional<Eigen::VectorXd> best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << nv); ++mask) {
    std::vector<int> set;
    for (int v = 0; v < nv; ++v)
      if (mask & (1u << v)) set.push_back(v);
    Eigen::VectorXd x;
    Eigen::VectorXd lam;
    if (set.empty()) {
      x = Eigen::VectorXd::Zero(ne);
      lam = Eigen::VectorXd::Zero(0);
    } else {
      Eigen::MatrixXd ms(set.size(), ne);
      for (std::size_t a = 0; a < set.size(); ++a) ms.row(a) = m.row(set[a]);
      const Eigen::MatrixXd gram =
          ms * qdiag.cwiseInverse().asDiagonal() * ms.transpose();
      Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
      if (ldlt.info() != Eigen::Success) continue;
      lam = ldlt.solve(Eigen::VectorXd::Constant(set.size(), two_pi));
      if ((gram * lam - Eigen::VectorXd::Constant(set.size(), two_pi)).norm() > 1e-8)
        continue;  // singular subset
      x = qdiag.cwiseInverse().asDiagonal() * ms.transpose() * lam;
    }
    // KKT: primal feasibility and dual feasibility
    if (((m * x).array() - two_pi).minCoeff() < -1e-9) continue;
    if (lam.size() > 0 && lam.minCoeff() < -1e-9) continue;
    const double obj = x.dot(qdiag.cwiseProduct(x));
    if (obj < best_obj) {
      best_obj = obj;
      best = x;
    }
  }
  return best;
}

// ---------------------------------------------------------------------
// deterministic random meshes
inline cwf::TriangleMesh random_hull(std::uint64_t seed, int count,
                                     cwf::V3 semiaxes = {1.0, 1.0, 1.0}) {
  return cwf::generate_random_inscribed(count, semiaxes, seed);
}

// positions jittered by a fraction of the bounding box (keeps the mesh
// valid for small amplitudes but generically non-inscribed, W > 0)
inline cwf::TriangleMesh jittered(cwf::TriangleMesh mesh, std::uint64_t seed,
                                  double amplitude) {
  cwf::NormalSampler sampler(seed);
  const double scale = amplitude * cwf::bounding_box_diagonal(mesh.positions);
  for (cwf::V3& p : mesh.positions) {
    p.x += scale * sampler.next();
    p.y += scale * sampler.next();
    p.z += scale * sampler.next();
  }
  return mesh;
}

// Stacks a new vertex onto a face: subdivides (a,b,c) into three
// triangles around a point slightly above the face centroid. Creates a
// separating triangle, the classic source of failing cycle conditions.
inline cwf::TriangleMesh stack_on_face(cwf::TriangleMesh mesh, int face,
                                       double height_factor = 0.15) {
  const cwf::Face f = mesh.faces.at(face);
  const cwf::V3 a = mesh.positions[f[0]];
  const cwf::V3 b = mesh.positions[f[1]];
  const cwf::V3 c = mesh.positions[f[2]];
  const cwf::V3 centroid = (a + b + c) / 3.0;
  const cwf::V3 n = cross(b - a, c - a);
  const cwf::V3 apex = centroid + (height_factor / norm(n)) * n * norm(b - a);
  const int idx = mesh.vertex_count();
  mesh.positions.push_back(apex);
  mesh.faces[face] = {f[0], f[1], idx};
  mesh.faces.push_back({f[1], f[2], idx});
  mesh.faces.push_back({f[2], f[0], idx});
  return mesh;
}

// inversion sphere safely outside the bounding sphere of the positions
struct InversionSpec {
  cwf::V3 center;
  double radius;
};

inline InversionSpec random_outside_inversion(const std::vector<cwf::V3>& positions,
                                              std::uint64_t seed) {
  cwf::NormalSampler sampler(seed);
  const cwf::V3 c = cwf::bounding_box_center(positions);
  double r = 0.0;
  for (const cwf::V3& p : positions) r = std::max(r, dist(p, c));
  const cwf::V3 dir = sampler.unit_vector();
  const double offset = r * (2.0 + std::abs(sampler.next()));
  InversionSpec spec;
  spec.center = c + offset * dir;
  spec.radius = r * (0.5 + std::abs(sampler.next()));
  return spec;
}

}  // namespace oracle
