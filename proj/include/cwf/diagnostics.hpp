#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "cwf/energy.hpp"
#include "cwf/graph.hpp"
#include "cwf/mesh.hpp"
#include "cwf/topology.hpp"

namespace cwf {

struct SphereFit {
  V3 center;
  double radius = 0.0;
  double max_relative_deviation = 0.0;  // max | |p-c| - r | / r
};

// Algebraic least-squares sphere: minimize sum (|p|^2 - 2 c.p - k)^2 over
// center c and k = r^2 - |c|^2, then measure the deviation geometrically.
inline SphereFit fit_sphere(const std::vector<V3>& positions) {
  const int n = static_cast<int>(positions.size());
  if (n < 4) throw GeometryError("sphere fit needs at least 4 points");
  Eigen::MatrixXd a(n, 4);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const V3& p = positions[i];
    a(i, 0) = 2.0 * p.x;
    a(i, 1) = 2.0 * p.y;
    a(i, 2) = 2.0 * p.z;
    a(i, 3) = 1.0;
    b[i] = norm2(p);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 4)
    throw GeometryError("sphere fit degenerate (coplanar points)");
  const Eigen::Vector4d sol = qr.solve(b);
  SphereFit fit;
  fit.center = {sol[0], sol[1], sol[2]};
  const double r2 = sol[3] + norm2(fit.center);
  if (!(r2 > 0.0)) throw GeometryError("sphere fit produced non-positive radius");
  fit.radius = std::sqrt(r2);
  for (const V3& p : positions) {
    const double dev = std::abs(dist(p, fit.center) - fit.radius) / fit.radius;
    fit.max_relative_deviation = std::max(fit.max_relative_deviation, dev);
  }
  return fit;
}

// True iff every face plane has all non-face vertices on its inner side
// (signed distance against the outward normal at most tol * bbox diag).
// The global orientation sign comes from the enclosed volume, so inward-
// oriented input is handled too.
inline bool is_convex_position(const TriangleMesh& mesh, double tolerance = 1e-9,
                               std::vector<int>* violating_faces = nullptr) {
  if (violating_faces) violating_faces->clear();
  const double diag = bounding_box_diagonal(mesh.positions);
  const double tol = tolerance * diag;
  const double orient = signed_volume6(mesh) >= 0.0 ? 1.0 : -1.0;
  bool ok = true;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    const V3& a = mesh.positions[face[0]];
    const V3 n = cross(mesh.positions[face[1]] - a, mesh.positions[face[2]] - a);
    const double nn = norm(n);
    if (nn == 0.0) throw GeometryError("degenerate face in convexity test");
    const V3 unit = (orient / nn) * n;
    bool face_ok = true;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      if (v == face[0] || v == face[1] || v == face[2]) continue;
      if (dot(mesh.positions[v] - a, unit) > tol) {
        face_ok = false;
        break;
      }
    }
    if (!face_ok) {
      ok = false;
      if (violating_faces) violating_faces->push_back(static_cast<int>(f));
      else break;
    }
  }
  return ok;
}

struct DelaunayCheck {
  bool ok = false;
  bool inscribed = false;
  bool convex = false;
  double sphere_deviation = 0.0;
  std::vector<int> violating_faces;  // convexity violations, when inscribed
};

// For an inscribed vertex set, convexity of the triangulation is the
// Delaunay property on the sphere; an inscribed but non-convex mesh is
// exactly the non-Delaunay outcome and gets its violating faces listed.
inline DelaunayCheck is_delaunay_on_sphere(const TriangleMesh& mesh,
                                           const MeshTopology& topo,
                                           double inscribed_tolerance = 1e-4) {
  if (!topo.closed()) throw MeshError("Delaunay check requires a closed mesh");
  DelaunayCheck check;
  const SphereFit fit = fit_sphere(mesh.positions);
  check.sphere_deviation = fit.max_relative_deviation;
  check.inscribed = fit.max_relative_deviation < inscribed_tolerance;
  check.convex = is_convex_position(mesh, 1e-9, &check.violating_faces);
  check.ok = check.inscribed && check.convex;
  return check;
}

// Radii of a torus-of-revolution mesh with generate_torus connectivity:
// the m minor-loop centroids determine the major circle (least-squares
// plane + in-plane circle fit); the minor radius is the mean distance of
// the vertices to that circle.
inline double torus_radii_ratio(const TriangleMesh& mesh, int m, int n) {
  if (m < 3 || n < 3 || mesh.vertex_count() != m * n)
    throw MeshError("mesh does not carry the m x n torus grid structure");

  std::vector<V3> centroids(m);
  for (int a = 0; a < m; ++a) {
    V3 c{};
    for (int b = 0; b < n; ++b) c += mesh.positions[a * n + b];
    centroids[a] = c / static_cast<double>(n);
  }

  // least-squares plane through the centroids
  V3 mean{};
  for (const V3& c : centroids) mean += c;
  mean = mean / static_cast<double>(m);
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const V3& c : centroids) {
    const Eigen::Vector3d d(c.x - mean.x, c.y - mean.y, c.z - mean.z);
    cov += d * d.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Vector3d nrm = eig.eigenvectors().col(0);  // smallest eigenvalue
  const Eigen::Vector3d u = eig.eigenvectors().col(2);
  const Eigen::Vector3d v = eig.eigenvectors().col(1);
  const V3 axis{nrm[0], nrm[1], nrm[2]};
  const V3 e1{u[0], u[1], u[2]};
  const V3 e2{v[0], v[1], v[2]};

  // algebraic circle fit in plane coordinates
  Eigen::MatrixXd a(m, 3);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const V3 d = centroids[i] - mean;
    const double px = dot(d, e1), py = dot(d, e2);
    a(i, 0) = 2.0 * px;
    a(i, 1) = 2.0 * py;
    a(i, 2) = 1.0;
    b[i] = px * px + py * py;
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(b);
  const double major_radius = std::sqrt(sol[2] + sol[0] * sol[0] + sol[1] * sol[1]);
  const V3 circle_center = mean + sol[0] * e1 + sol[1] * e2;

  double minor_sum = 0.0;
  for (const V3& p : mesh.positions) {
    const V3 d = p - circle_center;
    const double h = dot(d, axis);
    const V3 radial = d - h * axis;
    const double rho = norm(radial);
    minor_sum += std::hypot(rho - major_radius, h);
  }
  const double minor_radius = minor_sum / mesh.vertex_count();
  if (!(minor_radius > 0.0)) throw GeometryError("degenerate torus geometry");
  return major_radius / minor_radius;
}

struct BetaStats {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

inline BetaStats beta_statistics(std::vector<double> betas) {
  BetaStats s;
  if (betas.empty()) return s;
  std::sort(betas.begin(), betas.end());
  auto at = [&](double q) {
    const double pos = q * (betas.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, betas.size() - 1);
    const double frac = pos - lo;
    return betas[lo] * (1.0 - frac) + betas[hi] * frac;
  };
  s.min = betas.front();
  s.q1 = at(0.25);
  s.median = at(0.5);
  s.q3 = at(0.75);
  s.max = betas.back();
  return s;
}

struct DiagnosticsReport {
  double energy_w = 0.0;
  std::optional<double> energy_w2;   // with constant; absent for boundary meshes
  std::optional<double> energy_w2w;
  double sum_beta_sq = 0.0;          // raw sums, always defined
  double sum_weighted_beta_sq = 0.0;
  SphereFit sphere;
  bool inscribed = false;
  bool convex = false;
  bool delaunay = false;
  std::vector<int> delaunay_violations;
  BetaStats beta;
  std::optional<double> torus_ratio;
  bool closed = false;
  int euler_characteristic = 0;
};

inline DiagnosticsReport report(const TriangleMesh& mesh, const MeshTopology& topo,
                                const GraphData* graph = nullptr,
                                double inscribed_tolerance = 1e-4) {
  DiagnosticsReport rep;
  rep.closed = topo.closed();
  rep.euler_characteristic = topo.euler_characteristic;

  const std::vector<double> betas = angle_vector(mesh.positions, topo);
  rep.beta = beta_statistics(betas);
  double sum = 0.0, sum_sq = 0.0;
  for (double b : betas) {
    sum += b;
    sum_sq += b * b;
  }
  rep.energy_w = sum - std::numbers::pi * topo.interior_vertex_count();
  rep.sum_beta_sq = sum_sq;
  rep.sum_weighted_beta_sq = weighted_quadratic_edge_form(topo, betas);
  if (rep.closed && graph != nullptr) {
    rep.energy_w2 = sum_sq - normalization_c(*graph);
    rep.energy_w2w = rep.sum_weighted_beta_sq - normalization_cw(*graph);
  }

  rep.sphere = fit_sphere(mesh.positions);
  rep.inscribed = rep.sphere.max_relative_deviation < inscribed_tolerance;
  if (rep.closed) {
    const DelaunayCheck check = is_delaunay_on_sphere(mesh, topo, inscribed_tolerance);
    rep.convex = check.convex;
    rep.delaunay = check.ok;
    rep.delaunay_violations = check.violating_faces;
  } else {
    rep.convex = false;
    rep.delaunay = false;
  }
  return rep;
}

}  // namespace cwf
