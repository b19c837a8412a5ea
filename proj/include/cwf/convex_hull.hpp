#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "cwf/mesh.hpp"
#include "cwf/topology.hpp"

namespace cwf {

struct HullError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace hull_detail {

struct HullFace {
  int a, b, c;
  bool alive = true;
};

inline double orient_det(const V3& pa, const V3& pb, const V3& pc, const V3& p) {
  return dot(p - pa, cross(pb - pa, pc - pa));
}

}  // namespace hull_detail

// Triangulated boundary of the convex hull, outward orientation.
// Incremental insertion in input order; the visibility predicate treats
// determinants within 1e-12 of zero (scaled by the cube of the bounding
// box diagonal) as coplanar. Coplanar faces join the visible region only
// when connected to a strictly visible face, which keeps the horizon a
// single cycle and triangulates flat patches such as cube faces.
inline TriangleMesh convex_hull(const std::vector<V3>& points) {
  using hull_detail::HullFace;
  using hull_detail::orient_det;

  const int n = static_cast<int>(points.size());
  if (n < 4) throw HullError("convex hull needs at least 4 points");

  const double diag = bounding_box_diagonal(points);
  if (diag == 0.0) throw HullError("degenerate input: all points coincide");
  const double eps_det = 1e-12 * diag * diag * diag;

  // initial simplex: extreme points, deterministic tie-breaking by index
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    const V3 &p = points[i], &q = points[i0];
    if (std::tie(p.x, p.y, p.z) < std::tie(q.x, q.y, q.z)) i0 = i;
  }
  int i1 = -1;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = norm2(points[i] - points[i0]);
    if (d > best) { best = d; i1 = i; }
  }
  if (best <= 0.0) throw HullError("degenerate input: all points coincide");
  int i2 = -1;
  best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = norm2(cross(points[i1] - points[i0], points[i] - points[i0]));
    if (d > best) { best = d; i2 = i; }
  }
  if (best <= eps_det * eps_det) throw HullError("degenerate input: points are collinear");
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = orient_det(points[i0], points[i1], points[i2], points[i]);
    if (std::abs(d) > std::abs(best)) { best = d; i3 = i; }
  }
  if (std::abs(best) <= eps_det) throw HullError("degenerate input: points are coplanar");
  if (best > 0.0) std::swap(i1, i2);  // make (i0,i1,i2) face away from i3

  std::vector<HullFace> faces = {{i0, i1, i2}, {i0, i2, i3}, {i2, i1, i3}, {i1, i0, i3}};

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int p : order) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;

    // strictly visible faces seed the region
    std::vector<double> det(faces.size(), 0.0);
    std::vector<int> state(faces.size(), 0);  // 0 untouched, 1 visible
    std::vector<int> stack;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      det[f] = orient_det(points[faces[f].a], points[faces[f].b], points[faces[f].c], points[p]);
      if (det[f] > eps_det) { state[f] = 1; stack.push_back(static_cast<int>(f)); }
    }
    if (stack.empty()) continue;  // inside or on the hull

    // adjacency over alive faces for the flood fill
    std::map<std::pair<int, int>, std::pair<int, int>> side;  // directed edge -> (face, slot)
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      const int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int c = 0; c < 3; ++c)
        side[{vs[c], vs[(c + 1) % 3]}] = {static_cast<int>(f), c};
    }
    auto twin_face = [&side](int u, int v) {
      auto it = side.find({v, u});
      return it == side.end() ? -1 : it->second.first;
    };

    // grow across coplanar neighbors so the removed region stays connected
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      const int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int c = 0; c < 3; ++c) {
        const int g = twin_face(vs[c], vs[(c + 1) % 3]);
        if (g >= 0 && state[g] == 0 && det[g] > -eps_det) {
          state[g] = 1;
          stack.push_back(g);
        }
      }
    }

    // horizon: directed edges of visible faces whose twin is kept
    std::vector<std::pair<int, int>> horizon;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive || state[f] != 1) continue;
      const int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
      for (int c = 0; c < 3; ++c) {
        const int u = vs[c], v = vs[(c + 1) % 3];
        const int g = twin_face(u, v);
        if (g < 0 || state[g] != 1) horizon.emplace_back(u, v);
      }
      faces[f].alive = false;
    }
    for (const auto& [u, v] : horizon) faces.push_back({u, v, p});
  }

  // compact to used vertices, preserving input index order
  std::vector<int> remap(n, -1);
  std::vector<int> used;
  for (const HullFace& f : faces) {
    if (!f.alive) continue;
    for (int v : {f.a, f.b, f.c})
      if (remap[v] < 0) { remap[v] = 0; used.push_back(v); }
  }
  std::sort(used.begin(), used.end());
  for (std::size_t i = 0; i < used.size(); ++i) remap[used[i]] = static_cast<int>(i);

  TriangleMesh mesh;
  mesh.positions.reserve(used.size());
  for (int v : used) mesh.positions.push_back(points[v]);
  for (const HullFace& f : faces)
    if (f.alive) mesh.faces.push_back({remap[f.a], remap[f.b], remap[f.c]});

  // the construction is only trusted after the manifold check passes
  const MeshTopology topo = build_topology(mesh);
  if (!topo.closed() || topo.euler_characteristic != 2)
    throw HullError("hull construction produced a non-spherical surface");
  if (signed_volume6(mesh) <= 0.0)
    throw HullError("hull construction produced an inward orientation");
  return mesh;
}

}  // namespace cwf
