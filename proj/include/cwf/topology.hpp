#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cwf/mesh.hpp"

namespace cwf {

// An edge together with the one or two oriented faces around it. For an
// interior edge the incident faces are (i,j,k) and (j,i,l) up to cyclic
// rotation; a boundary edge only has the first.
struct EdgeRecord {
  int i = -1, j = -1;    // endpoints, ordered so that (i,j,k) is a face
  int k = -1, l = -1;    // opposite vertices (l = -1 on the boundary)
  int f1 = -1, f2 = -1;  // incident faces (f2 = -1 on the boundary)
  bool boundary = false;

  bool interior() const { return !boundary; }
};

struct MeshTopology {
  std::vector<EdgeRecord> edges;   // sorted by (min(i,j), max(i,j))
  std::vector<int> valence;        // edges incident with each vertex
  std::vector<bool> on_boundary;   // per vertex
  int vertex_count = 0;
  int face_count = 0;
  int euler_characteristic = 0;
  int boundary_edge_count = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int interior_edge_count() const { return edge_count() - boundary_edge_count; }
  bool closed() const { return boundary_edge_count == 0; }

  int interior_vertex_count() const {
    int n = 0;
    for (bool b : on_boundary) n += b ? 0 : 1;
    return n;
  }
};

// Extracts edges, valences and the Euler characteristic. Throws on
// non-manifold edges (more than two incident faces) and on orientation
// mismatches (an undirected edge traversed twice in the same direction).
inline MeshTopology build_topology(const TriangleMesh& mesh) {
  validate_face_indices(mesh);

  struct Side {
    int face = -1;
    int opposite = -1;
  };
  // key: undirected edge (a,b) with a < b; value: the directed sides seen
  std::map<std::pair<int, int>, std::array<Side, 2>> sides;  // [0]: a->b, [1]: b->a

  for (int f = 0; f < mesh.face_count(); ++f) {
    const Face& face = mesh.faces[f];
    for (int c = 0; c < 3; ++c) {
      const int u = face[c];
      const int v = face[(c + 1) % 3];
      const int w = face[(c + 2) % 3];
      const int a = std::min(u, v), b = std::max(u, v);
      auto& rec = sides[{a, b}];
      const int dir = (u == a) ? 0 : 1;
      if (rec[dir].face >= 0)
        throw MeshError("inconsistent orientation or non-manifold edge (" +
                        std::to_string(u) + "," + std::to_string(v) +
                        ") seen twice in the same direction");
      rec[dir] = {f, w};
    }
  }

  MeshTopology topo;
  topo.vertex_count = mesh.vertex_count();
  topo.face_count = mesh.face_count();
  topo.valence.assign(mesh.vertex_count(), 0);
  topo.on_boundary.assign(mesh.vertex_count(), false);
  topo.edges.reserve(sides.size());

  for (const auto& [key, rec] : sides) {
    EdgeRecord e;
    if (rec[0].face >= 0) {
      e.i = key.first;
      e.j = key.second;
      e.k = rec[0].opposite;
      e.f1 = rec[0].face;
      if (rec[1].face >= 0) {
        e.l = rec[1].opposite;
        e.f2 = rec[1].face;
      } else {
        e.boundary = true;
      }
    } else {
      // only the reversed direction exists: boundary edge j->i
      e.i = key.second;
      e.j = key.first;
      e.k = rec[1].opposite;
      e.f1 = rec[1].face;
      e.boundary = true;
    }
    topo.valence[e.i]++;
    topo.valence[e.j]++;
    if (e.boundary) {
      topo.boundary_edge_count++;
      topo.on_boundary[e.i] = true;
      topo.on_boundary[e.j] = true;
    }
    topo.edges.push_back(e);
  }

  topo.euler_characteristic =
      topo.vertex_count - topo.edge_count() + topo.face_count;
  return topo;
}

// Graph of the dual polyhedron: one node per face, one arc per interior
// edge. For a closed simplicial surface this graph is 3-regular and its
// facial cycles are the primal vertex stars.
struct DualGraph {
  struct Arc {
    int u = -1, v = -1;   // dual nodes = primal faces
    int edge = -1;        // index into MeshTopology::edges
  };
  int node_count = 0;
  std::vector<Arc> arcs;
  std::vector<std::vector<std::pair<int, int>>> adjacency;  // node -> (neighbor, arc)
};

inline DualGraph dual_graph(const MeshTopology& topo) {
  if (!topo.closed()) throw MeshError("dual_graph requires a closed mesh");
  DualGraph g;
  g.node_count = topo.face_count;
  g.adjacency.assign(topo.face_count, {});
  for (int e = 0; e < topo.edge_count(); ++e) {
    const EdgeRecord& rec = topo.edges[e];
    DualGraph::Arc arc{rec.f1, rec.f2, e};
    const int a = static_cast<int>(g.arcs.size());
    g.arcs.push_back(arc);
    g.adjacency[arc.u].emplace_back(arc.v, a);
    g.adjacency[arc.v].emplace_back(arc.u, a);
  }
  return g;
}

}  // namespace cwf
