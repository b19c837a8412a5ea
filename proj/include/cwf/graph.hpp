#pragma once

#include <vector>

#include "cwf/topology.hpp"

namespace cwf {

// Combinatorial data of a closed mesh used by the quadratic-program
// analysis: the vertex/edge incidence structure and the per-edge weights
// n_i + n_j. The incidence matrix M has one column per edge with 1-entries
// in the rows of its endpoints; N is the diagonal matrix of edge weights.
struct GraphData {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // endpoint pairs, topology order
  std::vector<int> valence;                // n_i per vertex
  std::vector<double> edge_weight;         // n_i + n_j per edge

  int edge_count() const { return static_cast<int>(edges.size()); }
};

inline GraphData incidence_and_weights(const MeshTopology& topo) {
  if (!topo.closed())
    throw MeshError("incidence_and_weights requires a closed mesh");
  GraphData g;
  g.vertex_count = topo.vertex_count;
  g.valence = topo.valence;
  g.edges.reserve(topo.edges.size());
  g.edge_weight.reserve(topo.edges.size());
  for (const EdgeRecord& e : topo.edges) {
    g.edges.emplace_back(e.i, e.j);
    g.edge_weight.push_back(static_cast<double>(topo.valence[e.i] + topo.valence[e.j]));
  }
  return g;
}

}  // namespace cwf
