#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <vector>

#include "cwf/circle.hpp"
#include "cwf/graph.hpp"
#include "cwf/linalg.hpp"
#include "cwf/mesh.hpp"
#include "cwf/topology.hpp"

namespace cwf {

enum class EnergyKind { W, W2, W2w };

inline const char* to_string(EnergyKind k) {
  switch (k) {
    case EnergyKind::W: return "W";
    case EnergyKind::W2: return "W2";
    default: return "W2w";
  }
}

struct EnergyValue {
  EnergyKind kind = EnergyKind::W;
  double value = 0.0;
  // normalization constant that was subtracted; absent for W and for
  // meshes with boundary, where no constant is defined
  std::optional<double> constant;
};

// One beta per interior edge, in MeshTopology edge order (boundary edges
// are skipped, so index with interior_edge_indices when mixing the two).
inline std::vector<double> angle_vector(const std::vector<V3>& positions,
                                        const MeshTopology& topo) {
  std::vector<double> betas;
  betas.reserve(topo.edges.size());
  for (const EdgeRecord& e : topo.edges) {
    if (e.boundary) continue;
    betas.push_back(beta(positions, e));
  }
  return betas;
}

inline std::vector<int> interior_edge_indices(const MeshTopology& topo) {
  std::vector<int> idx;
  idx.reserve(topo.edges.size());
  for (int e = 0; e < topo.edge_count(); ++e)
    if (!topo.edges[e].boundary) idx.push_back(e);
  return idx;
}

// c = 4 pi^2 1^t (M M^t)^{-1} 1, combinatorial
inline double normalization_c(const GraphData& graph) {
  const Eigen::VectorXd y = solve_weighted_signless_laplacian_ones(graph, false);
  return 4.0 * std::numbers::pi * std::numbers::pi * y.sum();
}

// c_w = 4 pi^2 1^t (M N^{-1} M^t)^{-1} 1
inline double normalization_cw(const GraphData& graph) {
  const Eigen::VectorXd y = solve_weighted_signless_laplacian_ones(graph, true);
  return 4.0 * std::numbers::pi * std::numbers::pi * y.sum();
}

// sum of beta over interior edges minus pi per interior vertex
inline EnergyValue energy_W(const std::vector<V3>& positions, const MeshTopology& topo) {
  double sum = 0.0;
  for (const double b : angle_vector(positions, topo)) sum += b;
  EnergyValue v;
  v.kind = EnergyKind::W;
  v.value = sum - std::numbers::pi * topo.interior_vertex_count();
  return v;
}

// sum of beta^2 minus c for closed meshes; plain sum (no constant) when
// the mesh has boundary or no graph is supplied
inline EnergyValue energy_W2(const std::vector<V3>& positions, const MeshTopology& topo,
                             const GraphData* graph = nullptr) {
  double sum = 0.0;
  for (const double b : angle_vector(positions, topo)) sum += b * b;
  EnergyValue v;
  v.kind = EnergyKind::W2;
  if (graph != nullptr && topo.closed()) {
    v.constant = normalization_c(*graph);
    v.value = sum - *v.constant;
  } else {
    v.value = sum;
  }
  return v;
}

// sum of (n_i + n_j) beta^2 minus c_w, weights from the full valences
inline EnergyValue energy_W2w(const std::vector<V3>& positions, const MeshTopology& topo,
                              const GraphData* graph = nullptr) {
  double sum = 0.0;
  for (int e = 0; e < topo.edge_count(); ++e) {
    const EdgeRecord& rec = topo.edges[e];
    if (rec.boundary) continue;
    const double b = beta(positions, rec);
    sum += (topo.valence[rec.i] + topo.valence[rec.j]) * b * b;
  }
  EnergyValue v;
  v.kind = EnergyKind::W2w;
  if (graph != nullptr && topo.closed()) {
    v.constant = normalization_cw(*graph);
    v.value = sum - *v.constant;
  } else {
    v.value = sum;
  }
  return v;
}

// Vertex form of the weighted quadratic energy: per vertex the squared
// angle sum plus half the pairwise squared angle differences. Agrees with
// the edge form for any edge weighting; kept as a debug evaluation mode.
inline double weighted_quadratic_vertex_form(const MeshTopology& topo,
                                             const std::vector<double>& interior_betas) {
  std::vector<double> full(topo.edge_count(), 0.0);
  {
    int k = 0;
    for (int e = 0; e < topo.edge_count(); ++e)
      if (!topo.edges[e].boundary) full[e] = interior_betas[k++];
  }
  std::vector<std::vector<double>> star(topo.vertex_count);
  for (int e = 0; e < topo.edge_count(); ++e) {
    const EdgeRecord& rec = topo.edges[e];
    star[rec.i].push_back(full[e]);
    star[rec.j].push_back(full[e]);
  }
  double total = 0.0;
  for (int v = 0; v < topo.vertex_count; ++v) {
    double s = 0.0;
    for (double b : star[v]) s += b;
    double diff = 0.0;
    for (double bi : star[v])
      for (double bj : star[v]) diff += (bi - bj) * (bi - bj);
    total += s * s + 0.5 * diff;
  }
  return total;
}

// edge form over arbitrary edge weights, for the identity check
inline double weighted_quadratic_edge_form(const MeshTopology& topo,
                                           const std::vector<double>& interior_betas) {
  double total = 0.0;
  int k = 0;
  for (int e = 0; e < topo.edge_count(); ++e) {
    const EdgeRecord& rec = topo.edges[e];
    if (rec.boundary) continue;
    const double b = interior_betas[k++];
    total += (topo.valence[rec.i] + topo.valence[rec.j]) * b * b;
  }
  return total;
}

inline EnergyValue evaluate_energy(const std::vector<V3>& positions, const MeshTopology& topo,
                                   EnergyKind kind, const GraphData* graph = nullptr) {
  switch (kind) {
    case EnergyKind::W: return energy_W(positions, topo);
    case EnergyKind::W2: return energy_W2(positions, topo, graph);
    default: return energy_W2w(positions, topo, graph);
  }
}

// Debug dump of the angle vector: edge endpoints, opposite vertices and
// beta normalized by pi, one row per interior edge.
inline void dump_angles_csv(std::ostream& out, const MeshTopology& topo,
                            const std::vector<double>& interior_betas) {
  out << "i,j,k,l,beta_over_pi\n";
  int k = 0;
  for (const EdgeRecord& e : topo.edges) {
    if (e.boundary) continue;
    out << e.i << ',' << e.j << ',' << e.k << ',' << e.l << ','
        << interior_betas[k++] / std::numbers::pi << '\n';
  }
}

}  // namespace cwf
