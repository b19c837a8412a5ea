#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <stdexcept>
#include <vector>

#include "cwf/graph.hpp"

namespace cwf {

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// M Q^{-1} M^t for Q = I (unweighted) or Q = N (weighted): diagonal entry
// sum of 1/q_e over edges at the vertex, off-diagonal 1/q_e per edge.
// Unweighted this is the signless Laplacian, valence diagonal plus
// adjacency.
inline Eigen::MatrixXd weighted_signless_laplacian_dense(const GraphData& g, bool weighted) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.vertex_count, g.vertex_count);
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [i, j] = g.edges[e];
    const double w = weighted ? 1.0 / g.edge_weight[e] : 1.0;
    a(i, i) += w;
    a(j, j) += w;
    a(i, j) += w;
    a(j, i) += w;
  }
  return a;
}

inline Eigen::SparseMatrix<double> weighted_signless_laplacian_sparse(const GraphData& g,
                                                                      bool weighted) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(4) * g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [i, j] = g.edges[e];
    const double w = weighted ? 1.0 / g.edge_weight[e] : 1.0;
    trips.emplace_back(i, i, w);
    trips.emplace_back(j, j, w);
    trips.emplace_back(i, j, w);
    trips.emplace_back(j, i, w);
  }
  Eigen::SparseMatrix<double> a(g.vertex_count, g.vertex_count);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

// Solves (M Q^{-1} M^t) y = rhs by a symmetric positive definite
// factorization, dense below 500 vertices and sparse above. Throws when
// the factorization fails or the residual exceeds 1e-10 relative.
inline Eigen::VectorXd solve_weighted_signless_laplacian(const GraphData& g, bool weighted,
                                                         const Eigen::VectorXd& rhs) {
  const int n = g.vertex_count;
  if (rhs.size() != n) throw SolveError("rhs size mismatch");
  Eigen::VectorXd y;
  if (n < 500) {
    const Eigen::MatrixXd a = weighted_signless_laplacian_dense(g, weighted);
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
      throw SolveError("signless Laplacian is not positive definite");
    y = llt.solve(rhs);
    const double resid = (a * y - rhs).norm();
    if (resid > 1e-10 * std::max(1.0, rhs.norm()))
      throw SolveError("signless Laplacian solve residual too large");
  } else {
    const Eigen::SparseMatrix<double> a = weighted_signless_laplacian_sparse(g, weighted);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
    if (ldlt.info() != Eigen::Success)
      throw SolveError("sparse signless Laplacian factorization failed");
    y = ldlt.solve(rhs);
    const double resid = (a * y - rhs).norm();
    if (resid > 1e-10 * std::max(1.0, rhs.norm()))
      throw SolveError("sparse signless Laplacian solve residual too large");
  }
  return y;
}

inline Eigen::VectorXd solve_weighted_signless_laplacian_ones(const GraphData& g,
                                                              bool weighted) {
  return solve_weighted_signless_laplacian(
      g, weighted, Eigen::VectorXd::Ones(g.vertex_count));
}

}  // namespace cwf
