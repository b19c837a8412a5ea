#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cwf/cycles.hpp"
#include "cwf/graph.hpp"
#include "cwf/linalg.hpp"
#include "cwf/topology.hpp"

namespace cwf {

// M M^t: valence diagonal plus adjacency
inline Eigen::MatrixXd signless_laplacian(const GraphData& graph) {
  return weighted_signless_laplacian_dense(graph, false);
}

// Unique solution of (M M^t) lambda = 2 pi 1, or (M N^{-1} M^t) lambda =
// 2 pi 1 in the weighted case. The abstract angles are M^t lambda resp.
// N^{-1} M^t lambda, i.e. lambda_i + lambda_j per edge, divided by
// n_i + n_j when weighted.
inline Eigen::VectorXd solve_lambda(const GraphData& graph, bool weighted) {
  const Eigen::VectorXd rhs =
      2.0 * std::numbers::pi * Eigen::VectorXd::Ones(graph.vertex_count);
  return solve_weighted_signless_laplacian(graph, weighted, rhs);
}

inline Eigen::VectorXd abstract_angles_from_lambda(const GraphData& graph, bool weighted,
                                                   const Eigen::VectorXd& lambda) {
  Eigen::VectorXd angles(graph.edge_count());
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto [i, j] = graph.edges[e];
    angles[e] = lambda[i] + lambda[j];
    if (weighted) angles[e] /= graph.edge_weight[e];
  }
  return angles;
}

// Minimum-norm edge weights summing to 2 pi around every vertex:
// 2 pi M^t (M M^t)^{-1} 1, or its N-weighted counterpart.
inline Eigen::VectorXd abstract_angles(const GraphData& graph, bool weighted) {
  return abstract_angles_from_lambda(graph, weighted, solve_lambda(graph, weighted));
}

struct InequalityQPResult {
  Eigen::VectorXd x;            // minimizer of x^t Q x over Mx >= 2 pi 1
  Eigen::VectorXd multipliers;  // per vertex; zero for inactive constraints
  std::vector<bool> active;
  double kkt_residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Primal active-set solver for: minimize x^t Q x subject to M x >= 2 pi 1,
// Q = I (unweighted) or Q = N. Starts from the equality solution (always
// feasible since M beta(M) = 2 pi 1), then exchanges working-set rows by
// the usual multiplier-sign and blocking-constraint rules. The working-set
// subproblems reuse the same SPD structure as the lambda solve.
inline InequalityQPResult solve_inequality_qp(const GraphData& graph, bool weighted) {
  const int nv = graph.vertex_count;
  const int ne = graph.edge_count();
  const double two_pi = 2.0 * std::numbers::pi;

  Eigen::VectorXd qdiag = Eigen::VectorXd::Ones(ne);
  if (weighted)
    for (int e = 0; e < ne; ++e) qdiag[e] = graph.edge_weight[e];

  // weighted signless Laplacian restricted to a working set is just the
  // corresponding principal submatrix
  const Eigen::MatrixXd full = weighted_signless_laplacian_dense(graph, weighted);

  auto mul_M = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(nv);
    for (int e = 0; e < ne; ++e) {
      const auto [i, j] = graph.edges[e];
      out[i] += x[e];
      out[j] += x[e];
    }
    return out;
  };

  InequalityQPResult result;
  std::vector<bool> active(nv, true);

  Eigen::VectorXd x = abstract_angles(graph, weighted);
  const int max_iters = 4 * nv + 64;
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(nv);

  for (int iter = 0; iter < max_iters; ++iter) {
    result.iterations = iter + 1;

    std::vector<int> ws;
    for (int v = 0; v < nv; ++v)
      if (active[v]) ws.push_back(v);

    // equality solution on the working set
    Eigen::VectorXd x_star;
    mu.setZero();
    if (ws.empty()) {
      x_star = Eigen::VectorXd::Zero(ne);
    } else {
      Eigen::MatrixXd sub(ws.size(), ws.size());
      for (std::size_t a = 0; a < ws.size(); ++a)
        for (std::size_t b = 0; b < ws.size(); ++b) sub(a, b) = full(ws[a], ws[b]);
      Eigen::VectorXd rhs = Eigen::VectorXd::Constant(ws.size(), two_pi);
      Eigen::LLT<Eigen::MatrixXd> llt(sub);
      if (llt.info() != Eigen::Success)
        throw SolveError("active-set subproblem not positive definite");
      const Eigen::VectorXd lam = llt.solve(rhs);
      for (std::size_t a = 0; a < ws.size(); ++a) mu[ws[a]] = lam[a];
      x_star = Eigen::VectorXd::Zero(ne);
      for (int e = 0; e < ne; ++e) {
        const auto [i, j] = graph.edges[e];
        x_star[e] = (mu[i] + mu[j]) / qdiag[e];
      }
    }

    // feasibility of the subproblem solution on the inactive rows
    const Eigen::VectorXd slack = mul_M(x_star).array() - two_pi;
    double worst = 0.0;
    int blocking = -1;
    for (int v = 0; v < nv; ++v) {
      if (active[v]) continue;
      if (slack[v] < worst) {
        worst = slack[v];
        blocking = v;
      }
    }

    if (blocking < 0 || worst > -1e-11) {
      x = x_star;
      // optimal iff multipliers are non-negative
      int drop = -1;
      double most_negative = -1e-12;
      for (int v : ws)
        if (mu[v] < most_negative) {
          most_negative = mu[v];
          drop = v;
        }
      if (drop < 0) {
        result.converged = true;
        break;
      }
      active[drop] = false;
      continue;
    }

    // partial step until the blocking constraint becomes active
    const Eigen::VectorXd mx = mul_M(x);
    const Eigen::VectorXd mx_star = mul_M(x_star);
    double alpha = 1.0;
    int add = -1;
    for (int v = 0; v < nv; ++v) {
      if (active[v]) continue;
      const double target = two_pi;
      const double num = mx[v] - target;
      const double den = mx[v] - mx_star[v];
      if (den > 1e-15) {
        const double a = num / den;
        if (a < alpha) {
          alpha = a;
          add = v;
        }
      }
    }
    x = x + alpha * (x_star - x);
    if (add >= 0) active[add] = true;
  }

  // KKT residual: primal feasibility, stationarity and dual sign
  const Eigen::VectorXd slack = mul_M(x).array() - two_pi;
  double primal = std::max(0.0, -slack.minCoeff());
  Eigen::VectorXd stat = 2.0 * qdiag.cwiseProduct(x);
  for (int e = 0; e < ne; ++e) {
    const auto [i, j] = graph.edges[e];
    stat[e] -= 2.0 * (mu[i] + mu[j]);
  }
  double dual = 0.0;
  for (int v = 0; v < nv; ++v) dual = std::max(dual, -mu[v]);
  double comp = 0.0;
  for (int v = 0; v < nv; ++v) comp = std::max(comp, std::abs(mu[v] * slack[v]));
  result.kkt_residual =
      std::max({primal, stat.cwiseAbs().maxCoeff(), dual, comp});
  result.x = x;
  result.multipliers = mu;
  result.active = active;
  if (result.kkt_residual > 1e-8) result.converged = false;
  return result;
}

enum class PredictedType { ConvexInscribedUnique, CollapseExpected, Indeterminate };

inline const char* to_string(PredictedType t) {
  switch (t) {
    case PredictedType::ConvexInscribedUnique: return "convex-inscribed-unique";
    case PredictedType::CollapseExpected: return "collapse-expected";
    default: return "indeterminate";
  }
}

struct QPReport {
  bool weighted = false;
  std::vector<double> lambda;           // per vertex, radians
  std::vector<double> angles;           // abstract angles per edge, radians
  bool lambda_nonneg = false;           // min lambda > -1e-10
  bool lambda_borderline = false;       // a lambda entry sits in (-1e-10, 1e-10]
  bool angles_in_open_range = false;    // 0 < angle < pi componentwise
  bool rivin_checked = false;           // cycle test ran (needs positive angles)
  bool rivin_cycle_ok = false;
  bool rivin_exhaustive = true;
  double min_nonfacial_cycle_sum = std::numeric_limits<double>::quiet_NaN();
  CycleCertificate min_cycle;
  PredictedType predicted = PredictedType::Indeterminate;
};

// Assembles the quadratic-program analysis of a closed simplicial
// polyhedron graph: lambda and the abstract angles, the component sign
// checks and the cycle condition. The prediction follows the theory:
// all three checks pass -> the angles are realized by a convex inscribed
// minimizer, unique up to conformal symmetry; a failing cycle check or a
// non-positive abstract angle -> edges are expected to collapse under
// minimization; a negative lambda alone is inconclusive (the sign
// condition is sufficient, not necessary).
inline QPReport check_realizability(const MeshTopology& topo, const GraphData& graph,
                                    bool weighted) {
  if (!topo.closed() || topo.euler_characteristic != 2)
    throw MeshError("realizability analysis applies to closed genus-0 meshes only");

  QPReport report;
  report.weighted = weighted;

  const Eigen::VectorXd lam = solve_lambda(graph, weighted);
  const Eigen::VectorXd ang = abstract_angles_from_lambda(graph, weighted, lam);
  report.lambda.assign(lam.data(), lam.data() + lam.size());
  report.angles.assign(ang.data(), ang.data() + ang.size());

  constexpr double kSignBand = 1e-10;
  const double lam_min = lam.minCoeff();
  report.lambda_nonneg = lam_min > -kSignBand;
  report.lambda_borderline = lam_min > -kSignBand && lam_min <= kSignBand;

  const double ang_min = ang.minCoeff();
  const double ang_max = ang.maxCoeff();
  report.angles_in_open_range =
      ang_min > kSignBand && ang_max < std::numbers::pi - kSignBand;

  if (ang_min > 0.0) {
    const DualGraph dual = dual_graph(topo);
    std::vector<double> edge_angles(report.angles.begin(), report.angles.end());
    const RivinCheckResult rivin = rivin_cycle_check(topo, dual, edge_angles);
    report.rivin_checked = true;
    report.rivin_cycle_ok = rivin.ok;
    report.rivin_exhaustive = rivin.exhaustive;
    if (rivin.found_cycle) {
      report.min_nonfacial_cycle_sum = rivin.min_nonfacial.weight_sum;
      report.min_cycle = rivin.min_nonfacial;
    }
  }

  if (ang_min <= kSignBand || (report.rivin_checked && !report.rivin_cycle_ok)) {
    report.predicted = PredictedType::CollapseExpected;
  } else if (report.lambda_nonneg && report.angles_in_open_range &&
             report.rivin_cycle_ok) {
    report.predicted = PredictedType::ConvexInscribedUnique;
  } else {
    report.predicted = PredictedType::Indeterminate;
  }
  return report;
}

}  // namespace cwf
