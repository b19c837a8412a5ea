#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>
#include <set>
#include <vector>

#include "cwf/energy.hpp"
#include "cwf/gradient.hpp"
#include "cwf/mesh.hpp"
#include "cwf/topology.hpp"

namespace cwf {

enum class OptStatus { Converged, StepLimit, Stalled, Degenerated };

inline const char* to_string(OptStatus s) {
  switch (s) {
    case OptStatus::Converged: return "converged";
    case OptStatus::StepLimit: return "step-limit";
    case OptStatus::Stalled: return "stalled";
    default: return "degenerated";
  }
}

struct OptimizationConfig {
  EnergyKind kind = EnergyKind::W2;
  int max_steps = 4000;
  double gradient_tolerance = 1e-10;
  int history_size = 8;
  double w_threshold = kDefaultWThreshold;  // only used for kind W
  std::vector<int> fixed_vertices;
  int trace_interval = 1;
};

struct TraceRecord {
  int step = 0;
  double energy = 0.0;  // includes the normalization constant when defined
  double gradient_norm = 0.0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  double bbox_diagonal = 0.0;
  double seconds = 0.0;
};

struct MinimizeResult {
  TriangleMesh mesh;
  std::vector<TraceRecord> trace;
  OptStatus status = OptStatus::StepLimit;
  int steps = 0;
  double final_energy = 0.0;
  double final_gradient_norm = 0.0;
  std::vector<int> collapsed_edges;  // edge indices, when degenerated
};

// All boundary vertices plus every vertex adjacent to one: fixing this
// collar pins the boundary curve and approximates fixed tangent planes.
inline std::vector<int> fix_boundary_collar(const MeshTopology& topo) {
  if (topo.closed()) throw MeshError("mesh has no boundary to fix");
  std::set<int> fixed;
  for (int v = 0; v < topo.vertex_count; ++v)
    if (topo.on_boundary[v]) fixed.insert(v);
  for (const EdgeRecord& e : topo.edges) {
    if (topo.on_boundary[e.i]) fixed.insert(e.j);
    if (topo.on_boundary[e.j]) fixed.insert(e.i);
  }
  return {fixed.begin(), fixed.end()};
}

inline void project_gradient(GradientField& grad, const std::vector<int>& fixed) {
  for (int v : fixed) grad[v] = V3{};
}

namespace optimize_detail {

inline double dot_fields(const std::vector<V3>& a, const std::vector<V3>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += dot(a[i], b[i]);
  return s;
}

inline double norm_field(const std::vector<V3>& a) {
  return std::sqrt(dot_fields(a, a));
}

inline void axpy(double alpha, const std::vector<V3>& x, std::vector<V3>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline double min_quality(const std::vector<V3>& pos, const TriangleMesh& mesh) {
  double q = std::numeric_limits<double>::infinity();
  for (const Face& f : mesh.faces)
    q = std::min(q, triangle_quality(pos[f[0]], pos[f[1]], pos[f[2]]));
  return q;
}

}  // namespace optimize_detail

// Limited-memory quasi-Newton minimization of the chosen energy over the
// vertex positions. Two-loop recursion over the curvature history, a
// backtracking line search with quadratic interpolation and the standard
// 1e-4 sufficient-decrease condition. Fixed vertices never move; their
// gradient entries are zeroed before every use so the curvature pairs
// stay in the free subspace. Triangle collapse ends the run with status
// Degenerated instead of producing non-finite energies.
inline MinimizeResult minimize(const TriangleMesh& mesh, const MeshTopology& topo,
                               const GraphData* graph, const OptimizationConfig& config) {
  using namespace optimize_detail;
  using clock = std::chrono::steady_clock;

  if (config.max_steps < 1 || config.history_size < 1 ||
      !(config.gradient_tolerance > 0.0))
    throw std::invalid_argument("invalid optimization config");
  for (int v : config.fixed_vertices)
    if (v < 0 || v >= mesh.vertex_count())
      throw std::invalid_argument("fixed vertex index out of range");

  const auto t0 = clock::now();
  const double constant = [&]() -> double {
    if (config.kind == EnergyKind::W)
      return topo.interior_vertex_count() * std::numbers::pi;
    if (graph == nullptr || !topo.closed()) return 0.0;
    return config.kind == EnergyKind::W2 ? normalization_c(*graph)
                                         : normalization_cw(*graph);
  }();

  MinimizeResult result;
  result.mesh = mesh;
  std::vector<V3>& x = result.mesh.positions;

  auto seconds_since_start = [&]() {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  auto record = [&](int step, const EnergyAndGradient& eg, double gnorm) {
    TraceRecord r;
    r.step = step;
    r.energy = eg.energy - constant;
    r.gradient_norm = gnorm;
    r.beta_min = eg.beta_min;
    r.beta_max = eg.beta_max;
    r.bbox_diagonal = bounding_box_diagonal(x);
    r.seconds = seconds_since_start();
    result.trace.push_back(r);
  };

  auto collect_collapsed = [&]() {
    constexpr double kNearCollapse = 1e-9;  // quality = area / longest_edge^2
    std::set<int> edges;
    for (int e = 0; e < topo.edge_count(); ++e) {
      const EdgeRecord& rec = topo.edges[e];
      const bool bad1 = triangle_quality(x[rec.i], x[rec.j], x[rec.k]) < kNearCollapse;
      const bool bad2 = !rec.boundary &&
                        triangle_quality(x[rec.j], x[rec.i], x[rec.l]) < kNearCollapse;
      if (bad1 || bad2) edges.insert(e);
    }
    result.collapsed_edges.assign(edges.begin(), edges.end());
  };

  if (min_quality(x, result.mesh) < kDegeneracyAreaFactor)
    throw GeometryError("input mesh contains degenerate triangles");

  EnergyAndGradient eg = energy_and_gradient(x, topo, config.kind, config.w_threshold);
  project_gradient(eg.gradient, config.fixed_vertices);
  double gnorm = norm_field(eg.gradient);
  record(0, eg, gnorm);

  std::deque<std::pair<std::vector<V3>, std::vector<V3>>> history;  // (s, y)
  std::vector<V3> direction(x.size());

  int step = 0;
  result.status = OptStatus::StepLimit;
  while (step < config.max_steps) {
    if (gnorm <= config.gradient_tolerance) {
      result.status = OptStatus::Converged;
      break;
    }

    // two-loop recursion
    direction = eg.gradient;
    std::vector<double> alpha(history.size());
    for (int h = static_cast<int>(history.size()) - 1; h >= 0; --h) {
      const auto& [s, yv] = history[h];
      const double rho = 1.0 / dot_fields(yv, s);
      alpha[h] = rho * dot_fields(s, direction);
      axpy(-alpha[h], yv, direction);
    }
    if (!history.empty()) {
      const auto& [s, yv] = history.back();
      const double gamma = dot_fields(s, yv) / dot_fields(yv, yv);
      for (V3& d : direction) d *= gamma;
    }
    for (std::size_t h = 0; h < history.size(); ++h) {
      const auto& [s, yv] = history[h];
      const double rho = 1.0 / dot_fields(yv, s);
      const double beta_h = rho * dot_fields(yv, direction);
      axpy(alpha[h] - beta_h, s, direction);
    }
    for (V3& d : direction) d = -d;

    double dir_deriv = dot_fields(eg.gradient, direction);
    if (dir_deriv >= 0.0) {
      // not a descent direction; fall back to steepest descent
      direction = eg.gradient;
      for (V3& d : direction) d = -d;
      dir_deriv = -dot_fields(eg.gradient, eg.gradient);
      history.clear();
    }

    // backtracking line search with quadratic interpolation
    const double f0 = eg.energy;
    double step_len = history.empty() ? 1.0 / std::max(1.0, norm_field(direction)) : 1.0;
    constexpr double kSufficientDecrease = 1e-4;
    constexpr int kMaxBacktracks = 48;
    std::vector<V3> candidate(x.size());
    double f_new = f0;
    bool accepted = false;
    bool saw_degenerate = false;
    for (int ls = 0; ls < kMaxBacktracks; ++ls) {
      candidate = x;
      axpy(step_len, direction, candidate);
      double f_try = std::numeric_limits<double>::infinity();
      bool degenerate = false;
      try {
        f_try = raw_energy(candidate, topo, config.kind);
      } catch (const GeometryError&) {
        degenerate = true;
        saw_degenerate = true;
      }
      if (!degenerate && f_try <= f0 + kSufficientDecrease * step_len * dir_deriv) {
        f_new = f_try;
        accepted = true;
        break;
      }
      // quadratic interpolation on the last trial, clipped to [0.1, 0.5]
      double shrink = 0.5;
      if (!degenerate && std::isfinite(f_try)) {
        const double denom = 2.0 * (f_try - f0 - dir_deriv * step_len);
        if (denom > 0.0) {
          const double interp = -dir_deriv * step_len / denom;
          shrink = std::clamp(interp, 0.1, 0.5);
        }
      }
      step_len *= shrink;
    }

    if (!accepted) {
      collect_collapsed();
      // a failed search right at the degeneracy boundary is a collapse,
      // not a numerical stall
      result.status = (saw_degenerate || !result.collapsed_edges.empty() ||
                       min_quality(x, result.mesh) < 1e-9)
                          ? OptStatus::Degenerated
                          : OptStatus::Stalled;
      if (result.status == OptStatus::Stalled) result.collapsed_edges.clear();
      break;
    }

    // accept the step
    std::vector<V3> s_vec = candidate;
    for (std::size_t i = 0; i < x.size(); ++i) s_vec[i] -= x[i];
    x = candidate;
    ++step;

    EnergyAndGradient eg_new;
    try {
      eg_new = energy_and_gradient(x, topo, config.kind, config.w_threshold);
    } catch (const GeometryError&) {
      eg.energy = f_new;  // gradient is stale at a degenerate point
      collect_collapsed();
      result.status = OptStatus::Degenerated;
      break;
    }
    project_gradient(eg_new.gradient, config.fixed_vertices);

    std::vector<V3> y_vec = eg_new.gradient;
    for (std::size_t i = 0; i < y_vec.size(); ++i) y_vec[i] -= eg.gradient[i];
    const double sy = dot_fields(s_vec, y_vec);
    if (sy > 1e-12 * norm_field(s_vec) * norm_field(y_vec)) {
      history.emplace_back(std::move(s_vec), std::move(y_vec));
      if (static_cast<int>(history.size()) > config.history_size) history.pop_front();
    }

    eg = eg_new;
    eg.energy = f_new;
    gnorm = norm_field(eg.gradient);

    if (config.trace_interval > 0 && step % config.trace_interval == 0)
      record(step, eg, gnorm);

    if (min_quality(x, result.mesh) < kDegeneracyAreaFactor) {
      collect_collapsed();
      result.status = OptStatus::Degenerated;
      break;
    }
  }
  if (result.status == OptStatus::StepLimit && gnorm <= config.gradient_tolerance)
    result.status = OptStatus::Converged;

  // final state, traced unconditionally
  if (result.trace.empty() || result.trace.back().step != step) {
    record(step, eg, gnorm);
  }
  result.steps = step;
  result.final_energy = eg.energy - constant;
  result.final_gradient_norm = gnorm;
  return result;
}

inline void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << "step,energy,grad_norm,beta_min,beta_max,bbox_diag,seconds\n";
  char buf[256];
  for (const TraceRecord& r : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.6f\n", r.step,
                  r.energy, r.gradient_norm, r.beta_min, r.beta_max, r.bbox_diagonal,
                  r.seconds);
    out << buf;
  }
}

}  // namespace cwf
