#pragma once

#include <algorithm>
#include <numbers>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "cwf/diagnostics.hpp"
#include "cwf/qp.hpp"

namespace cwf {

inline nlohmann::json to_json(const SphereFit& fit) {
  return {{"center", {fit.center.x, fit.center.y, fit.center.z}},
          {"radius", fit.radius},
          {"max_relative_deviation", fit.max_relative_deviation}};
}

inline nlohmann::json to_json(const DiagnosticsReport& rep) {
  nlohmann::json j;
  j["energy_w"] = rep.energy_w;
  if (rep.energy_w2) j["energy_w2"] = *rep.energy_w2;
  if (rep.energy_w2w) j["energy_w2w"] = *rep.energy_w2w;
  j["sum_beta_sq"] = rep.sum_beta_sq;
  j["sum_weighted_beta_sq"] = rep.sum_weighted_beta_sq;
  j["sphere_center"] = {rep.sphere.center.x, rep.sphere.center.y, rep.sphere.center.z};
  j["sphere_radius"] = rep.sphere.radius;
  j["sphere_dev"] = rep.sphere.max_relative_deviation;
  j["inscribed"] = rep.inscribed;
  j["convex"] = rep.convex;
  j["delaunay"] = rep.delaunay;
  if (!rep.delaunay_violations.empty())
    j["delaunay_violations"] = rep.delaunay_violations;
  j["beta_min"] = rep.beta.min;
  j["beta_q1"] = rep.beta.q1;
  j["beta_median"] = rep.beta.median;
  j["beta_q3"] = rep.beta.q3;
  j["beta_max"] = rep.beta.max;
  if (rep.torus_ratio) j["torus_ratio"] = *rep.torus_ratio;
  j["closed"] = rep.closed;
  j["euler_characteristic"] = rep.euler_characteristic;
  return j;
}

inline void write_text(std::ostream& out, const DiagnosticsReport& rep) {
  const nlohmann::json j = to_json(rep);
  for (const auto& [key, value] : j.items()) out << key << " = " << value.dump() << '\n';
}

inline nlohmann::json to_json(const QPReport& rep) {
  nlohmann::json j;
  j["weighted"] = rep.weighted;
  j["lambda"] = rep.lambda;
  j["lambda_min"] = rep.lambda.empty()
                        ? 0.0
                        : *std::min_element(rep.lambda.begin(), rep.lambda.end());
  j["lambda_nonneg"] = rep.lambda_nonneg;
  j["lambda_borderline"] = rep.lambda_borderline;
  j["angles"] = rep.angles;
  j["angles_in_open_range"] = rep.angles_in_open_range;
  j["rivin_checked"] = rep.rivin_checked;
  j["rivin_cycle_ok"] = rep.rivin_cycle_ok;
  j["rivin_exhaustive"] = rep.rivin_exhaustive;
  if (rep.rivin_checked && !std::isnan(rep.min_nonfacial_cycle_sum)) {
    j["min_nonfacial_cycle_sum"] = rep.min_nonfacial_cycle_sum;
    j["min_nonfacial_cycle_arcs"] = rep.min_cycle.arcs;
  }
  j["predicted_type"] = to_string(rep.predicted);
  std::vector<double> sorted = rep.angles;
  std::sort(sorted.begin(), sorted.end());
  for (double& a : sorted) a /= std::numbers::pi;
  j["angles_over_pi_sorted"] = sorted;
  return j;
}

inline void write_text(std::ostream& out, const QPReport& rep) {
  const nlohmann::json j = to_json(rep);
  for (const auto& [key, value] : j.items()) {
    if (key == "lambda" || key == "angles" || key == "angles_over_pi_sorted") continue;
    out << key << " = " << value.dump() << '\n';
  }
  out << "angles_over_pi_sorted =";
  for (double a : j["angles_over_pi_sorted"].get<std::vector<double>>()) out << ' ' << a;
  out << '\n';
}

// Table-style column: values divided by pi, ascending
inline void write_angles_over_pi_csv(std::ostream& out, std::vector<double> angles) {
  std::sort(angles.begin(), angles.end());
  out << "angle_over_pi\n";
  char buf[64];
  for (double a : angles) {
    std::snprintf(buf, sizeof(buf), "%.10f\n", a / std::numbers::pi);
    out << buf;
  }
}

}  // namespace cwf
