#pragma once

#include "dbe/dynamics.hpp"
#include "dbe/equilibrium.hpp"
#include "dbe/linearized.hpp"
#include "dbe/model.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dbe {

// Model files are JSON:
//   {
//     "dim": 2,
//     "alpha": "1/2",                     // rational or decimal string (or number)
//     "momenta": [[[1,1],[0,1]], ...],    // per point: dim [num, den] pairs
//     "collisions": "auto"                // or [{"i":1,"j":2,"k":3,"l":4,"gamma":1.0}, ...]
//   }
// Indices in files are 1-based.

DiscreteModel load_model(const std::string& path);
DiscreteModel parse_model(const std::string& jsonText);

/// Canonical emission: exact momenta as [num, den], explicit collision list
/// in canonical order. Re-parsing yields an identical model.
std::string model_to_json(const DiscreteModel& model);
void save_model(const DiscreteModel& model, const std::string& path);

MaxwellianParams parse_maxwellian_params(const std::string& jsonText, int dim);
std::string maxwellian_params_to_json(const MaxwellianParams& params);

std::string normality_report_to_json(const NormalityReport& report);
std::string spectral_report_to_json(const SpectralReport& report);
std::string trend_report_to_json(const TrendReport& report);

/// Length-N JSON array -> vector; used for inline distributions and moments.
Eigen::VectorXd parse_vector(const std::string& jsonText);
std::string vector_to_json(const Eigen::VectorXd& v);

/// CSV: optional "# key=value" comment lines, then
/// s, F_1..F_N, H, inv_1..inv_{d+2}; numbers at full precision.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<std::pair<std::string, std::string>>& headerComments = {});
std::string trajectory_to_json(const Trajectory& traj);

} // namespace dbe
