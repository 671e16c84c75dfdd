#pragma once

#include "dbe/kinetics.hpp"
#include "dbe/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <utility>

namespace dbe {

/// Parameters of a Maxwellian M_i = exp(-a - b.p_i - c|p_i|^2).
struct MaxwellianParams {
    double a = 0.0;
    Eigen::VectorXd b; // length d
    double c = 0.0;
};

struct EquilibriumDistribution {
    Eigen::VectorXd P;
    std::optional<MaxwellianParams> params; // present when built from one
};

/// Componentwise Maxwellian over the lattice.
Eigen::VectorXd maxwellian(const DiscreteModel& model, const MaxwellianParams& params);

/// The unique y in the admissible open interval with y / Psi_alpha(y) = m.
/// Safeguarded Newton inside a maintained bracket; for alpha = 0 the map
/// tends to 1 from below, so m >= 1 is unreachable (NoConvergence).
double solve_equilibrium_component(double m, double alpha);

// Closed-form solutions of the same equation at the three special statistics.
inline double planckian_boson(double m) { return m / (1.0 - m); }
inline double planckian_fermion(double m) { return m / (1.0 + m); }
inline double semion_equilibrium(double m) { return 2.0 * m / std::sqrt(4.0 + m * m); }

/// Componentwise solve of P / Psi(P) = M over the Maxwellian of `params`.
EquilibriumDistribution equilibrium_from_maxwellian(const DiscreteModel& model,
                                                    const MaxwellianParams& params);

/// Recovers the unique equilibrium with the prescribed moments (length d+2)
/// by damped Newton on theta = (a, b, c). Requires a normal model whose
/// physical invariants have full rank d+2; otherwise NotNormal /
/// DegenerateJacobian. NoConvergence signals unattainable or near-boundary
/// moments.
std::pair<MaxwellianParams, EquilibriumDistribution>
equilibrium_from_moments(const DiscreteModel& model, const Eigen::VectorXd& j,
                         std::optional<MaxwellianParams> guess = std::nullopt);

} // namespace dbe
