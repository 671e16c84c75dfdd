#pragma once

#include "dbe/kinetics.hpp"
#include "dbe/model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dbe {

struct IntegratorConfig {
    double stepSize = 0.01;
    int maxSteps = 1000;
    /// eta: minimum distance every F_i must keep to 0 and 1/alpha. The
    /// initial state must respect the full margin; accepted steps must stay
    /// within eta/2, else the step is subdivided.
    double boundsMargin = 1e-6;
    int outputStride = 1;
};

struct TrajectorySample {
    double s = 0.0;        // t (homogeneous) or x (planar)
    Eigen::VectorXd F;
    double h = 0.0;        // H[F] or H~[F]
    Eigen::VectorXd inv;   // moments or fluxes, length d+2
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
};

/// Fixed-step RK4 march of dF/dt = Q(F) over maxSteps macro steps of
/// stepSize. A macro step whose endpoint leaves the eta/2 margin is split
/// in half (recursively, up to 20 levels) so that macro boundaries stay on
/// the uniform grid t_n = n * stepSize. Samples are retained every
/// outputStride macro steps (first and last always).
Trajectory integrate_homogeneous(const DiscreteModel& model, const Distribution& F0,
                                 const IntegratorConfig& config);

/// Same march for the planar stationary system dF/dx = B^{-1} Q(F) with
/// B = diag(p^1). Requires p_i^1 != 0 for all i (exact check), else SingularB.
Trajectory integrate_planar(const DiscreteModel& model, const Distribution& F0,
                            const IntegratorConfig& config);

enum class TrendMode { Homogeneous, Planar };

struct TrendReport {
    /// Per-sample distance to the predicted limit: sup-norm distance to the
    /// moment-matched equilibrium when one can be constructed, otherwise the
    /// entropy-production magnitude plus the worst detailed-balance residual.
    std::vector<double> distances;
    bool usedEquilibriumTarget = false;
    int hViolations = 0;       // samples with h increasing beyond tolerance
    double maxHIncrease = 0.0; // worst per-step increase (0 if monotone)
    double finalDistance = 0.0;
    double maxInvariantDrift = 0.0; // max |inv - inv_0| over samples/components
    bool monotone = false;
};

/// Trend-to-equilibrium diagnostics for a recorded trajectory. The
/// monotonicity tolerance is per step.
TrendReport trend_report(const DiscreteModel& model, const Trajectory& traj, TrendMode mode,
                         double hTolerance = 1e-12);

} // namespace dbe
