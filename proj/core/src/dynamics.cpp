#include "dbe/dynamics.hpp"

#include "dbe/equilibrium.hpp"
#include "dbe/errors.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace dbe {

namespace {

constexpr int kMaxHalvingDepth = 20;

void validate_config(const DiscreteModel& model, const IntegratorConfig& cfg) {
    if (!(cfg.stepSize > 0.0)) throw ValidationError("stepSize must be positive");
    if (cfg.maxSteps < 1) throw ValidationError("maxSteps must be at least 1");
    if (cfg.outputStride < 1) throw ValidationError("outputStride must be at least 1");
    if (!(cfg.boundsMargin > 0.0)) throw ValidationError("boundsMargin must be positive");
    if (model.alpha() > 0.0 && !(cfg.boundsMargin < 0.5 / model.alpha()))
        throw ValidationError("boundsMargin must be below 1/(2 alpha)");
}

bool within(const Eigen::VectorXd& F, double margin, double cap) {
    for (Eigen::Index i = 0; i < F.size(); ++i)
        if (!(F(i) > margin && F(i) < cap - margin)) return false;
    return true;
}

struct Stepper {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> rhs;
    double cap;
    double acceptMargin; // eta / 2
    long budget;         // total sub-step allowance

    // One RK4 step; false when a stage or the result leaves the open
    // admissible set (stage values only need validity, the endpoint must
    // respect the accept margin).
    bool try_step(const Eigen::VectorXd& F, double dt, Eigen::VectorXd& out) {
        const Eigen::VectorXd k1 = rhs(F);
        Eigen::VectorXd s = F + 0.5 * dt * k1;
        if (!within(s, 0.0, cap)) return false;
        const Eigen::VectorXd k2 = rhs(s);
        s = F + 0.5 * dt * k2;
        if (!within(s, 0.0, cap)) return false;
        const Eigen::VectorXd k3 = rhs(s);
        s = F + dt * k3;
        if (!within(s, 0.0, cap)) return false;
        const Eigen::VectorXd k4 = rhs(s);
        out = F + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        return within(out, acceptMargin, cap);
    }

    // Advances across [t, t+dt], halving recursively on bounds trouble.
    void advance(Eigen::VectorXd& F, double dt, int depth) {
        if (--budget < 0)
            throw StepLimitExceeded("sub-step budget exhausted during bounds-triggered halving");
        Eigen::VectorXd next;
        if (try_step(F, dt, next)) {
            F = std::move(next);
            return;
        }
        if (depth >= kMaxHalvingDepth)
            throw BoundsViolation("repeated step halving cannot keep the state interior");
        advance(F, 0.5 * dt, depth + 1);
        advance(F, 0.5 * dt, depth + 1);
    }
};

Trajectory integrate(const DiscreteModel& model, const Distribution& F0,
                     const IntegratorConfig& cfg, bool planar) {
    validate_config(model, cfg);
    check_admissible(model, F0, cfg.boundsMargin);

    Eigen::VectorXd binv;
    if (planar) {
        for (int i = 0; i < model.size(); ++i) {
            if (model.lattice().momenta[i][0] == 0)
                throw SingularB("p^1 vanishes at lattice point " + std::to_string(i + 1) +
                                "; B is singular");
        }
        binv = model.momenta().col(0).cwiseInverse();
    }

    Stepper stepper;
    stepper.cap = model.upper_bound();
    stepper.acceptMargin = 0.5 * cfg.boundsMargin;
    stepper.budget = static_cast<long>(cfg.maxSteps) * 64 + (1L << 20);
    if (planar) {
        stepper.rhs = [&model, &binv](const Eigen::VectorXd& F) {
            return (binv.array() * collision_operator(model, F).array()).matrix().eval();
        };
    } else {
        stepper.rhs = [&model](const Eigen::VectorXd& F) { return collision_operator(model, F); };
    }

    const auto record = [&](Trajectory& traj, double s, const Eigen::VectorXd& F) {
        TrajectorySample sample;
        sample.s = s;
        sample.F = F;
        sample.h = planar ? h_tilde_functional(model, F) : h_functional(model, F);
        sample.inv = planar ? fluxes(model, F) : moments(model, F);
        traj.samples.push_back(std::move(sample));
    };

    Trajectory traj;
    Eigen::VectorXd F = F0;
    record(traj, 0.0, F);
    for (int n = 1; n <= cfg.maxSteps; ++n) {
        stepper.advance(F, cfg.stepSize, 0);
        if (n % cfg.outputStride == 0 || n == cfg.maxSteps)
            record(traj, n * cfg.stepSize, F);
    }
    return traj;
}

} // namespace

Trajectory integrate_homogeneous(const DiscreteModel& model, const Distribution& F0,
                                 const IntegratorConfig& config) {
    return integrate(model, F0, config, false);
}

Trajectory integrate_planar(const DiscreteModel& model, const Distribution& F0,
                            const IntegratorConfig& config) {
    return integrate(model, F0, config, true);
}

TrendReport trend_report(const DiscreteModel& model, const Trajectory& traj, TrendMode mode,
                         double hTolerance) {
    if (traj.samples.empty()) throw ValidationError("trajectory has no samples");

    TrendReport report;

    // Homogeneous limit: the moment-matched equilibrium when the model allows
    // its construction; otherwise (and always for planar runs, where the
    // limit set is a manifold) the entropy-production magnitude plus the
    // worst detailed-balance residual serves as the distance.
    std::optional<Eigen::VectorXd> target;
    if (mode == TrendMode::Homogeneous) {
        try {
            target = equilibrium_from_moments(model, traj.samples.front().inv).second.P;
        } catch (const Error&) {
            target.reset();
        }
    }
    report.usedEquilibriumTarget = target.has_value();

    const auto manifold_distance = [&](const Eigen::VectorXd& F) {
        double worst = 0.0;
        Eigen::VectorXd ratio(F.size());
        for (Eigen::Index i = 0; i < F.size(); ++i)
            ratio(i) = F(i) / filling_factor(F(i), model.alpha());
        for (const CollisionQuadruple& q : model.collisions()) {
            const double res = std::abs(ratio(q.i) * ratio(q.j) - ratio(q.k) * ratio(q.l));
            worst = std::max(worst, res);
        }
        return std::abs(entropy_production(model, F)) + worst;
    };

    for (const TrajectorySample& sample : traj.samples) {
        const double dist = target ? (sample.F - *target).cwiseAbs().maxCoeff()
                                   : manifold_distance(sample.F);
        report.distances.push_back(dist);
    }
    report.finalDistance = report.distances.back();

    for (size_t n = 1; n < traj.samples.size(); ++n) {
        const double increase = traj.samples[n].h - traj.samples[n - 1].h;
        if (increase > hTolerance) {
            ++report.hViolations;
            report.maxHIncrease = std::max(report.maxHIncrease, increase);
        }
    }
    report.monotone = report.hViolations == 0;

    const Eigen::VectorXd inv0 = traj.samples.front().inv;
    for (const TrajectorySample& sample : traj.samples)
        report.maxInvariantDrift =
            std::max(report.maxInvariantDrift, (sample.inv - inv0).cwiseAbs().maxCoeff());

    return report;
}

} // namespace dbe
