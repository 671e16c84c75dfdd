#include "dbe/equilibrium.hpp"

#include "dbe/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dbe {

namespace {

// y / Psi_alpha(y); strictly increasing on the admissible interval.
double ratio(double y, double alpha) { return y / filling_factor(y, alpha); }

// d/dy of the ratio: ratio * mu''(y), with mu'' = 1 / (y (1-ay)(1+(1-a)y)).
double ratio_derivative(double y, double alpha) {
    const double mupp = 1.0 / (y * (1.0 - alpha * y) * (1.0 + (1.0 - alpha) * y));
    return ratio(y, alpha) * mupp;
}

} // namespace

Eigen::VectorXd maxwellian(const DiscreteModel& model, const MaxwellianParams& params) {
    if (params.b.size() != model.dim())
        throw ValidationError("Maxwellian b must have one component per dimension");
    const Eigen::VectorXd phi =
        Eigen::VectorXd::Constant(model.size(), params.a) + model.momenta() * params.b +
        params.c * model.energies();
    return (-phi.array()).exp();
}

double solve_equilibrium_component(double m, double alpha) {
    if (!(m > 0.0)) throw DomainError("equilibrium equation requires m > 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");

    // Bracket [lo, hi] with ratio(lo) < m < ratio(hi).
    double lo = 0.0; // ratio -> 0 as y -> 0+
    double hi;
    if (alpha > 0.0) {
        hi = 1.0 / alpha; // ratio -> +inf at the saturated endpoint
    } else {
        // Bosons: ratio(y) = y/(1+y) < 1, so m >= 1 has no solution.
        if (m >= 1.0)
            throw NoConvergence("no boson equilibrium component for m >= 1 (got m = " +
                                std::to_string(m) + ")");
        hi = 1.0;
        while (ratio(hi, 0.0) <= m) hi *= 2.0;
    }

    // Safeguarded Newton: fall back to bisection whenever the Newton step
    // leaves the bracket or fails to reduce fast enough.
    double y = alpha > 0.0 ? 0.5 * hi : std::min(m, 0.5 * hi);
    if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);

    const double tol = 1e-15 * (1.0 + m);
    double f = ratio(y, alpha) - m;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(f) <= tol) return y;
        if (f > 0.0) hi = y; else lo = y;

        double step = f / ratio_derivative(y, alpha);
        double yNext = y - step;
        if (!(yNext > lo && yNext < hi)) yNext = 0.5 * (lo + hi);
        // Bracket collapsed to adjacent doubles: y is the representable root
        // even when the residual noise floor sits above tol (near saturation
        // the evaluation of y/Psi is ill-conditioned in y).
        if (yNext == y) return y;
        y = yNext;
        f = ratio(y, alpha) - m;
    }
    if (std::abs(f) <= 1e-13 * (1.0 + m)) return y;
    throw NoConvergence("equilibrium component solve did not converge for m = " + std::to_string(m));
}

EquilibriumDistribution equilibrium_from_maxwellian(const DiscreteModel& model,
                                                    const MaxwellianParams& params) {
    const Eigen::VectorXd M = maxwellian(model, params);
    Eigen::VectorXd P(model.size());
    for (int i = 0; i < model.size(); ++i) P(i) = solve_equilibrium_component(M(i), model.alpha());
    return {P, params};
}

std::pair<MaxwellianParams, EquilibriumDistribution>
equilibrium_from_moments(const DiscreteModel& model, const Eigen::VectorXd& j,
                         std::optional<MaxwellianParams> guess) {
    const int d = model.dim();
    const int nInv = d + 2;
    if (j.size() != nInv)
        throw ValidationError("moment vector must have d+2 components");

    const NormalityReport rep = normality_check(model);
    if (!rep.isNormal)
        throw NotNormal("moment inversion requires a normal model (nullspace dim " +
                        std::to_string(rep.invariantNullspaceDim) + ", physical rank " +
                        std::to_string(rep.physicalInvariantRank) + ")");
    if (rep.physicalInvariantRank < nInv)
        throw DegenerateJacobian("physical invariants have rank " +
                                 std::to_string(rep.physicalInvariantRank) + " < d+2 = " +
                                 std::to_string(nInv) + "; moments do not determine theta");
    if (!(j(0) > 0.0)) throw DomainError("mass moment must be positive");

    // Rows of Phi: 1, p^1, ..., p^d, |p|^2.
    Eigen::MatrixXd Phi(nInv, model.size());
    Phi.row(0).setOnes();
    for (int c = 0; c < d; ++c) Phi.row(1 + c) = model.momenta().col(c).transpose();
    Phi.row(d + 1) = model.energies().transpose();

    MaxwellianParams theta;
    if (guess) {
        theta = *guess;
        if (theta.b.size() != d) throw ValidationError("guess b must have d components");
    } else {
        theta.a = -std::log(j(0) / model.size());
        theta.b = Eigen::VectorXd::Zero(d);
        theta.c = 0.0;
    }

    const auto solveP = [&](const MaxwellianParams& t) {
        return equilibrium_from_maxwellian(model, t).P;
    };
    const auto packed = [&](const MaxwellianParams& t) {
        Eigen::VectorXd v(nInv);
        v(0) = t.a;
        v.segment(1, d) = t.b;
        v(d + 1) = t.c;
        return v;
    };
    const auto unpacked = [&](const Eigen::VectorXd& v) {
        MaxwellianParams t;
        t.a = v(0);
        t.b = v.segment(1, d);
        t.c = v(d + 1);
        return t;
    };

    const double scale = 1.0 + j.cwiseAbs().maxCoeff();
    Eigen::VectorXd th = packed(theta);
    Eigen::VectorXd P = solveP(unpacked(th));
    Eigen::VectorXd r = Phi * P - j;

    const int maxIterations = 100;
    for (int iter = 0; iter < maxIterations; ++iter) {
        if (r.cwiseAbs().maxCoeff() <= 1e-13 * scale) break;

        const double alpha = model.alpha();
        Eigen::VectorXd R(model.size());
        for (int i = 0; i < model.size(); ++i)
            R(i) = P(i) * (1.0 - alpha * P(i)) * (1.0 + (1.0 - alpha) * P(i));

        // dP/dtheta_s = -R_i Phi_{s i}; the (negated) Jacobian Phi R Phi^T is SPD.
        const Eigen::MatrixXd J = Phi * R.asDiagonal() * Phi.transpose();
        const Eigen::LLT<Eigen::MatrixXd> llt(J);
        if (llt.info() != Eigen::Success)
            throw DegenerateJacobian("moment Jacobian is not positive definite");
        const Eigen::VectorXd step = llt.solve(r);

        // Step halving until the residual decreases (the equilibrium map is
        // defined for every theta, but huge Maxwellians can overshoot).
        const double r0 = r.cwiseAbs().maxCoeff();
        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving) {
            const Eigen::VectorXd thTry = th + lambda * step;
            try {
                const Eigen::VectorXd Ptry = solveP(unpacked(thTry));
                const Eigen::VectorXd rTry = Phi * Ptry - j;
                if (rTry.cwiseAbs().maxCoeff() < r0) {
                    th = thTry;
                    P = Ptry;
                    r = rTry;
                    accepted = true;
                    break;
                }
            } catch (const Error&) {
                // infeasible trial (e.g. boson m >= 1): shrink further
            }
            lambda *= 0.5;
        }
        if (!accepted) break; // stalled; the final tolerance check decides
    }
    if (r.cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw NoConvergence("moment inversion did not reach tolerance; residual " +
                            std::to_string(r.cwiseAbs().maxCoeff()));

    const MaxwellianParams thetaOut = unpacked(th);
    return {thetaOut, EquilibriumDistribution{P, thetaOut}};
}

} // namespace dbe
