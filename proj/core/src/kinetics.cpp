#include "dbe/kinetics.hpp"

#include "dbe/errors.hpp"

#include <cmath>
#include <string>

namespace dbe {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("alpha must lie in [0, 1], got " + std::to_string(alpha));
}

double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

Eigen::VectorXd filling_factors(const Eigen::VectorXd& F, double alpha) {
    Eigen::VectorXd psi(F.size());
    for (Eigen::Index i = 0; i < F.size(); ++i) psi(i) = filling_factor(F(i), alpha);
    return psi;
}

} // namespace

void check_admissible(const DiscreteModel& model, const Distribution& F, double margin) {
    if (F.size() != model.size())
        throw ValidationError("distribution has " + std::to_string(F.size()) +
                              " components, lattice has " + std::to_string(model.size()));
    const double cap = model.upper_bound();
    for (Eigen::Index i = 0; i < F.size(); ++i) {
        const double f = F(i);
        if (!(f > margin) || !(f < cap - margin))
            throw DomainError("F_" + std::to_string(i + 1) + " = " + std::to_string(f) +
                              " violates the admissible interval (margin " + std::to_string(margin) + ")");
    }
}

double filling_factor(double y, double alpha) {
    check_alpha(alpha);
    if (alpha == 0.0) {
        if (!(y >= 0.0)) throw DomainError("filling factor requires y >= 0");
        return 1.0 + y;
    }
    if (!(y >= 0.0 && y <= 1.0 / alpha))
        throw DomainError("filling factor requires 0 <= y <= 1/alpha");
    if (alpha == 1.0) return 1.0 - y;
    const double u = 1.0 - alpha * y;
    if (u <= 0.0) return 0.0; // saturated endpoint (rounding may give u = -0)
    return std::exp(alpha * std::log(u) + (1.0 - alpha) * std::log1p((1.0 - alpha) * y));
}

double filling_factor_derivative(double y, double alpha) {
    check_alpha(alpha);
    const bool interior = y > 0.0 && (alpha == 0.0 || y < 1.0 / alpha);
    if (!interior) throw DomainError("filling factor derivative requires strictly interior y");
    const double psi = filling_factor(y, alpha);
    const double num = 1.0 - 2.0 * alpha - alpha * (1.0 - alpha) * y;
    const double den = (1.0 - alpha * y) * (1.0 + (1.0 - alpha) * y);
    return psi * num / den;
}

double mu(double y, double alpha) {
    check_alpha(alpha);
    const bool admissible = y >= 0.0 && (alpha == 0.0 || y <= 1.0 / alpha);
    if (!admissible) throw DomainError("mu requires y in the closed admissible interval");
    return xlogx(y) + xlogx(1.0 - alpha * y) - xlogx(1.0 + (1.0 - alpha) * y);
}

double mu_prime(double y, double alpha) {
    check_alpha(alpha);
    const bool interior = y > 0.0 && (alpha == 0.0 || y < 1.0 / alpha);
    if (!interior) throw DomainError("mu' requires strictly interior y");
    // log F - log Psi rather than log(F/Psi): less cancellation near balance
    return std::log(y) - std::log(filling_factor(y, alpha));
}

Eigen::VectorXd collision_operator(const DiscreteModel& model, const Distribution& F) {
    check_admissible(model, F);
    const Eigen::VectorXd psi = filling_factors(F, model.alpha());
    Eigen::VectorXd Q = Eigen::VectorXd::Zero(F.size());
    for (const CollisionQuadruple& q : model.collisions()) {
        const double gain = F(q.k) * F(q.l) * psi(q.i) * psi(q.j);
        const double loss = F(q.i) * F(q.j) * psi(q.k) * psi(q.l);
        const double b = q.gamma * (gain - loss);
        Q(q.i) += b;
        Q(q.j) += b;
        Q(q.k) -= b;
        Q(q.l) -= b;
    }
    return Q;
}

double weak_form(const DiscreteModel& model, const Eigen::VectorXd& H, const Distribution& F) {
    check_admissible(model, F);
    if (H.size() != model.size())
        throw ValidationError("weight vector size does not match the lattice");
    const Eigen::VectorXd psi = filling_factors(F, model.alpha());
    double acc = 0.0;
    for (const CollisionQuadruple& q : model.collisions()) {
        const double gain = F(q.k) * F(q.l) * psi(q.i) * psi(q.j);
        const double loss = F(q.i) * F(q.j) * psi(q.k) * psi(q.l);
        const double d = H(q.i) + H(q.j) - H(q.k) - H(q.l);
        acc += q.gamma * d * (gain - loss);
    }
    return acc;
}

double entropy_production(const DiscreteModel& model, const Distribution& F) {
    check_admissible(model, F);
    Eigen::VectorXd H(F.size());
    for (Eigen::Index i = 0; i < F.size(); ++i)
        H(i) = std::log(F(i)) - std::log(filling_factor(F(i), model.alpha()));
    return weak_form(model, H, F);
}

double h_functional(const DiscreteModel& model, const Distribution& F) {
    check_admissible(model, F);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < F.size(); ++i) acc += mu(F(i), model.alpha());
    return acc;
}

double h_tilde_functional(const DiscreteModel& model, const Distribution& F) {
    check_admissible(model, F);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < F.size(); ++i) acc += model.momenta()(i, 0) * mu(F(i), model.alpha());
    return acc;
}

Eigen::VectorXd moments(const DiscreteModel& model, const Distribution& F) {
    if (F.size() != model.size())
        throw ValidationError("distribution size does not match the lattice");
    const int d = model.dim();
    Eigen::VectorXd j(d + 2);
    j(0) = F.sum();
    for (int c = 0; c < d; ++c) j(1 + c) = model.momenta().col(c).dot(F);
    j(d + 1) = model.energies().dot(F);
    return j;
}

Eigen::VectorXd fluxes(const DiscreteModel& model, const Distribution& F) {
    if (F.size() != model.size())
        throw ValidationError("distribution size does not match the lattice");
    const int d = model.dim();
    const Eigen::VectorXd p1 = model.momenta().col(0);
    Eigen::VectorXd jt(d + 2);
    jt(0) = p1.dot(F);
    for (int c = 0; c < d; ++c) jt(1 + c) = (p1.array() * model.momenta().col(c).array()).matrix().dot(F);
    jt(d + 1) = (p1.array() * model.energies().array()).matrix().dot(F);
    return jt;
}

} // namespace dbe
