#include "dbe/linearized.hpp"

#include "dbe/errors.hpp"
#include "dbe/kinetics.hpp"

#include <cmath>
#include <random>
#include <string>

namespace dbe {

namespace {

struct EquilibriumContext {
    Eigen::VectorXd psi;
    Eigen::VectorXd sqrtRInv; // R^{-1/2}
    Eigen::VectorXd R;
};

/// Shared preamble of the linearized forms: interior check, weights, and the
/// detailed-balance verification that underpins the symmetric assembly.
EquilibriumContext equilibrium_context(const DiscreteModel& model, const Eigen::VectorXd& P,
                                       double dbTol) {
    check_admissible(model, P);
    EquilibriumContext ctx;
    ctx.psi.resize(P.size());
    for (Eigen::Index i = 0; i < P.size(); ++i) ctx.psi(i) = filling_factor(P(i), model.alpha());
    ctx.R = r_weights(P, model.alpha());
    ctx.sqrtRInv = ctx.R.cwiseSqrt().cwiseInverse();

    for (const CollisionQuadruple& q : model.collisions()) {
        const double gain = P(q.k) * P(q.l) * ctx.psi(q.i) * ctx.psi(q.j);
        const double loss = P(q.i) * P(q.j) * ctx.psi(q.k) * ctx.psi(q.l);
        const double scale = std::max({std::abs(gain), std::abs(loss), 1e-300});
        if (std::abs(gain - loss) > dbTol * scale)
            throw NotEquilibrium("detailed balance fails on quadruple (" + std::to_string(q.i + 1) +
                                 "," + std::to_string(q.j + 1) + "|" + std::to_string(q.k + 1) + "," +
                                 std::to_string(q.l + 1) + "): relative residual " +
                                 std::to_string(std::abs(gain - loss) / scale));
    }
    return ctx;
}

} // namespace

Eigen::VectorXd r_weights(const Eigen::VectorXd& P, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
    Eigen::VectorXd R(P.size());
    for (Eigen::Index i = 0; i < P.size(); ++i) {
        const double p = P(i);
        const bool interior = p > 0.0 && (alpha == 0.0 || p < 1.0 / alpha);
        if (!interior) throw DomainError("R weights require strictly interior P");
        R(i) = p * (1.0 - alpha * p) * (1.0 + (1.0 - alpha) * p);
    }
    return R;
}

LinearizedOperator assemble_linearized(const DiscreteModel& model, const Eigen::VectorXd& P,
                                       double detailedBalanceTol) {
    const EquilibriumContext ctx = equilibrium_context(model, P, detailedBalanceTol);
    const int n = model.size();

    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const CollisionQuadruple& q : model.collisions()) {
        const double weight = q.gamma * P(q.i) * P(q.j) * ctx.psi(q.k) * ctx.psi(q.l);
        const int idx[4] = {q.i, q.j, q.k, q.l};
        const double v[4] = {ctx.sqrtRInv(q.i), ctx.sqrtRInv(q.j), -ctx.sqrtRInv(q.k),
                             -ctx.sqrtRInv(q.l)};
        // v[a]*v[b] first: the product commutes exactly, so L stays
        // symmetric to the last bit
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) L(idx[a], idx[b]) += weight * (v[a] * v[b]);
    }
    return {std::move(L), P, ctx.R};
}

double weak_form_linearized(const DiscreteModel& model, const Eigen::VectorXd& P,
                            const Eigen::VectorXd& g, const Eigen::VectorXd& f,
                            double detailedBalanceTol) {
    if (g.size() != model.size() || f.size() != model.size())
        throw ValidationError("weak form arguments must match the lattice size");
    const EquilibriumContext ctx = equilibrium_context(model, P, detailedBalanceTol);

    double acc = 0.0;
    for (const CollisionQuadruple& q : model.collisions()) {
        const double weight = q.gamma * P(q.i) * P(q.j) * ctx.psi(q.k) * ctx.psi(q.l);
        const double uf = f(q.i) * ctx.sqrtRInv(q.i) + f(q.j) * ctx.sqrtRInv(q.j) -
                          f(q.k) * ctx.sqrtRInv(q.k) - f(q.l) * ctx.sqrtRInv(q.l);
        const double ug = g(q.i) * ctx.sqrtRInv(q.i) + g(q.j) * ctx.sqrtRInv(q.j) -
                          g(q.k) * ctx.sqrtRInv(q.k) - g(q.l) * ctx.sqrtRInv(q.l);
        acc += weight * uf * ug;
    }
    return acc;
}

SpectralReport spectral_report(const LinearizedOperator& op, const DiscreteModel& model) {
    const int n = static_cast<int>(op.L.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.L);
    if (solver.info() != Eigen::Success) throw NotPSD("eigendecomposition failed");

    SpectralReport report;
    report.eigenvalues = solver.eigenvalues();

    const double normL =
        std::max(std::abs(report.eigenvalues(0)), std::abs(report.eigenvalues(n - 1)));
    if (report.eigenvalues(0) < -1e-10 * normL)
        throw NotPSD("negative eigenvalue " + std::to_string(report.eigenvalues(0)) +
                     " beyond tolerance; assembly is inconsistent");

    const double kernelTol = 1e-10 * std::max(1.0, normL);
    int kernelDim = 0;
    while (kernelDim < n && std::abs(report.eigenvalues(kernelDim)) < kernelTol) ++kernelDim;
    report.kernelDim = kernelDim;
    report.kernelBasis = solver.eigenvectors().leftCols(kernelDim);

    const NormalityReport normality = normality_check(model);
    if (normality.isNormal && kernelDim != normality.physicalInvariantRank)
        throw KernelMismatch("kernel dimension " + std::to_string(kernelDim) +
                             " does not match the physical invariant rank " +
                             std::to_string(normality.physicalInvariantRank) +
                             " of a normal model");

    // Orthonormalize W = R^{1/2} (physical invariant rows); its span must lie
    // inside the numerical kernel.
    const int d = model.dim();
    Eigen::MatrixXd W(n, d + 2);
    const Eigen::VectorXd sqrtR = op.R.cwiseSqrt();
    W.col(0) = sqrtR;
    for (int c = 0; c < d; ++c) W.col(1 + c) = sqrtR.cwiseProduct(model.momenta().col(c));
    W.col(d + 1) = sqrtR.cwiseProduct(model.energies());

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(W);
    const Eigen::MatrixXd Worth =
        qr.householderQ() * Eigen::MatrixXd::Identity(n, normality.physicalInvariantRank);
    const Eigen::MatrixXd residual =
        Worth - report.kernelBasis * (report.kernelBasis.transpose() * Worth);
    report.projectionResidual = residual.colwise().norm().maxCoeff();

    // Inertia of <., B.> restricted to the kernel, B = diag(p^1).
    const Eigen::VectorXd b = model.momenta().col(0);
    const Eigen::MatrixXd Kb =
        report.kernelBasis.transpose() * b.asDiagonal() * report.kernelBasis;
    if (kernelDim > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bSolver(Kb);
        for (int i = 0; i < kernelDim; ++i) {
            const double lambda = bSolver.eigenvalues()(i);
            if (lambda > 1e-12) ++report.bSignature.plus;
            else if (lambda < -1e-12) ++report.bSignature.minus;
            else ++report.bSignature.zero;
        }
    }
    return report;
}

double finite_difference_check(const DiscreteModel& model, const Eigen::VectorXd& P,
                               double epsilon, int directions, unsigned seed) {
    if (!(epsilon >= 1e-8 && epsilon <= 1e-4))
        throw DomainError("epsilon must lie in [1e-8, 1e-4]");
    if (directions < 1) throw ValidationError("need at least one direction");

    const LinearizedOperator op = assemble_linearized(model, P);
    const Eigen::VectorXd sqrtR = op.R.cwiseSqrt();
    const Eigen::VectorXd sqrtRInv = sqrtR.cwiseInverse();

    std::mt19937 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    double worst = 0.0;
    for (int k = 0; k < directions; ++k) {
        Eigen::VectorXd f(model.size());
        for (int i = 0; i < model.size(); ++i) f(i) = normal(gen);
        f.normalize();

        const Eigen::VectorXd Fp = P + epsilon * sqrtR.cwiseProduct(f);
        check_admissible(model, Fp); // DomainError if the perturbation exits bounds
        const Eigen::VectorXd lhs =
            (-1.0 / epsilon) * sqrtRInv.cwiseProduct(collision_operator(model, Fp));
        const Eigen::VectorXd Lf = op.L * f;
        const double denom = Lf.norm();
        if (denom < 1e-300) continue;
        worst = std::max(worst, (lhs - Lf).norm() / denom);
    }
    return worst;
}

} // namespace dbe
