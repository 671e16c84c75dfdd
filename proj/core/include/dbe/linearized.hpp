#pragma once

#include "dbe/equilibrium.hpp"
#include "dbe/model.hpp"

#include <Eigen/Dense>

namespace dbe {

/// Linearized collision operator around an equilibrium P, in the
/// f-coordinates of the substitution F = P + R^{1/2} f with
/// R = P (1 - alpha P)(1 + (1 - alpha) P). Symmetric positive
/// semi-definite by construction.
struct LinearizedOperator {
    Eigen::MatrixXd L;
    Eigen::VectorXd P;
    Eigen::VectorXd R;
};

struct BSignature {
    int plus = 0, minus = 0, zero = 0;
};

struct SpectralReport {
    Eigen::VectorXd eigenvalues;   // ascending
    int kernelDim = 0;
    Eigen::MatrixXd kernelBasis;   // orthonormal columns
    double projectionResidual = 0; // || (I - Pi_ker) W ||, W = orthonormalized R^{1/2} invariants
    BSignature bSignature;         // inertia of <., B.> restricted to ker L
};

/// R_i = P_i (1 - alpha P_i)(1 + (1 - alpha) P_i); strictly interior P only.
Eigen::VectorXd r_weights(const Eigen::VectorXd& P, double alpha);

/// Assembles L as the sum over canonical quadruples of
///   gamma * P_i P_j Psi(P_k) Psi(P_l) * v v^T,
///   v = e_i/sqrt(R_i) + e_j/sqrt(R_j) - e_k/sqrt(R_k) - e_l/sqrt(R_l),
/// which makes symmetry and positive semi-definiteness structural facts.
/// Throws NotEquilibrium when P fails detailed balance on an active
/// quadruple beyond `detailedBalanceTol` (relative).
LinearizedOperator assemble_linearized(const DiscreteModel& model, const Eigen::VectorXd& P,
                                       double detailedBalanceTol = 1e-9);

/// <g, L f> evaluated directly from the quadruple sum (no matrix).
double weak_form_linearized(const DiscreteModel& model, const Eigen::VectorXd& P,
                            const Eigen::VectorXd& g, const Eigen::VectorXd& f,
                            double detailedBalanceTol = 1e-9);

/// Symmetric eigendecomposition plus the structural checks: PSD within
/// tolerance (else NotPSD), kernel dimension equal to the physical
/// invariant rank on normal models (else KernelMismatch), kernel containment
/// of span{R^{1/2} phi}, and the inertia of K^T diag(p^1) K on the kernel.
SpectralReport spectral_report(const LinearizedOperator& op, const DiscreteModel& model);

/// Max over random f-directions of
///   || -(1/eps) R^{-1/2} Q(P + eps R^{1/2} f) - L f || / || L f ||.
/// First-order Taylor remainder, so the result is O(eps).
double finite_difference_check(const DiscreteModel& model, const Eigen::VectorXd& P,
                               double epsilon, int directions = 8, unsigned seed = 0);

} // namespace dbe
