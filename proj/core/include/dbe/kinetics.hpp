#pragma once

#include "dbe/model.hpp"

#include <Eigen/Dense>

namespace dbe {

/// A state vector F with 0 < F_i < 1/alpha (upper bound only for alpha > 0).
using Distribution = Eigen::VectorXd;

/// Throws DomainError unless every component of F keeps at least `margin`
/// distance to 0 and (for alpha > 0) to 1/alpha. Throws ValidationError on
/// a size mismatch.
void check_admissible(const DiscreteModel& model, const Distribution& F, double margin = 0.0);

/// Haldane filling factor (1 - a y)^a (1 + (1-a) y)^(1-a) on the closed
/// admissible interval; reduces to 1+y for bosons and 1-y for fermions.
double filling_factor(double y, double alpha);

/// d/dy of the filling factor, open interval only.
double filling_factor_derivative(double y, double alpha);

/// Entropy density  y log y + (1-ay) log(1-ay) - (1+(1-a)y) log(1+(1-a)y);
/// non-positive, and 0 at both endpoints (limits taken by continuity).
double mu(double y, double alpha);

/// mu'(y) = log(y / Psi_alpha(y)), strictly increasing on the open interval.
double mu_prime(double y, double alpha);

/// Gain-minus-loss collision sum Q_i(F). One stored canonical quadruple
/// (i,j|k,l) with coefficient gamma contributes
///   gamma * (F_k F_l Psi(F_i) Psi(F_j) - F_i F_j Psi(F_k) Psi(F_l))
/// to Q_i and Q_j and the negative to Q_k and Q_l.
Eigen::VectorXd collision_operator(const DiscreteModel& model, const Distribution& F);

/// <H, Q(F)> evaluated as the quadruple sum
///   sum_q gamma (H_i + H_j - H_k - H_l) (gain_q - loss_q),
/// equal to the scalar product with collision_operator up to rounding.
double weak_form(const DiscreteModel& model, const Eigen::VectorXd& H, const Distribution& F);

/// <log(F / Psi(F)), Q(F)>; always <= 0, zero exactly at equilibria.
double entropy_production(const DiscreteModel& model, const Distribution& F);

/// H[F] = sum_i mu(F_i)   (Lyapunov functional of the homogeneous system).
double h_functional(const DiscreteModel& model, const Distribution& F);

/// H~[F] = sum_i p_i^1 mu(F_i)   (monotone along planar stationary solutions).
double h_tilde_functional(const DiscreteModel& model, const Distribution& F);

/// Moments (mass, d momentum components, energy), length d+2.
Eigen::VectorXd moments(const DiscreteModel& model, const Distribution& F);

/// Fluxes: the same functionals with each weight multiplied by p^1.
Eigen::VectorXd fluxes(const DiscreteModel& model, const Distribution& F);

} // namespace dbe
