#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here is deliberately naive: the oracles re-derive results through a
// different route than the library so that agreement is meaningful.

#include "dbe/kinetics.hpp"
#include "dbe/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <vector>

namespace dbe::test {

inline MomentumLattice lattice_from_ints(int dim, const std::vector<std::vector<long long>>& pts) {
    MomentumLattice lattice;
    lattice.dim = dim;
    for (const auto& p : pts) {
        std::vector<Rational> coords;
        for (long long c : p) coords.emplace_back(c);
        lattice.momenta.push_back(std::move(coords));
    }
    return lattice;
}

// (1,0), (-1,0), (0,1), (0,-1): one collision, normal, invariant rank 3.
inline MomentumLattice lattice_4pt_planar() {
    return lattice_from_ints(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
}

// (0,0), (1,1), (1,0), (0,1): one collision pairing the diagonals.
inline MomentumLattice lattice_unit_square() {
    return lattice_from_ints(2, {{0, 0}, {1, 1}, {1, 0}, {0, 1}});
}

// {-1,0,1}^2: 10 collisions, normal, full invariant rank 4.
inline MomentumLattice lattice_grid3x3() {
    std::vector<std::vector<long long>> pts;
    for (long long x = -1; x <= 1; ++x)
        for (long long y = -1; y <= 1; ++y) pts.push_back({x, y});
    return lattice_from_ints(2, pts);
}

// {1,2} x {-1,0,1}: normal, full invariant rank 4, every p^1 nonzero.
inline MomentumLattice lattice_offaxis_2x3() {
    std::vector<std::vector<long long>> pts;
    for (long long x = 1; x <= 2; ++x)
        for (long long y = -1; y <= 1; ++y) pts.push_back({x, y});
    return lattice_from_ints(2, pts);
}

// (1,-1), (1,1), (2,-1), (2,1): one collision, every p^1 nonzero.
inline MomentumLattice lattice_offaxis_rect() {
    return lattice_from_ints(2, {{1, -1}, {1, 1}, {2, -1}, {2, 1}});
}

// d=1 {-2,-1,1,2}: momentum+energy conservation admits no nontrivial
// quadruple in one dimension, so the auto collision list is empty.
inline MomentumLattice lattice_d1_4pt() {
    return lattice_from_ints(1, {{-2}, {-1}, {1}, {2}});
}

inline DiscreteModel model_4pt_planar(double alpha, double gamma = 1.0) {
    return DiscreteModel(lattice_4pt_planar(), alpha, {{0, 1, 2, 3, gamma}});
}

inline DiscreteModel model_grid3x3(double alpha) {
    return DiscreteModel::with_auto_collisions(lattice_grid3x3(), alpha);
}

inline DiscreteModel model_offaxis_2x3(double alpha) {
    return DiscreteModel::with_auto_collisions(lattice_offaxis_2x3(), alpha);
}

inline DiscreteModel model_offaxis_rect(double alpha) {
    return DiscreteModel::with_auto_collisions(lattice_offaxis_rect(), alpha);
}

inline Eigen::VectorXd random_interior(const DiscreteModel& model, std::mt19937& gen,
                                       double lowFraction = 0.05, double highFraction = 0.5) {
    const double cap = model.alpha() > 0.0 ? 1.0 / model.alpha() : 3.0;
    std::uniform_real_distribution<double> uniform(lowFraction * cap, highFraction * cap);
    Eigen::VectorXd F(model.size());
    for (int i = 0; i < model.size(); ++i) F(i) = uniform(gen);
    return F;
}

// Literal sum over all ordered index quadruples of the symmetric coefficient
// tensor. A stored canonical quadruple with coefficient gamma corresponds to
// the tensor value gamma/2 on each of its eight ordered orbit members, so
// that each physical collision contributes gamma once per participating
// component.
inline Eigen::VectorXd collision_operator_ordered_sum(const DiscreteModel& model,
                                                      const Eigen::VectorXd& F) {
    const int n = model.size();
    std::map<std::array<int, 4>, double> tensor;
    for (const CollisionQuadruple& q : model.collisions()) {
        const std::array<std::array<int, 2>, 2> ij = {{{q.i, q.j}, {q.j, q.i}}};
        const std::array<std::array<int, 2>, 2> kl = {{{q.k, q.l}, {q.l, q.k}}};
        for (const auto& a : ij) {
            for (const auto& b : kl) {
                tensor[{a[0], a[1], b[0], b[1]}] = 0.5 * q.gamma;
                tensor[{b[0], b[1], a[0], a[1]}] = 0.5 * q.gamma;
            }
        }
    }
    Eigen::VectorXd psi(n);
    for (int i = 0; i < n; ++i) psi(i) = filling_factor(F(i), model.alpha());
    Eigen::VectorXd Q = Eigen::VectorXd::Zero(n);
    for (const auto& [idx, gamma] : tensor) {
        const auto [i, j, k, l] = std::tuple{idx[0], idx[1], idx[2], idx[3]};
        Q(i) += gamma * (F(k) * F(l) * psi(i) * psi(j) - F(i) * F(j) * psi(k) * psi(l));
    }
    return Q;
}

// Independently coded limiting operators with hard-wired 1+y / 1-y fillers.
inline Eigen::VectorXd collision_operator_boson(const DiscreteModel& model,
                                                const Eigen::VectorXd& F) {
    Eigen::VectorXd Q = Eigen::VectorXd::Zero(model.size());
    for (const CollisionQuadruple& q : model.collisions()) {
        const double b = q.gamma * (F(q.k) * F(q.l) * (1.0 + F(q.i)) * (1.0 + F(q.j)) -
                                    F(q.i) * F(q.j) * (1.0 + F(q.k)) * (1.0 + F(q.l)));
        Q(q.i) += b;
        Q(q.j) += b;
        Q(q.k) -= b;
        Q(q.l) -= b;
    }
    return Q;
}

inline Eigen::VectorXd collision_operator_fermion(const DiscreteModel& model,
                                                  const Eigen::VectorXd& F) {
    Eigen::VectorXd Q = Eigen::VectorXd::Zero(model.size());
    for (const CollisionQuadruple& q : model.collisions()) {
        const double b = q.gamma * (F(q.k) * F(q.l) * (1.0 - F(q.i)) * (1.0 - F(q.j)) -
                                    F(q.i) * F(q.j) * (1.0 - F(q.k)) * (1.0 - F(q.l)));
        Q(q.i) += b;
        Q(q.j) += b;
        Q(q.k) -= b;
        Q(q.l) -= b;
    }
    return Q;
}

// Physical invariant rows as doubles (mass, momentum components, energy).
inline Eigen::MatrixXd invariant_rows(const DiscreteModel& model) {
    Eigen::MatrixXd phi(model.dim() + 2, model.size());
    phi.row(0).setOnes();
    for (int c = 0; c < model.dim(); ++c) phi.row(1 + c) = model.momenta().col(c).transpose();
    phi.row(model.dim() + 1) = model.energies().transpose();
    return phi;
}

} // namespace dbe::test
