#pragma once

#include "dbe/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dbe {

/// Finite set of distinct momentum vectors p_1, ..., p_N in R^d,
/// stored with exact rational coordinates.
struct MomentumLattice {
    int dim = 0;
    std::vector<std::vector<Rational>> momenta; // N entries of length dim

    int size() const { return static_cast<int>(momenta.size()); }

    /// |p_i|^2, exact.
    Rational energy(int i) const;

    /// Throws ValidationError unless dim >= 1, N >= 1, every point has
    /// exactly dim components and all points are pairwise distinct.
    void validate() const;
};

/// One admissible collision (p_i, p_j) <-> (p_k, p_l) in canonical form:
/// i < j, k < l, (i, j) lexicographically below (k, l). All four indices of
/// a nontrivial momentum/energy-conserving quadruple are necessarily
/// distinct. Indices are 0-based in memory (1-based in model files).
struct CollisionQuadruple {
    int i = 0, j = 0, k = 0, l = 0;
    double gamma = 1.0;
};

/// A collision as it may appear in user input: any index order, any
/// duplicates across symmetry-equivalent entries.
struct RawQuadruple {
    int i = 0, j = 0, k = 0, l = 0;
    double gamma = 1.0;
};

/// Outcome of the spurious-invariant test. A model is normal when the
/// nullspace of its collision-relation matrix equals the span of the
/// physical invariants (mass, momentum components, energy).
struct NormalityReport {
    int collisionRank = 0;          // rank of the relation matrix
    int invariantNullspaceDim = 0;  // N - collisionRank
    int physicalInvariantRank = 0;  // rank of the d+2 physical rows
    bool isNormal = false;
    /// Basis of the spurious complement (empty when normal), exact.
    std::vector<std::vector<Rational>> spuriousBasis;
};

/// Physical invariant rows (all-ones, p^1, ..., p^d, |p|^2) with their
/// exact rank. The rank can drop below d+2 on degenerate lattices.
struct InvariantBasis {
    std::vector<std::vector<Rational>> rows; // (d+2) x N
    int rank = 0;
};

/// Immutable momentum model: lattice + statistics parameter + canonical
/// collision list. Safe to share across threads after construction.
class DiscreteModel {
public:
    /// Canonicalizes and validates `raw` against the lattice.
    DiscreteModel(MomentumLattice lattice, double alpha, const std::vector<RawQuadruple>& raw);

    /// Model with every conservation-compatible collision, gamma = 1.
    static DiscreteModel with_auto_collisions(MomentumLattice lattice, double alpha);

    const MomentumLattice& lattice() const { return lattice_; }
    double alpha() const { return alpha_; }
    const std::vector<CollisionQuadruple>& collisions() const { return collisions_; }

    int size() const { return lattice_.size(); }
    int dim() const { return lattice_.dim; }

    /// 1/alpha, or +infinity for alpha = 0.
    double upper_bound() const;

    // Double-precision views used by the kinetics; derived once from the
    // exact lattice.
    const Eigen::MatrixXd& momenta() const { return momenta_; }   // N x d
    const Eigen::VectorXd& energies() const { return energies_; } // |p_i|^2
    Eigen::VectorXd momentum_component(int k) const { return momenta_.col(k); }

private:
    MomentumLattice lattice_;
    double alpha_ = 0.0;
    std::vector<CollisionQuadruple> collisions_;
    Eigen::MatrixXd momenta_;
    Eigen::VectorXd energies_;
};

/// Every canonical nontrivial quadruple satisfying exact momentum and
/// energy conservation, gamma = 1, sorted lexicographically on (i,j,k,l).
std::vector<CollisionQuadruple> enumerate_collisions(const MomentumLattice& lattice);

/// Brings raw collision input to canonical form: validates indices and
/// conservation, rejects negative or conflicting coefficients, drops
/// trivial ({i,j} = {k,l}) and zero-coefficient entries.
std::vector<CollisionQuadruple> canonicalize_collisions(const MomentumLattice& lattice,
                                                        const std::vector<RawQuadruple>& raw);

/// The d+2 physical invariant rows and their exact rank.
InvariantBasis physical_invariants(const MomentumLattice& lattice);

/// Exact decision whether the model admits spurious collision invariants.
NormalityReport normality_check(const DiscreteModel& model);

} // namespace dbe
