#include "dbe/model.hpp"

#include "dbe/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>

namespace dbe {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref(RationalMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (m[i][c] != 0) { piv = i; break; }
        }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        const Rational inv = m[r][c];
        for (int c2 = c; c2 < cols; ++c2) m[r][c2] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (int c2 = c; c2 < cols; ++c2) m[i][c2] -= f * m[r][c2];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(RationalMatrix m) { return static_cast<int>(rref(m).size()); }

/// Nullspace basis of m (treated as a map R^n -> R^rows) via the standard
/// free-column construction from the RREF.
RationalMatrix nullspace(RationalMatrix m, int n) {
    const std::vector<int> pivots = rref(m);
    std::vector<bool> isPivot(n, false);
    for (int c : pivots) isPivot[c] = true;

    RationalMatrix basis;
    for (int f = 0; f < n; ++f) {
        if (isPivot[f]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::tuple<int, int, int, int> canonical_key(int i, int j, int k, int l) {
    if (i > j) std::swap(i, j);
    if (k > l) std::swap(k, l);
    if (std::make_pair(k, l) < std::make_pair(i, j)) {
        std::swap(i, k);
        std::swap(j, l);
    }
    return {i, j, k, l};
}

} // namespace

Rational MomentumLattice::energy(int i) const {
    Rational e = 0;
    for (const Rational& c : momenta[i]) e += c * c;
    return e;
}

void MomentumLattice::validate() const {
    if (dim < 1) throw ValidationError("lattice dimension must be >= 1");
    if (momenta.empty()) throw ValidationError("lattice must contain at least one momentum");
    for (const auto& p : momenta) {
        if (static_cast<int>(p.size()) != dim)
            throw ValidationError("every momentum must have exactly dim components");
    }
    for (size_t a = 0; a < momenta.size(); ++a) {
        for (size_t b = a + 1; b < momenta.size(); ++b) {
            if (momenta[a] == momenta[b])
                throw ValidationError("momenta must be pairwise distinct (points " +
                                      std::to_string(a + 1) + " and " + std::to_string(b + 1) + ")");
        }
    }
}

std::vector<CollisionQuadruple> enumerate_collisions(const MomentumLattice& lattice) {
    lattice.validate();
    const int n = lattice.size();

    // Group index pairs by their exact (momentum sum, energy sum); any two
    // distinct pairs in a group form an admissible quadruple.
    std::map<std::pair<std::vector<Rational>, Rational>, std::vector<std::pair<int, int>>> groups;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<Rational> sum(lattice.dim);
            for (int c = 0; c < lattice.dim; ++c)
                sum[c] = lattice.momenta[i][c] + lattice.momenta[j][c];
            groups[{std::move(sum), lattice.energy(i) + lattice.energy(j)}].emplace_back(i, j);
        }
    }

    std::vector<CollisionQuadruple> out;
    for (const auto& [key, pairs] : groups) {
        for (size_t a = 0; a < pairs.size(); ++a) {
            for (size_t b = a + 1; b < pairs.size(); ++b) {
                CollisionQuadruple q;
                q.i = pairs[a].first;
                q.j = pairs[a].second;
                q.k = pairs[b].first;
                q.l = pairs[b].second;
                q.gamma = 1.0;
                out.push_back(q);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const CollisionQuadruple& a, const CollisionQuadruple& b) {
        return std::tie(a.i, a.j, a.k, a.l) < std::tie(b.i, b.j, b.k, b.l);
    });
    return out;
}

std::vector<CollisionQuadruple> canonicalize_collisions(const MomentumLattice& lattice,
                                                        const std::vector<RawQuadruple>& raw) {
    const int n = lattice.size();
    std::map<std::tuple<int, int, int, int>, double> merged;

    for (const RawQuadruple& q : raw) {
        for (int idx : {q.i, q.j, q.k, q.l}) {
            if (idx < 0 || idx >= n)
                throw ValidationError("collision index " + std::to_string(idx + 1) +
                                      " outside lattice of size " + std::to_string(n));
        }
        if (q.gamma < 0.0)
            throw NegativeCoefficient("collision coefficient must be nonnegative, got " +
                                      std::to_string(q.gamma));

        for (int c = 0; c < lattice.dim; ++c) {
            if (lattice.momenta[q.i][c] + lattice.momenta[q.j][c] !=
                lattice.momenta[q.k][c] + lattice.momenta[q.l][c])
                throw ConservationViolation("momentum not conserved by quadruple (" +
                                            std::to_string(q.i + 1) + "," + std::to_string(q.j + 1) + "|" +
                                            std::to_string(q.k + 1) + "," + std::to_string(q.l + 1) + ")");
        }
        if (lattice.energy(q.i) + lattice.energy(q.j) != lattice.energy(q.k) + lattice.energy(q.l))
            throw ConservationViolation("energy not conserved by quadruple (" +
                                        std::to_string(q.i + 1) + "," + std::to_string(q.j + 1) + "|" +
                                        std::to_string(q.k + 1) + "," + std::to_string(q.l + 1) + ")");

        const auto key = canonical_key(q.i, q.j, q.k, q.l);
        const auto [i, j, k, l] = key;
        if (i == k && j == l) continue; // trivial, contributes zero
        if (q.gamma == 0.0) continue;

        auto [it, inserted] = merged.emplace(key, q.gamma);
        if (!inserted && it->second != q.gamma)
            throw ConflictingCoefficients("symmetry-equivalent entries for quadruple (" +
                                          std::to_string(i + 1) + "," + std::to_string(j + 1) + "|" +
                                          std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                          ") carry different coefficients");
    }

    std::vector<CollisionQuadruple> out;
    out.reserve(merged.size());
    for (const auto& [key, gamma] : merged) {
        const auto [i, j, k, l] = key;
        out.push_back({i, j, k, l, gamma});
    }
    return out; // std::map iteration is already lexicographic
}

InvariantBasis physical_invariants(const MomentumLattice& lattice) {
    lattice.validate();
    const int n = lattice.size();
    InvariantBasis basis;
    basis.rows.assign(lattice.dim + 2, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
        basis.rows[0][i] = 1;
        for (int c = 0; c < lattice.dim; ++c) basis.rows[1 + c][i] = lattice.momenta[i][c];
        basis.rows[lattice.dim + 1][i] = lattice.energy(i);
    }
    basis.rank = rank(basis.rows);
    return basis;
}

DiscreteModel::DiscreteModel(MomentumLattice lattice, double alpha,
                             const std::vector<RawQuadruple>& raw)
    : lattice_(std::move(lattice)), alpha_(alpha) {
    lattice_.validate();
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ValidationError("alpha must lie in [0, 1]");
    collisions_ = canonicalize_collisions(lattice_, raw);

    const int n = lattice_.size();
    momenta_.resize(n, lattice_.dim);
    energies_.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < lattice_.dim; ++c) momenta_(i, c) = to_double(lattice_.momenta[i][c]);
        energies_(i) = to_double(lattice_.energy(i));
    }
}

DiscreteModel DiscreteModel::with_auto_collisions(MomentumLattice lattice, double alpha) {
    std::vector<RawQuadruple> raw;
    for (const CollisionQuadruple& q : enumerate_collisions(lattice))
        raw.push_back({q.i, q.j, q.k, q.l, q.gamma});
    return DiscreteModel(std::move(lattice), alpha, raw);
}

double DiscreteModel::upper_bound() const {
    return alpha_ > 0.0 ? 1.0 / alpha_ : std::numeric_limits<double>::infinity();
}

NormalityReport normality_check(const DiscreteModel& model) {
    const int n = model.size();
    NormalityReport report;

    RationalMatrix relations;
    for (const CollisionQuadruple& q : model.collisions()) {
        std::vector<Rational> row(n, Rational(0));
        row[q.i] += 1;
        row[q.j] += 1;
        row[q.k] -= 1;
        row[q.l] -= 1;
        relations.push_back(std::move(row));
    }

    const InvariantBasis piv = physical_invariants(model.lattice());
    report.physicalInvariantRank = piv.rank;

    // Containment of the physical rows in the relation nullspace is a
    // consequence of the conservation laws; verified exactly all the same.
    bool contained = true;
    for (const auto& phi : piv.rows) {
        for (const CollisionQuadruple& q : model.collisions()) {
            if (phi[q.i] + phi[q.j] - phi[q.k] - phi[q.l] != 0) { contained = false; break; }
        }
        if (!contained) break;
    }

    report.collisionRank = relations.empty() ? 0 : rank(relations);
    report.invariantNullspaceDim = n - report.collisionRank;
    report.isNormal = contained && report.invariantNullspaceDim == report.physicalInvariantRank;

    if (!report.isNormal) {
        // Quotient basis: reduce each nullspace vector against the physical
        // row space, then extract an independent set from what is left.
        RationalMatrix null = nullspace(std::move(relations), n);

        RationalMatrix phys = piv.rows;
        const std::vector<int> physPivots = rref(phys);

        RationalMatrix residuals;
        for (auto& v : null) {
            for (size_t r = 0; r < physPivots.size(); ++r) {
                const Rational f = v[physPivots[r]];
                if (f == 0) continue;
                for (int c = 0; c < n; ++c) v[c] -= f * phys[r][c];
            }
            if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }))
                residuals.push_back(std::move(v));
        }
        RationalMatrix reduced = residuals;
        const std::vector<int> keepPivots = rref(reduced);
        report.spuriousBasis.assign(reduced.begin(), reduced.begin() + keepPivots.size());
    }
    return report;
}

} // namespace dbe
