#include "dbe/model.hpp"

#include "dbe/errors.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace dbe;
using namespace dbe::test;

namespace {

std::set<std::array<int, 4>> quad_set(const std::vector<CollisionQuadruple>& quads) {
    std::set<std::array<int, 4>> s;
    for (const auto& q : quads) s.insert({q.i, q.j, q.k, q.l});
    return s;
}

} // namespace

TEST_CASE("enumerate_collisions finds the single quadruple of the 4-point planar lattice") {
    const auto quads = enumerate_collisions(lattice_4pt_planar());
    REQUIRE(quads.size() == 1);
    CHECK(quads[0].i == 0);
    CHECK(quads[0].j == 1);
    CHECK(quads[0].k == 2);
    CHECK(quads[0].l == 3);
    CHECK(quads[0].gamma == 1.0);
}

TEST_CASE("enumerate_collisions on a single-point lattice is empty") {
    const auto quads = enumerate_collisions(lattice_from_ints(2, {{0, 0}}));
    CHECK(quads.empty());
}

TEST_CASE("enumerate_collisions pairs the diagonals of the unit square") {
    // {(0,0),(1,1)} and {(1,0),(0,1)} share sum (1,1) and energy 2.
    const auto quads = enumerate_collisions(lattice_unit_square());
    REQUIRE(quads.size() == 1);
    CHECK(quads[0].i == 0);
    CHECK(quads[0].j == 1);
    CHECK(quads[0].k == 2);
    CHECK(quads[0].l == 3);
}

TEST_CASE("enumerate_collisions: every stored quadruple conserves momentum and energy exactly") {
    const auto lattice = lattice_grid3x3();
    for (const auto& q : enumerate_collisions(lattice)) {
        for (int c = 0; c < lattice.dim; ++c)
            CHECK(lattice.momenta[q.i][c] + lattice.momenta[q.j][c] ==
                  lattice.momenta[q.k][c] + lattice.momenta[q.l][c]);
        CHECK(lattice.energy(q.i) + lattice.energy(q.j) ==
              lattice.energy(q.k) + lattice.energy(q.l));
        // nontrivial and canonically ordered
        CHECK(q.i < q.j);
        CHECK(q.k < q.l);
        CHECK(std::make_pair(q.i, q.j) < std::make_pair(q.k, q.l));
    }
}

TEST_CASE("enumerate_collisions is equivariant under relabeling of lattice points") {
    const auto lattice = lattice_grid3x3();
    const auto reference = quad_set(enumerate_collisions(lattice));

    std::vector<int> perm(lattice.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 gen(7);
    std::shuffle(perm.begin(), perm.end(), gen);

    MomentumLattice shuffled;
    shuffled.dim = lattice.dim;
    shuffled.momenta.resize(lattice.momenta.size());
    for (int i = 0; i < lattice.size(); ++i) shuffled.momenta[perm[i]] = lattice.momenta[i];

    std::set<std::array<int, 4>> mappedBack;
    std::vector<int> inverse(perm.size());
    for (int i = 0; i < lattice.size(); ++i) inverse[perm[i]] = i;
    for (const auto& q : enumerate_collisions(shuffled)) {
        int a = inverse[q.i], b = inverse[q.j], c = inverse[q.k], d = inverse[q.l];
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        if (std::make_pair(c, d) < std::make_pair(a, b)) {
            std::swap(a, c);
            std::swap(b, d);
        }
        mappedBack.insert({a, b, c, d});
    }
    CHECK(mappedBack == reference);
}

TEST_CASE("physical_invariants of the 4-point planar lattice has rank 3") {
    // |p|^2 is identically 1, which duplicates the mass row.
    const auto basis = physical_invariants(lattice_4pt_planar());
    REQUIRE(basis.rows.size() == 4);
    CHECK(basis.rank == 3);
}

TEST_CASE("physical_invariants of a single origin point in d=1") {
    const auto basis = physical_invariants(lattice_from_ints(1, {{0}}));
    REQUIRE(basis.rows.size() == 3);
    CHECK(basis.rows[0][0] == 1);
    CHECK(basis.rows[1][0] == 0);
    CHECK(basis.rows[2][0] == 0);
    CHECK(basis.rank == 1);
}

TEST_CASE("physical_invariants: first row is always all ones") {
    for (const auto& lattice : {lattice_grid3x3(), lattice_offaxis_2x3(), lattice_d1_4pt()}) {
        const auto basis = physical_invariants(lattice);
        for (const Rational& x : basis.rows[0]) CHECK(x == 1);
    }
}

TEST_CASE("normality_check: collisionless model with N >= d+3 has spurious invariants") {
    const DiscreteModel model(lattice_grid3x3(), 0.5, {});
    const auto report = normality_check(model);
    CHECK_FALSE(report.isNormal);
    CHECK(report.collisionRank == 0);
    CHECK(report.invariantNullspaceDim == 9);
    CHECK(report.physicalInvariantRank == 4);
    CHECK(report.spuriousBasis.size() == 5);
}

TEST_CASE("normality_check: 4-point planar model is normal") {
    const auto report = normality_check(model_4pt_planar(0.5));
    CHECK(report.isNormal);
    CHECK(report.collisionRank == 1);
    CHECK(report.invariantNullspaceDim == 3);
    CHECK(report.physicalInvariantRank == 3);
    CHECK(report.spuriousBasis.empty());
}

TEST_CASE("normality_check: 3x3 grid and 2x3 off-axis grid are normal with full rank") {
    for (const auto& model : {model_grid3x3(0.5), model_offaxis_2x3(0.5)}) {
        const auto report = normality_check(model);
        CHECK(report.isNormal);
        CHECK(report.physicalInvariantRank == 4);
        CHECK(report.invariantNullspaceDim == 4);
    }
}

TEST_CASE("normality_check: rank-nullity holds on assorted models") {
    for (const auto& model : {model_4pt_planar(0.0), model_grid3x3(1.0), model_offaxis_rect(0.5),
                              DiscreteModel(lattice_grid3x3(), 0.5, {})}) {
        const auto report = normality_check(model);
        CHECK(report.invariantNullspaceDim + report.collisionRank == model.size());
    }
}

TEST_CASE("normality_check: removing collisions never shrinks the invariant nullspace") {
    const auto full = model_grid3x3(0.5);
    const auto fullReport = normality_check(full);

    const auto& quads = full.collisions();
    for (size_t keep = 0; keep < quads.size(); ++keep) {
        std::vector<RawQuadruple> subset;
        for (size_t t = 0; t <= keep; ++t)
            subset.push_back({quads[t].i, quads[t].j, quads[t].k, quads[t].l, quads[t].gamma});
        const DiscreteModel partial(lattice_grid3x3(), 0.5, subset);
        const auto report = normality_check(partial);
        CHECK(report.invariantNullspaceDim >= fullReport.invariantNullspaceDim);
    }
}

TEST_CASE("normality_check: spurious basis vectors are genuine collision invariants") {
    const DiscreteModel model(lattice_grid3x3(), 0.5,
                              {{0, 8, 2, 6, 1.0}}); // a single collision: far from normal
    const auto report = normality_check(model);
    REQUIRE_FALSE(report.isNormal);
    REQUIRE_FALSE(report.spuriousBasis.empty());
    for (const auto& phi : report.spuriousBasis) {
        for (const auto& q : model.collisions())
            CHECK(phi[q.i] + phi[q.j] - phi[q.k] - phi[q.l] == 0);
    }
    // and they are not in the physical span: rank must grow when appended
    auto basis = physical_invariants(model.lattice());
    const int spuriousCount = static_cast<int>(report.spuriousBasis.size());
    CHECK(report.invariantNullspaceDim == basis.rank + spuriousCount);
}

TEST_CASE("canonicalize_collisions merges microreversed duplicates") {
    const auto lattice = lattice_4pt_planar();
    const auto quads = canonicalize_collisions(lattice, {{0, 1, 2, 3, 2.0}, {2, 3, 0, 1, 2.0}});
    REQUIRE(quads.size() == 1);
    CHECK(quads[0].gamma == 2.0);
}

TEST_CASE("canonicalize_collisions rejects conflicting coefficients") {
    const auto lattice = lattice_4pt_planar();
    CHECK_THROWS_AS(canonicalize_collisions(lattice, {{0, 1, 2, 3, 2.0}, {2, 3, 0, 1, 3.0}}),
                    ConflictingCoefficients);
}

TEST_CASE("canonicalize_collisions drops trivial quadruples") {
    const auto lattice = lattice_4pt_planar();
    CHECK(canonicalize_collisions(lattice, {{0, 1, 0, 1, 5.0}}).empty());
    CHECK(canonicalize_collisions(lattice, {{0, 1, 1, 0, 5.0}}).empty());
}

TEST_CASE("canonicalize_collisions drops zero coefficients") {
    const auto lattice = lattice_4pt_planar();
    CHECK(canonicalize_collisions(lattice, {{0, 1, 2, 3, 0.0}}).empty());
}

TEST_CASE("canonicalize_collisions rejects conservation violations and bad input") {
    const auto lattice = lattice_4pt_planar();
    CHECK_THROWS_AS(canonicalize_collisions(lattice, {{0, 1, 2, 3, -1.0}}), NegativeCoefficient);
    CHECK_THROWS_AS(canonicalize_collisions(lattice, {{0, 2, 1, 3, 1.0}}), ConservationViolation);
    CHECK_THROWS_AS(canonicalize_collisions(lattice, {{0, 1, 2, 7, 1.0}}), ValidationError);
}

TEST_CASE("lattice validation") {
    CHECK_THROWS_AS(lattice_from_ints(2, {{1, 0}, {1, 0}}).validate(), ValidationError);
    CHECK_THROWS_AS(lattice_from_ints(2, {{1, 0}, {1}}).validate(), ValidationError);
    CHECK_THROWS_AS(MomentumLattice{}.validate(), ValidationError);
    CHECK_THROWS_AS(DiscreteModel(lattice_4pt_planar(), 1.5, {}), ValidationError);
    CHECK_THROWS_AS(DiscreteModel(lattice_4pt_planar(), -0.1, {}), ValidationError);
}

TEST_CASE("DiscreteModel caches faithful double views of the exact lattice") {
    MomentumLattice lattice;
    lattice.dim = 1;
    lattice.momenta = {{Rational(1, 2)}, {Rational(-3, 2)}};
    const DiscreteModel model(std::move(lattice), 0.5, {});
    CHECK(model.momenta()(0, 0) == 0.5);
    CHECK(model.momenta()(1, 0) == -1.5);
    CHECK(model.energies()(0) == 0.25);
    CHECK(model.energies()(1) == 2.25);
}
