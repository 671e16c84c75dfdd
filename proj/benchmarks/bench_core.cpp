#include "dbe/dynamics.hpp"
#include "dbe/equilibrium.hpp"
#include "dbe/kinetics.hpp"
#include "dbe/linearized.hpp"
#include "dbe/model.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

dbe::MomentumLattice grid(int half) {
    dbe::MomentumLattice lattice;
    lattice.dim = 2;
    for (long long x = -half; x <= half; ++x)
        for (long long y = -half; y <= half; ++y)
            lattice.momenta.push_back({dbe::Rational(x), dbe::Rational(y)});
    return lattice;
}

Eigen::VectorXd interior_state(const dbe::DiscreteModel& model, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    Eigen::VectorXd F(model.size());
    for (int i = 0; i < model.size(); ++i) F(i) = u(gen);
    return F;
}

void BM_EnumerateCollisions(benchmark::State& state) {
    const auto lattice = grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto quads = dbe::enumerate_collisions(lattice);
        benchmark::DoNotOptimize(quads);
    }
}
BENCHMARK(BM_EnumerateCollisions)->Arg(1)->Arg(2)->Arg(3);

void BM_NormalityCheck(benchmark::State& state) {
    const auto model =
        dbe::DiscreteModel::with_auto_collisions(grid(static_cast<int>(state.range(0))), 0.5);
    for (auto _ : state) {
        auto report = dbe::normality_check(model);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_NormalityCheck)->Arg(1)->Arg(2);

void BM_CollisionOperator(benchmark::State& state) {
    const auto model =
        dbe::DiscreteModel::with_auto_collisions(grid(static_cast<int>(state.range(0))), 0.5);
    const Eigen::VectorXd F = interior_state(model, 1);
    for (auto _ : state) {
        auto Q = dbe::collision_operator(model, F);
        benchmark::DoNotOptimize(Q);
    }
}
BENCHMARK(BM_CollisionOperator)->Arg(1)->Arg(2)->Arg(3);

void BM_SolveEquilibriumComponent(benchmark::State& state) {
    double m = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dbe::solve_equilibrium_component(m, 0.37));
        m = m < 10.0 ? m * 1.1 : 0.1;
    }
}
BENCHMARK(BM_SolveEquilibriumComponent);

void BM_HomogeneousStep(benchmark::State& state) {
    const auto model = dbe::DiscreteModel::with_auto_collisions(grid(1), 0.5);
    const Eigen::VectorXd F0 = interior_state(model, 2);
    dbe::IntegratorConfig cfg;
    cfg.stepSize = 0.05;
    cfg.maxSteps = 100;
    cfg.boundsMargin = 1e-6;
    cfg.outputStride = 100;
    for (auto _ : state) {
        auto traj = dbe::integrate_homogeneous(model, F0, cfg);
        benchmark::DoNotOptimize(traj);
    }
}
BENCHMARK(BM_HomogeneousStep);

void BM_AssembleLinearized(benchmark::State& state) {
    const auto model =
        dbe::DiscreteModel::with_auto_collisions(grid(static_cast<int>(state.range(0))), 0.5);
    dbe::MaxwellianParams params;
    params.a = 0.8;
    params.b = Eigen::Vector2d(0.05, -0.05);
    params.c = 0.2;
    const Eigen::VectorXd P = dbe::equilibrium_from_maxwellian(model, params).P;
    for (auto _ : state) {
        auto op = dbe::assemble_linearized(model, P);
        benchmark::DoNotOptimize(op);
    }
}
BENCHMARK(BM_AssembleLinearized)->Arg(1)->Arg(2);

} // namespace

BENCHMARK_MAIN();
