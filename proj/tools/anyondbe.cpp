// Command line front end: loads model files, dispatches the solvers, and
// emits machine-readable JSON/CSV results.

#include "dbe/dynamics.hpp"
#include "dbe/equilibrium.hpp"
#include "dbe/errors.hpp"
#include "dbe/io.hpp"
#include "dbe/kinetics.hpp"
#include "dbe/linearized.hpp"
#include "dbe/model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace {

struct CommonOptions {
    std::string modelPath;
    std::string outPath;    // empty -> stdout
    std::string alphaOverride;
};

struct InitialStateOptions {
    std::string f0;       // inline JSON array or file path
    std::string params;   // inline JSON object or file path
    std::string moments;  // inline JSON array or file path
    bool random = false;
    unsigned seed = 0;
};

struct SimulateOptions {
    double dt = 0.01;
    int steps = 1000;
    double eta = 1e-6;
    int stride = 1;
    std::string format = "csv";
    std::string reportPath;
};

std::string slurp_or_inline(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) return arg;
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw dbe::ParseError("cannot open '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

dbe::DiscreteModel load(const CommonOptions& common) {
    dbe::DiscreteModel model = dbe::load_model(common.modelPath);
    if (common.alphaOverride.empty()) return model;
    const double alpha = dbe::to_double(dbe::parse_rational(common.alphaOverride));
    std::vector<dbe::RawQuadruple> raw;
    for (const dbe::CollisionQuadruple& q : model.collisions())
        raw.push_back({q.i, q.j, q.k, q.l, q.gamma});
    return dbe::DiscreteModel(model.lattice(), alpha, raw);
}

void emit(const CommonOptions& common, const std::string& text) {
    if (common.outPath.empty()) {
        std::cout << text << std::endl;
        return;
    }
    std::ofstream out(common.outPath, std::ios::binary);
    if (!out) throw dbe::ParseError("cannot write '" + common.outPath + "'");
    out << text << '\n';
}

Eigen::VectorXd random_interior(const dbe::DiscreteModel& model, unsigned seed) {
    std::mt19937 gen(seed);
    const double cap = model.alpha() > 0.0 ? 1.0 / model.alpha() : 2.0;
    std::uniform_real_distribution<double> uniform(0.05 * cap, 0.45 * cap);
    Eigen::VectorXd F(model.size());
    for (int i = 0; i < model.size(); ++i) F(i) = uniform(gen);
    return F;
}

/// Resolves the initial distribution from whichever source was given.
Eigen::VectorXd initial_state(const dbe::DiscreteModel& model, const InitialStateOptions& init) {
    const int sources = (!init.f0.empty()) + (!init.params.empty()) + (!init.moments.empty()) +
                        (init.random ? 1 : 0);
    if (sources != 1)
        throw dbe::ValidationError("exactly one of --f0 / --params / --moments / --random is required");
    if (!init.f0.empty()) return dbe::parse_vector(slurp_or_inline(init.f0));
    if (!init.params.empty()) {
        const auto params = dbe::parse_maxwellian_params(slurp_or_inline(init.params), model.dim());
        return dbe::equilibrium_from_maxwellian(model, params).P;
    }
    if (!init.moments.empty()) {
        const Eigen::VectorXd j = dbe::parse_vector(slurp_or_inline(init.moments));
        return dbe::equilibrium_from_moments(model, j).second.P;
    }
    return random_interior(model, init.seed);
}

int run_model_check(const CommonOptions& common, const std::string& emitModelPath) {
    const dbe::DiscreteModel model = load(common);
    const dbe::NormalityReport report = dbe::normality_check(model);
    if (!emitModelPath.empty()) dbe::save_model(model, emitModelPath);
    emit(common, dbe::normality_report_to_json(report));
    return 0;
}

int run_equilibrium(const CommonOptions& common, const InitialStateOptions& init) {
    const dbe::DiscreteModel model = load(common);
    dbe::MaxwellianParams params;
    dbe::EquilibriumDistribution eq;
    if (!init.params.empty() && init.moments.empty()) {
        params = dbe::parse_maxwellian_params(slurp_or_inline(init.params), model.dim());
        eq = dbe::equilibrium_from_maxwellian(model, params);
    } else if (!init.moments.empty() && init.params.empty()) {
        const Eigen::VectorXd j = dbe::parse_vector(slurp_or_inline(init.moments));
        std::tie(params, eq) = dbe::equilibrium_from_moments(model, j);
    } else {
        throw dbe::ValidationError("equilibrium requires exactly one of --params / --moments");
    }
    nlohmann::json out;
    out["params"] = nlohmann::json::parse(dbe::maxwellian_params_to_json(params));
    out["P"] = nlohmann::json::parse(dbe::vector_to_json(eq.P));
    emit(common, out.dump(2));
    return 0;
}

int run_simulate(const CommonOptions& common, const InitialStateOptions& init,
                 const SimulateOptions& sim, bool planar) {
    const dbe::DiscreteModel model = load(common);
    const Eigen::VectorXd F0 = initial_state(model, init);

    dbe::IntegratorConfig config;
    config.stepSize = sim.dt;
    config.maxSteps = sim.steps;
    config.boundsMargin = sim.eta;
    config.outputStride = sim.stride;

    const dbe::Trajectory traj = planar ? dbe::integrate_planar(model, F0, config)
                                        : dbe::integrate_homogeneous(model, F0, config);

    if (sim.format == "json") {
        emit(common, dbe::trajectory_to_json(traj));
    } else {
        std::vector<std::pair<std::string, std::string>> comments;
        comments.emplace_back("command", planar ? "simulate-planar" : "simulate-hom");
        if (init.random) comments.emplace_back("seed", std::to_string(init.seed));
        if (common.outPath.empty()) {
            dbe::write_trajectory_csv(std::cout, traj, comments);
        } else {
            std::ofstream out(common.outPath, std::ios::binary);
            if (!out) throw dbe::ParseError("cannot write '" + common.outPath + "'");
            dbe::write_trajectory_csv(out, traj, comments);
        }
    }

    if (!sim.reportPath.empty()) {
        const dbe::TrendReport report = dbe::trend_report(
            model, traj, planar ? dbe::TrendMode::Planar : dbe::TrendMode::Homogeneous);
        std::ofstream out(sim.reportPath, std::ios::binary);
        if (!out) throw dbe::ParseError("cannot write '" + sim.reportPath + "'");
        out << dbe::trend_report_to_json(report) << '\n';
    }
    return 0;
}

int run_linearize(const CommonOptions& common, const InitialStateOptions& init) {
    const dbe::DiscreteModel model = load(common);
    const Eigen::VectorXd P = initial_state(model, init);
    const dbe::LinearizedOperator op = dbe::assemble_linearized(model, P);
    const dbe::SpectralReport report = dbe::spectral_report(op, model);
    emit(common, dbe::spectral_report_to_json(report));
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--model", common.modelPath, "model JSON file")->required();
    cmd->add_option("--out", common.outPath, "output file (default stdout)");
    cmd->add_option("--alpha", common.alphaOverride, "override the model's statistics parameter");
}

void add_initial_state(CLI::App* cmd, InitialStateOptions& init) {
    cmd->add_option("--f0", init.f0, "distribution: inline JSON array or file");
    cmd->add_option("--params", init.params, "Maxwellian {a, b, c}: inline JSON or file");
    cmd->add_option("--moments", init.moments, "target moments: inline JSON array or file");
    cmd->add_flag("--random", init.random, "seeded random interior distribution");
    cmd->add_option("--seed", init.seed, "random seed (default 0)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Boltzmann equation for Haldane statistics: solvers and diagnostics"};
    app.require_subcommand(1);

    CommonOptions mcCommon;
    std::string emitModelPath;
    CLI::App* modelCheck = app.add_subcommand("model-check", "validate a model and test normality");
    add_common(modelCheck, mcCommon);
    modelCheck->add_option("--emit-model", emitModelPath, "write the canonicalized model here");

    CommonOptions eqCommon;
    InitialStateOptions eqInit;
    CLI::App* equilibrium = app.add_subcommand("equilibrium", "solve P / Psi(P) = M");
    add_common(equilibrium, eqCommon);
    equilibrium->add_option("--params", eqInit.params, "Maxwellian {a, b, c}: inline JSON or file");
    equilibrium->add_option("--moments", eqInit.moments, "prescribed moments: inline JSON array or file");

    CommonOptions homCommon, plCommon;
    InitialStateOptions homInit, plInit;
    SimulateOptions homSim, plSim;
    CLI::App* simHom = app.add_subcommand("simulate-hom", "integrate dF/dt = Q(F)");
    CLI::App* simPlanar = app.add_subcommand("simulate-planar", "march dF/dx = B^{-1} Q(F)");
    for (auto [cmd, common, init, sim] :
         {std::tuple{simHom, &homCommon, &homInit, &homSim},
          std::tuple{simPlanar, &plCommon, &plInit, &plSim}}) {
        add_common(cmd, *common);
        add_initial_state(cmd, *init);
        cmd->add_option("--dt", sim->dt, "step size");
        cmd->add_option("--steps", sim->steps, "number of macro steps");
        cmd->add_option("--eta", sim->eta, "bounds margin");
        cmd->add_option("--stride", sim->stride, "record every n-th step");
        cmd->add_option("--format", sim->format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--report", sim->reportPath, "write a trend report JSON here");
    }

    CommonOptions linCommon;
    InitialStateOptions linInit;
    CLI::App* linearize =
        app.add_subcommand("linearize", "assemble the linearized operator and report its spectrum");
    add_common(linearize, linCommon);
    add_initial_state(linearize, linInit);

    CLI11_PARSE(app, argc, argv);

    try {
        if (modelCheck->parsed()) return run_model_check(mcCommon, emitModelPath);
        if (equilibrium->parsed()) return run_equilibrium(eqCommon, eqInit);
        if (simHom->parsed()) return run_simulate(homCommon, homInit, homSim, false);
        if (simPlanar->parsed()) return run_simulate(plCommon, plInit, plSim, true);
        if (linearize->parsed()) return run_linearize(linCommon, linInit);
    } catch (const dbe::Error& e) {
        nlohmann::json err;
        err["error"] = {{"type", e.name()}, {"message", e.what()}};
        std::cerr << err.dump() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = {{"type", "InternalError"}, {"message", e.what()}};
        std::cerr << err.dump() << std::endl;
        return 2;
    }
    return 0;
}
