#include "dbe/io.hpp"

#include "dbe/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dbe {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in " + what);
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rational rational_from_json(const json& j, const std::string& what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        BigInt num(j[0].get<long long>());
        BigInt den(j[1].get<long long>());
        if (den == 0) throw ParseError("zero denominator in " + what);
        if (den < 0) { num = -num; den = -den; }
        return Rational(num, den);
    }
    throw ParseError(what + " must be [num, den], an integer, or a rational string");
}

json rational_to_json(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    static const BigInt kLimit = BigInt(1) << 53;
    if (abs(num) < kLimit && den < kLimit)
        return json::array({num.convert_to<long long>(), den.convert_to<long long>()});
    return json(format_rational(r));
}

std::string full_precision(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be a JSON array of numbers");
    Eigen::VectorXd v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ParseError(what + " must contain numbers only");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

} // namespace

DiscreteModel parse_model(const std::string& jsonText) {
    const json j = parse_json(jsonText, "model");
    if (!j.is_object()) throw ParseError("model file must be a JSON object");
    for (const char* key : {"dim", "alpha", "momenta", "collisions"}) {
        if (!j.contains(key)) throw ParseError(std::string("model file lacks '") + key + "'");
    }

    MomentumLattice lattice;
    lattice.dim = j.at("dim").get<int>();

    double alpha;
    const json& ja = j.at("alpha");
    if (ja.is_string()) alpha = to_double(parse_rational(ja.get<std::string>()));
    else if (ja.is_number()) alpha = ja.get<double>();
    else throw ParseError("alpha must be a number or a rational/decimal string");

    const json& jm = j.at("momenta");
    if (!jm.is_array()) throw ParseError("momenta must be an array of points");
    for (size_t p = 0; p < jm.size(); ++p) {
        const json& point = jm[p];
        if (!point.is_array())
            throw ParseError("momentum " + std::to_string(p + 1) + " must be an array of components");
        std::vector<Rational> coords;
        for (size_t c = 0; c < point.size(); ++c)
            coords.push_back(rational_from_json(
                point[c], "momentum " + std::to_string(p + 1) + " component " + std::to_string(c + 1)));
        lattice.momenta.push_back(std::move(coords));
    }

    const json& jc = j.at("collisions");
    if (jc.is_string() && jc.get<std::string>() == "auto")
        return DiscreteModel::with_auto_collisions(std::move(lattice), alpha);
    if (!jc.is_array()) throw ParseError("collisions must be \"auto\" or an array");

    std::vector<RawQuadruple> raw;
    for (const json& e : jc) {
        if (!e.is_object()) throw ParseError("each collision must be an object");
        RawQuadruple q;
        q.i = e.at("i").get<int>() - 1; // files are 1-based
        q.j = e.at("j").get<int>() - 1;
        q.k = e.at("k").get<int>() - 1;
        q.l = e.at("l").get<int>() - 1;
        q.gamma = e.value("gamma", 1.0);
        raw.push_back(q);
    }
    return DiscreteModel(std::move(lattice), alpha, raw);
}

DiscreteModel load_model(const std::string& path) {
    try {
        return parse_model(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " (while loading '" + path + "')");
    }
}

std::string model_to_json(const DiscreteModel& model) {
    json j;
    j["dim"] = model.dim();
    j["alpha"] = model.alpha(); // JSON number round-trips the double exactly
    json momenta = json::array();
    for (const auto& p : model.lattice().momenta) {
        json point = json::array();
        for (const Rational& c : p) point.push_back(rational_to_json(c));
        momenta.push_back(std::move(point));
    }
    j["momenta"] = std::move(momenta);
    json collisions = json::array();
    for (const CollisionQuadruple& q : model.collisions()) {
        collisions.push_back(
            {{"i", q.i + 1}, {"j", q.j + 1}, {"k", q.k + 1}, {"l", q.l + 1}, {"gamma", q.gamma}});
    }
    j["collisions"] = std::move(collisions);
    return j.dump(2);
}

void save_model(const DiscreteModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << model_to_json(model) << '\n';
}

MaxwellianParams parse_maxwellian_params(const std::string& jsonText, int dim) {
    const json j = parse_json(jsonText, "Maxwellian parameters");
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c"))
        throw ParseError("Maxwellian parameters must be {\"a\": ..., \"b\": [...], \"c\": ...}");
    MaxwellianParams params;
    params.a = j.at("a").get<double>();
    params.b = vector_from_json(j.at("b"), "b");
    params.c = j.at("c").get<double>();
    if (params.b.size() != dim)
        throw ValidationError("Maxwellian b has " + std::to_string(params.b.size()) +
                              " components, expected " + std::to_string(dim));
    return params;
}

std::string maxwellian_params_to_json(const MaxwellianParams& params) {
    json j;
    j["a"] = params.a;
    j["b"] = std::vector<double>(params.b.data(), params.b.data() + params.b.size());
    j["c"] = params.c;
    return j.dump();
}

std::string normality_report_to_json(const NormalityReport& report) {
    json j;
    j["collisionRank"] = report.collisionRank;
    j["invariantNullspaceDim"] = report.invariantNullspaceDim;
    j["physicalInvariantRank"] = report.physicalInvariantRank;
    j["isNormal"] = report.isNormal;
    json basis = json::array();
    for (const auto& vec : report.spuriousBasis) {
        json row = json::array();
        for (const Rational& x : vec) row.push_back(format_rational(x));
        basis.push_back(std::move(row));
    }
    j["spuriousBasis"] = std::move(basis);
    return j.dump(2);
}

std::string spectral_report_to_json(const SpectralReport& report) {
    json j;
    j["eigenvalues"] =
        std::vector<double>(report.eigenvalues.data(), report.eigenvalues.data() + report.eigenvalues.size());
    j["kernelDim"] = report.kernelDim;
    j["projectionResidual"] = report.projectionResidual;
    j["bSignature"] = {{"plus", report.bSignature.plus},
                       {"minus", report.bSignature.minus},
                       {"zero", report.bSignature.zero}};
    return j.dump(2);
}

std::string trend_report_to_json(const TrendReport& report) {
    json j;
    j["distances"] = report.distances;
    j["usedEquilibriumTarget"] = report.usedEquilibriumTarget;
    j["hViolations"] = report.hViolations;
    j["maxHIncrease"] = report.maxHIncrease;
    j["finalDistance"] = report.finalDistance;
    j["maxInvariantDrift"] = report.maxInvariantDrift;
    j["monotone"] = report.monotone;
    return j.dump(2);
}

Eigen::VectorXd parse_vector(const std::string& jsonText) {
    return vector_from_json(parse_json(jsonText, "vector"), "vector");
}

std::string vector_to_json(const Eigen::VectorXd& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size())).dump();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<std::pair<std::string, std::string>>& headerComments) {
    for (const auto& [key, value] : headerComments) out << "# " << key << "=" << value << "\n";
    if (traj.samples.empty()) return;
    const Eigen::Index n = traj.samples.front().F.size();
    const Eigen::Index m = traj.samples.front().inv.size();
    out << "s";
    for (Eigen::Index i = 0; i < n; ++i) out << ",F_" << (i + 1);
    out << ",H";
    for (Eigen::Index i = 0; i < m; ++i) out << ",inv_" << (i + 1);
    out << "\n";
    for (const TrajectorySample& sample : traj.samples) {
        out << full_precision(sample.s);
        for (Eigen::Index i = 0; i < n; ++i) out << "," << full_precision(sample.F(i));
        out << "," << full_precision(sample.h);
        for (Eigen::Index i = 0; i < m; ++i) out << "," << full_precision(sample.inv(i));
        out << "\n";
    }
}

std::string trajectory_to_json(const Trajectory& traj) {
    json samples = json::array();
    for (const TrajectorySample& s : traj.samples) {
        json e;
        e["s"] = s.s;
        e["F"] = std::vector<double>(s.F.data(), s.F.data() + s.F.size());
        e["H"] = s.h;
        e["inv"] = std::vector<double>(s.inv.data(), s.inv.data() + s.inv.size());
        samples.push_back(std::move(e));
    }
    return json{{"samples", std::move(samples)}}.dump(2);
}

} // namespace dbe
