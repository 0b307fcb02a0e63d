#include "evotune/sim_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace evotune {

namespace {

using nlohmann::json;

ResponseCurve parse_curve(const json& j, const std::string& key) {
    if (!j.is_object() || !j.contains("curve") || !j["curve"].is_string()) {
        throw Error("sim fixture: gene '" + key + "' needs an object with a string 'curve'");
    }
    const std::string kind = j["curve"].get<std::string>();
    auto num = [&](const char* field) -> double {
        if (!j.contains(field) || !j[field].is_number()) {
            throw Error("sim fixture: gene '" + key + "' (" + kind + ") missing numeric '" +
                        field + "'");
        }
        return j[field].get<double>();
    };
    if (kind == "constant") {
        return CurveConstant{};
    }
    if (kind == "linear") {
        return CurveLinear{num("lo"), num("hi")};
    }
    if (kind == "peak") {
        CurvePeak p{num("lo"), num("hi"), num("center")};
        if (p.center < 0.0 || p.center > 1.0) {
            throw Error("sim fixture: gene '" + key + "' peak center must be in [0, 1]");
        }
        return p;
    }
    throw Error("sim fixture: gene '" + key + "' has unknown curve kind '" + kind + "'");
}

} // namespace

SimModel SimModel::parse(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("sim fixture: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw Error("sim fixture: top level must be an object");
    }

    SimModel m;
    m.name = j.value("name", std::string{});
    if (!j.contains("base_mbps") || !j["base_mbps"].is_number()) {
        throw Error("sim fixture: missing numeric 'base_mbps'");
    }
    if (!j.contains("cap_mbps") || !j["cap_mbps"].is_number()) {
        throw Error("sim fixture: missing numeric 'cap_mbps'");
    }
    m.base_mbps = j["base_mbps"].get<double>();
    m.cap_mbps = j["cap_mbps"].get<double>();
    if (m.base_mbps < 0.0 || m.cap_mbps <= 0.0) {
        throw Error("sim fixture: base_mbps must be >= 0 and cap_mbps > 0");
    }
    m.noise_stddev_mbps = j.value("noise_stddev_mbps", 0.0);
    if (m.noise_stddev_mbps < 0.0) {
        throw Error("sim fixture: noise_stddev_mbps must be >= 0");
    }

    if (!j.contains("genes") || !j["genes"].is_object()) {
        throw Error("sim fixture: missing 'genes' object");
    }
    for (const auto& [key, curve] : j["genes"].items()) {
        m.curves.emplace_back(key, parse_curve(curve, key));
    }

    if (j.contains("interactions")) {
        if (!j["interactions"].is_array()) {
            throw Error("sim fixture: 'interactions' must be an array");
        }
        for (const auto& it : j["interactions"]) {
            if (!it.is_object() || !it.contains("a") || !it.contains("b") ||
                !it.contains("weight") || !it["a"].is_string() || !it["b"].is_string() ||
                !it["weight"].is_number()) {
                throw Error("sim fixture: interaction needs string 'a', string 'b', numeric "
                            "'weight'");
            }
            m.interactions.push_back(SimInteraction{it["a"].get<std::string>(),
                                                    it["b"].get<std::string>(),
                                                    it["weight"].get<double>()});
        }
    }
    return m;
}

SimModel SimModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open sim fixture '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

double normalized_gene(const ParameterSpec& spec, const GeneValue& gene) {
    auto norm = [](std::int64_t v, std::int64_t lo, std::int64_t hi) -> double {
        if (hi <= lo) return 0.0;
        return static_cast<double>(v - lo) / static_cast<double>(hi - lo);
    };
    if (const auto* ir = std::get_if<IntRange>(&spec.kind)) {
        return norm(std::get<std::int64_t>(gene), ir->min, ir->max);
    }
    const auto& tr = std::get<TripleRange>(spec.kind);
    const auto& t = std::get<Triple>(gene);
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        sum += norm(t[i], tr.min[i], tr.max[i]);
    }
    return sum / 3.0;
}

double curve_factor(const ResponseCurve& curve, double t) {
    if (std::holds_alternative<CurveConstant>(curve)) {
        return 1.0;
    }
    if (const auto* lin = std::get_if<CurveLinear>(&curve)) {
        return lin->lo + (lin->hi - lin->lo) * t;
    }
    const auto& pk = std::get<CurvePeak>(curve);
    double half = std::max(pk.center, 1.0 - pk.center);
    if (half <= 0.0) half = 1.0; // center is clamped to [0,1], so half > 0 unless degenerate
    double closeness = 1.0 - std::abs(t - pk.center) / half;
    return pk.lo + (pk.hi - pk.lo) * closeness;
}

SimEvaluator::SimEvaluator(SimModel model, const ParameterSpace& space, std::uint64_t noise_seed)
    : model_(std::move(model)), noise_rng_(noise_seed) {
    std::unordered_map<std::string_view, std::size_t> index_of;
    for (std::size_t i = 0; i < space.size(); ++i) {
        index_of.emplace(space[i].key, i);
    }

    curve_by_gene_.assign(space.size(), ResponseCurve{CurveConstant{}});
    std::vector<std::string> missing, extra;
    std::vector<bool> covered(space.size(), false);
    for (const auto& [key, curve] : model_.curves) {
        auto it = index_of.find(key);
        if (it == index_of.end()) {
            extra.push_back(key);
            continue;
        }
        curve_by_gene_[it->second] = curve;
        covered[it->second] = true;
    }
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!covered[i]) missing.push_back(space[i].key);
    }
    if (!missing.empty() || !extra.empty()) {
        std::string msg = "sim fixture does not match the parameter space;";
        if (!missing.empty()) {
            msg += " space keys without curves:";
            for (const auto& k : missing) msg += " " + k;
            msg += ";";
        }
        if (!extra.empty()) {
            msg += " fixture keys not in the space:";
            for (const auto& k : extra) msg += " " + k;
        }
        throw ModelMismatchError(msg);
    }

    for (const auto& it : model_.interactions) {
        auto a = index_of.find(it.a);
        auto b = index_of.find(it.b);
        if (a == index_of.end() || b == index_of.end()) {
            throw ModelMismatchError("sim fixture interaction references unknown key '" +
                                     (a == index_of.end() ? it.a : it.b) + "'");
        }
        interactions_by_index_.emplace_back(a->second, b->second, it.weight);
    }

    fingerprint_ = space_fingerprint(space);
    bound_space_ = &space;
}

double SimEvaluator::evaluate(const ParameterSpace& space, const Chromosome& c) {
    if (&space != bound_space_) {
        if (space_fingerprint(space) != fingerprint_) {
            throw ModelMismatchError("evaluate called with a different parameter space than the "
                                     "one this simulator was built for");
        }
        bound_space_ = &space;
    }
    if (c.genes.size() != space.size()) {
        throw InvalidChromosomeError("chromosome gene count does not match space");
    }

    std::vector<double> ts(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        ts[i] = normalized_gene(space[i], c.genes[i]);
    }

    double value = model_.base_mbps;
    for (std::size_t i = 0; i < space.size(); ++i) {
        value *= curve_factor(curve_by_gene_[i], ts[i]);
    }
    for (const auto& [a, b, weight] : interactions_by_index_) {
        value += weight * ts[a] * ts[b];
    }
    if (model_.noise_stddev_mbps > 0.0) {
        value += noise_rng_.gaussian(model_.noise_stddev_mbps);
    }
    return std::clamp(value, 0.0, model_.cap_mbps);
}

} // namespace evotune
