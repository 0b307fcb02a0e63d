#include "evotune/replay.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace evotune {

using nlohmann::json;
using nlohmann::ordered_json;

ReplayCache ReplayCache::parse(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("replay cache: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw Error("replay cache: top level must be an object");
    }
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != 1) {
        throw Error("replay cache: unsupported or missing schema_version (expected 1)");
    }
    if (!j.contains("space_hash") || !j["space_hash"].is_string()) {
        throw Error("replay cache: missing string 'space_hash'");
    }
    if (!j.contains("entries") || !j["entries"].is_object()) {
        throw Error("replay cache: missing 'entries' object");
    }
    ReplayCache cache;
    cache.space_hash = j["space_hash"].get<std::string>();
    for (const auto& [key, value] : j["entries"].items()) {
        if (!value.is_number()) {
            throw Error("replay cache: entry '" + key + "' is not a number");
        }
        cache.entries[key] = value.get<double>();
    }
    return cache;
}

ReplayCache ReplayCache::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open replay cache '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ReplayCache::to_json_text() const {
    ordered_json j;
    j["schema_version"] = 1;
    j["space_hash"] = space_hash;
    ordered_json e = ordered_json::object();
    for (const auto& [key, value] : entries) { // std::map iterates sorted
        e[key] = value;
    }
    j["entries"] = std::move(e);
    return j.dump(2) + "\n";
}

void ReplayCache::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write replay cache '" + path + "'");
    }
    out << to_json_text();
    if (!out) {
        throw Error("write failed for replay cache '" + path + "'");
    }
}

ReplayEvaluator::ReplayEvaluator(ReplayCache cache, const ParameterSpace& space)
    : cache_(std::move(cache)) {
    const std::string expected = space_hash_string(space);
    if (cache_.space_hash != expected) {
        throw SpaceMismatchError("replay cache was recorded for space " + cache_.space_hash +
                                 ", current space is " + expected);
    }
}

double ReplayEvaluator::evaluate(const ParameterSpace&, const Chromosome& c) {
    const std::string key = canonical_chromosome_key(c);
    auto it = cache_.entries.find(key);
    if (it == cache_.entries.end()) {
        throw CacheMissError(key);
    }
    return it->second;
}

RecordingEvaluator::RecordingEvaluator(FitnessEvaluator& inner, const ParameterSpace& space)
    : inner_(inner) {
    cache_.space_hash = space_hash_string(space);
}

double RecordingEvaluator::evaluate(const ParameterSpace& space, const Chromosome& c) {
    double value = inner_.evaluate(space, c);
    cache_.entries[canonical_chromosome_key(c)] = value;
    return value;
}

} // namespace evotune
