#include "evotune/report_io.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

namespace evotune {

namespace {

using nlohmann::ordered_json;

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

ordered_json chromosome_json(const Chromosome& c) {
    ordered_json genes = ordered_json::array();
    for (const auto& g : c.genes) {
        if (const auto* v = std::get_if<std::int64_t>(&g)) {
            genes.push_back(*v);
        } else {
            const auto& t = std::get<Triple>(g);
            genes.push_back(ordered_json::array({t[0], t[1], t[2]}));
        }
    }
    return genes;
}

} // namespace

std::string report_to_json(const RunReport& report) {
    ordered_json j;
    j["schema_version"] = 1;
    j["config"] = {
        {"population_size", report.config.population_size},
        {"generations", report.config.generations},
        {"selection_fraction", report.config.selection_fraction},
        {"crossover_probability", report.config.crossover_probability},
        {"mutation_probability", report.config.mutation_probability},
        {"seed", report.config.seed},
    };
    j["space_hash"] = report.space_hash;
    j["evaluation_count"] = report.evaluation_count;

    ordered_json gens = ordered_json::array();
    for (const auto& g : report.per_generation) {
        ordered_json row;
        row["generation"] = g.generation;
        row["best"] = g.best;
        row["worst"] = g.worst;
        row["mean"] = g.mean;
        row["default_fitness"] = g.default_fitness;
        row["best_chromosome"] = chromosome_json(g.best_chromosome);
        gens.push_back(std::move(row));
    }
    j["per_generation"] = std::move(gens);

    ordered_json best;
    best["id"] = report.overall_best.id;
    best["birth_generation"] = report.overall_best.birth_generation;
    best["fitness"] = report.overall_best.fitness ? ordered_json(*report.overall_best.fitness)
                                                  : ordered_json(nullptr);
    best["chromosome"] = chromosome_json(report.overall_best.chromosome);
    j["overall_best"] = std::move(best);

    return j.dump(2) + "\n";
}

void write_report_json(const RunReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write report '" + path + "'");
    }
    out << report_to_json(report);
    if (!out) {
        throw Error("write failed for report '" + path + "'");
    }
}

std::string report_to_csv(const RunReport& report) {
    std::string out = "generation,best,worst,mean,default\n";
    for (const auto& g : report.per_generation) {
        out += std::to_string(g.generation);
        out += ',';
        out += shortest(g.best);
        out += ',';
        out += shortest(g.worst);
        out += ',';
        out += shortest(g.mean);
        out += ',';
        out += shortest(g.default_fitness);
        out += '\n';
    }
    return out;
}

void write_report_csv(const RunReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write CSV '" + path + "'");
    }
    out << report_to_csv(report);
    if (!out) {
        throw Error("write failed for CSV '" + path + "'");
    }
}

} // namespace evotune
